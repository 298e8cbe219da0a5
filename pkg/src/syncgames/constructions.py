"""Built-in automata and parameterized families used throughout the package."""

from __future__ import annotations

import random
import string

from .core import Dfa, is_synchronizing

BUILTIN_NAMES = ("intro_example", "b2", "b2_prime", "e_automaton", "f_automaton")

_BUILTIN_ALIASES = {
    "intro": "intro_example",
    "e": "e_automaton",
    "f": "f_automaton",
}

# Transition tables: delta[state][letter], letters in declared order.
_BUILTINS: dict[str, tuple[tuple[str, ...], tuple[tuple[int, ...], ...]]] = {
    # Both letters fix 0; the replier can keep {0, 2} alive forever by copying.
    "intro_example": (("a", "b"), ((0, 0), (0, 2), (2, 1))),
    # Three states whose transition monoid is the six-element Brandt monoid.
    "b2": (("a", "b"), ((0, 0), (2, 0), (0, 1))),
    # b2 with an identity letter added: adaptive play still wins, but no
    # single word beats every reply.
    "b2_prime": (("a", "b", "c"), ((0, 0, 0), (2, 0, 1), (0, 1, 2))),
    # Six states, adaptive value 2, shortest uniform word abc.
    "e_automaton": (
        ("a", "b", "c"),
        ((0, 0, 0), (2, 1, 1), (0, 3, 4), (5, 3, 0), (5, 0, 4), (5, 0, 0)),
    ),
    # Adaptive play wins under letter-for-letter replies but loses when the
    # replier may answer with whole words.
    "f_automaton": (("a", "b", "c"), ((1, 1, 0), (1, 2, 1), (2, 0, 1))),
}


def builtin(name: str) -> Dfa:
    """One of the named example automata (short aliases accepted)."""
    key = _BUILTIN_ALIASES.get(name, name)
    if key not in _BUILTINS:
        known = ", ".join(BUILTIN_NAMES)
        raise KeyError(f"unknown builtin {name!r} (known: {known})")
    alphabet, delta = _BUILTINS[key]
    return Dfa(n=len(delta), alphabet=alphabet, delta=delta, name=key)


def cerny(n: int) -> Dfa:
    """The classic slow-to-reset family: shortest reset word has length (n-1)^2.

    Letter ``a`` sends state 0 to 1 and fixes everything else; letter ``b``
    is the cyclic shift m -> m+1 (mod n).
    """
    if n < 2:
        raise ValueError("cerny(n) requires n >= 2")
    delta = tuple((1 if m == 0 else m, (m + 1) % n) for m in range(n))
    return Dfa(n=n, alphabet=("a", "b"), delta=delta, name=f"cerny_{n}")


def duplication_state(q: int, layer: int) -> int:
    """Index of ``(q, layer)`` in a duplicated automaton (layers interleaved)."""
    return 2 * q + layer


def duplication(dfa: Dfa, q0: int, b: str | int) -> Dfa:
    """Two-layer wrapper that stretches play without adding uniform power.

    States are pairs ``(q, 0 | 1)``.  Every letter sends ``(q, 0)`` to
    ``(q.a, 1)``; from layer 1 the distinguished letter ``b`` drops back to
    ``(q, 0)`` and every other letter collapses to ``(q0, 1)``.
    """
    if dfa.k < 2:
        raise ValueError("duplication requires at least two letters")
    if not 0 <= q0 < dfa.n:
        raise ValueError(f"q0 = {q0} out of range")
    b_idx = dfa.letter_index(b) if isinstance(b, str) else b
    if not 0 <= b_idx < dfa.k:
        raise ValueError(f"letter index {b_idx} out of range")
    rows = []
    for q in range(dfa.n):
        rows.append(tuple(duplication_state(dfa.delta[q][a], 1) for a in range(dfa.k)))
        rows.append(
            tuple(
                duplication_state(q, 0) if a == b_idx else duplication_state(q0, 1)
                for a in range(dfa.k)
            )
        )
    name = f"dup_{dfa.name}" if dfa.name else "dup"
    return Dfa(n=2 * dfa.n, alphabet=dfa.alphabet, delta=tuple(rows), name=name)


RANDOM_KINDS = ("weakly_acyclic", "commutative", "arbitrary")


def _letters(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(string.ascii_lowercase[:k])
    return tuple(f"x{i}" for i in range(k))


def random_family(
    kind: str, n: int, k: int, seed: int | str, synchronizing: bool = False
) -> Dfa:
    """Seed-deterministic random automaton of one of three kinds.

    ``weakly_acyclic``: transitions respect a random topological order
    (self-loops allowed).  ``commutative``: the letters are powers of one
    random transformation.  ``arbitrary``: uniform random table.  With
    ``synchronizing=True``, derived seeds are tried until the sample
    synchronizes (still deterministic in ``seed``).
    """
    if kind not in RANDOM_KINDS:
        raise ValueError(f"unknown kind {kind!r} (known: {', '.join(RANDOM_KINDS)})")
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if synchronizing:
        for attempt in range(10000):
            d = random_family(kind, n, k, f"{seed}#{attempt}")
            if is_synchronizing(d):
                return d
        raise RuntimeError(f"no synchronizing {kind} sample found for seed {seed!r}")
    rng = random.Random(f"{kind}:{n}:{k}:{seed}")
    alphabet = _letters(k)
    if kind == "weakly_acyclic":
        order = list(range(n))
        rng.shuffle(order)
        pos = {q: i for i, q in enumerate(order)}
        delta = tuple(
            tuple(
                rng.choice([q] + [t for t in range(n) if pos[t] > pos[q]])
                for _ in range(k)
            )
            for q in range(n)
        )
    elif kind == "commutative":
        base = [rng.randrange(n) for _ in range(n)]
        rows: list[list[int]] = [[0] * k for _ in range(n)]
        for a in range(k):
            power = rng.randint(1, max(2, 2 * n))
            image = list(range(n))
            for _ in range(power):
                image = [base[q] for q in image]
            for q in range(n):
                rows[q][a] = image[q]
        delta = tuple(tuple(row) for row in rows)
    else:
        delta = tuple(tuple(rng.randrange(n) for _ in range(k)) for q in range(n))
    return Dfa(n=n, alphabet=alphabet, delta=delta, name=f"{kind}_{n}_{k}_{seed}")
