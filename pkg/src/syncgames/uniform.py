"""Uniform winning strategies: fixed words that beat every reply.

A word ``w`` is a uniform winning strategy when interleaving its letters
with arbitrary replies (single letters under the normal rule, whole words
under the modified rule) always ends with one token.  Verification
simulates configurations: sets of token-set branches, one branch per
reply line.  Branches that are already singletons are dropped (those
lines are won), and branches contained in another branch are dropped
(any word that wins the superset wins the subset), so a configuration is
accepting exactly when it is empty.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Dfa, Word, dynamics, states_from_mask
from .errors import CapExceeded, DecompositionError, NotSynchronizing
from .monoid import (
    MONOID_CAP,
    TransitionMonoid,
    archimedean_decomposition,
    enumerate_monoid,
    kernel,
    nilpotency_index,
)
from .games import MODIFIED, NORMAL, Rule, check_rule
from .core import is_synchronizing, shortest_reset_word

CONFIG_CAP = 100_000

K_NUMERIC_STATE_BOUND = 16


def strategy_bound(n: int) -> int:
    """Worst-case length bound for a shortest uniform strategy:
    ``2^(2^n - 1) - 2^n`` (the number of non-accepting configurations)."""
    return (1 << ((1 << n) - 1)) - (1 << n)


def strategy_bound_repr(n: int) -> int | str:
    """The bound as an int for n <= 16, symbolically beyond that."""
    if n <= K_NUMERIC_STATE_BOUND:
        return strategy_bound(n)
    return f"2^(2^{n}-1)-2^{n}"


def canonical_config(branches) -> tuple[int, ...]:
    """Drop singleton branches and branches contained in kept ones;
    return the survivors sorted."""
    uniq = sorted({m for m in branches if m & (m - 1)})
    return tuple(
        m for m in uniq if not any(m != other and m & other == m for other in uniq)
    )


def _config_step(dfa: Dfa, config: tuple[int, ...], a: int, rule: Rule, reduce: bool):
    """Successor configuration after the synchronizer plays ``a`` and the
    opponent replies with every option, one branch each."""
    dyn = dynamics(dfa)
    branches: set[int] = set()
    for mask in config:
        after = dyn.image(mask, a)
        if rule == NORMAL:
            for b in range(dfa.k):
                branches.add(dyn.image(after, b))
        else:
            branches.update(dyn.closure(after))
    if reduce:
        return canonical_config(branches)
    return tuple(sorted(branches))


def _initial_config(dfa: Dfa, masks: tuple[int, ...], reduce: bool) -> tuple[int, ...]:
    if reduce:
        return canonical_config(masks)
    return tuple(sorted(masks))


def _accepting(config: tuple[int, ...], reduce: bool) -> bool:
    if reduce:
        return not config
    return all(m & (m - 1) == 0 for m in config)


def verify_uniform_strategy(
    dfa: Dfa, word: Word, rule: Rule = NORMAL, initial: tuple[int, ...] | None = None
) -> bool:
    """True iff ``word`` wins against every reply line.

    Early wins are accepted: once every branch is a singleton the
    remaining letters cannot hurt, so any extension of a winning prefix
    verifies as well.
    """
    ok, _ = verify_with_trace(dfa, word, rule, initial=initial)
    return ok


def verify_with_trace(
    dfa: Dfa, word: Word, rule: Rule = NORMAL, initial: tuple[int, ...] | None = None
) -> tuple[bool, list[int]]:
    """Verification plus the branch count after each prefix (the
    certificate payload)."""
    check_rule(rule)
    config = _initial_config(dfa, initial or (dfa.full_mask(),), reduce=True)
    counts = []
    for a in word:
        config = _config_step(dfa, config, a, rule, reduce=True)
        counts.append(len(config))
    return _accepting(config, reduce=True), counts


def refuting_replies(dfa: Dfa, word: Word, rule: Rule = NORMAL) -> list[Word] | None:
    """When ``word`` is not uniform, one reply sequence that keeps at
    least two tokens alive through the whole word; None when it is uniform.
    """
    check_rule(rule)
    dyn = dynamics(dfa)
    # branch -> list of replies that produced it
    frontier: dict[int, tuple[Word, ...]] = {dfa.full_mask(): ()}
    for a in word:
        nxt: dict[int, tuple[Word, ...]] = {}
        for mask, replies in frontier.items():
            after = dyn.image(mask, a)
            if rule == NORMAL:
                options = [((b,), dyn.image(after, b)) for b in range(dfa.k)]
            else:
                options = []
                seen = {after}
                queue: deque[tuple[int, Word]] = deque([(after, ())])
                while queue:
                    cur, reply = queue.popleft()
                    options.append((reply, cur))
                    for b in range(dfa.k):
                        t = dyn.image(cur, b)
                        if t not in seen:
                            seen.add(t)
                            queue.append((t, reply + (b,)))
            for reply, result in options:
                if result not in nxt:
                    nxt[result] = replies + (reply,)
        frontier = nxt
    survivors = [m for m in frontier if m & (m - 1)]
    if not survivors:
        return None
    return list(frontier[min(survivors)])


@dataclass(frozen=True)
class UniformStrategyReport:
    """Outcome of the uniform-strategy search."""

    exists: bool
    word: Word | None
    rule: Rule
    explored: int
    bound: int | str

    @property
    def length(self) -> int | None:
        return None if self.word is None else len(self.word)


def decide_uws(
    dfa: Dfa,
    rule: Rule = NORMAL,
    config_cap: int = CONFIG_CAP,
    reduce: bool = True,
    initial: tuple[int, ...] | None = None,
) -> UniformStrategyReport:
    """Decide existence of a uniform winning strategy by breadth-first
    search in the configuration automaton.

    Returns a length-minimal word when one exists and a definite negative
    after exhausting reachable configurations.  Raises
    :class:`CapExceeded` when more than ``config_cap`` configurations
    appear; that outcome is *undecided*, never a verdict.  ``reduce=False``
    searches raw configurations (no subsumption dropping) and exists for
    cross-checks.
    """
    check_rule(rule)
    start = _initial_config(dfa, initial or (dfa.full_mask(),), reduce)
    parents: dict[tuple[int, ...], tuple[tuple[int, ...] | None, int]] = {start: (None, -1)}
    if _accepting(start, reduce):
        return UniformStrategyReport(
            exists=True, word=(), rule=rule, explored=1,
            bound=strategy_bound_repr(dfa.n),
        )
    queue = deque([start])
    while queue:
        config = queue.popleft()
        for a in range(dfa.k):
            nxt = _config_step(dfa, config, a, rule, reduce)
            if nxt in parents:
                continue
            parents[nxt] = (config, a)
            if _accepting(nxt, reduce):
                word = [a]
                cur = config
                while parents[cur][0] is not None:
                    prev, letter = parents[cur]
                    word.append(letter)
                    cur = prev  # type: ignore[assignment]
                return UniformStrategyReport(
                    exists=True,
                    word=tuple(reversed(word)),
                    rule=rule,
                    explored=len(parents),
                    bound=strategy_bound_repr(dfa.n),
                )
            if len(parents) > config_cap:
                raise CapExceeded(
                    "config",
                    f"more than {config_cap} configurations explored; undecided at this budget",
                )
            queue.append(nxt)
    return UniformStrategyReport(
        exists=False, word=None, rule=rule, explored=len(parents),
        bound=strategy_bound_repr(dfa.n),
    )


def pair_uniform_strategy(
    dfa: Dfa, pair: tuple[int, int], rule: Rule = NORMAL, config_cap: int = CONFIG_CAP
) -> Word | None:
    """Shortest word that merges one given pair against every reply, or
    None when no such word exists."""
    if len(set(pair)) != 2 or any(not 0 <= p < dfa.n for p in pair):
        raise ValueError(f"need two distinct states in range, got {pair!r}")
    mask = (1 << pair[0]) | (1 << pair[1])
    report = decide_uws(dfa, rule=rule, config_cap=config_cap, initial=(mask,))
    return report.word


def ds_uniform_strategy(
    dfa: Dfa,
    monoid_cap: int = MONOID_CAP,
    fallback: bool = True,
    fallback_limit: int = 1024,
) -> Word:
    """Short uniform winning strategy for synchronizing automata whose
    transition monoid lies in DS; valid under both rules.

    Takes a kernel element with the shortest witness ``w`` (that witness is
    a reset word) and returns ``w^m`` where ``m`` is the nilpotency index
    of the minimal Archimedean component.  When the monoid exceeds its cap
    and ``fallback`` is set, a reset word ``w`` is used instead and ``m``
    grows until verification passes under both rules.
    """
    if not is_synchronizing(dfa):
        raise NotSynchronizing("no reset word exists, so no uniform strategy exists")
    try:
        monoid = enumerate_monoid(dfa, cap=monoid_cap)
    except CapExceeded:
        if not fallback:
            raise
        return _fallback_strategy(dfa, fallback_limit)
    ker = kernel(monoid)
    zeta = min(ker, key=lambda i: (len(monoid.witnesses[i]), monoid.witnesses[i]))
    w = monoid.witnesses[zeta]
    decomposition = archimedean_decomposition(monoid)  # raises NotInDS outside DS
    members = decomposition.component_members(decomposition.minimal_component)
    m = nilpotency_index(monoid, members)
    word = w * m
    for rule in (NORMAL, MODIFIED):
        if not verify_uniform_strategy(dfa, word, rule):  # pragma: no cover
            raise DecompositionError(
                f"constructed strategy failed verification under the {rule} rule"
            )
    return word


def _fallback_strategy(dfa: Dfa, limit: int) -> Word:
    try:
        w = shortest_reset_word(dfa, mode="exact")
    except CapExceeded:
        w = shortest_reset_word(dfa, mode="greedy")
    assert w is not None  # synchronizing was checked
    for m in range(1, limit + 1):
        word = w * m
        if verify_uniform_strategy(dfa, word, NORMAL) and verify_uniform_strategy(
            dfa, word, MODIFIED
        ):
            return word
    raise CapExceeded(
        "fallback", f"no power of the reset word up to {limit} verified"
    )


# ---------------------------------------------------------------------------
# Certificates

METHOD_CONFIG_BFS = "configuration-bfs"
METHOD_THEOREM_DS = "theorem-ds"


def strategy_certificate(dfa: Dfa, word: Word, rule: Rule, method: str) -> dict:
    """Self-contained, re-checkable certificate for a uniform strategy."""
    if method not in (METHOD_CONFIG_BFS, METHOD_THEOREM_DS):
        raise ValueError(f"unknown method {method!r}")
    ok, counts = verify_with_trace(dfa, word, rule)
    if not ok:
        raise ValueError("refusing to certify a word that fails verification")
    return {
        "schema": "syncgames.certificate/1",
        "word": dfa.word_to_str(word),
        "rule": rule,
        "method": method,
        "verification": counts,
    }


def check_certificate(dfa: Dfa, certificate: dict) -> tuple[bool, str]:
    """Re-verify a certificate against an automaton.

    The word must verify and the stored per-prefix branch counts must
    match a fresh simulation exactly.  Returns (verdict, reason).
    """
    try:
        word = dfa.word_from_str(certificate["word"])
        rule = check_rule(certificate["rule"])
        method = certificate["method"]
        stored = list(certificate["verification"])
    except (KeyError, TypeError, ValueError) as exc:
        return False, f"malformed certificate: {exc}"
    if method not in (METHOD_CONFIG_BFS, METHOD_THEOREM_DS):
        return False, f"unknown method {method!r}"
    ok, counts = verify_with_trace(dfa, word, rule)
    if not ok:
        return False, "word fails verification"
    if counts != stored:
        return False, "stored verification trace does not match the word"
    return True, "certificate verifies"
