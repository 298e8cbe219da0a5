"""Complete deterministic finite automata and subset dynamics.

States are indices ``0..n-1``.  Subsets of states travel through the
package as int bit masks (bit ``q`` set means state ``q`` is present),
so image and reachability computations reduce to machine-int work.
Words are tuples of letter indices into ``Dfa.alphabet``.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import CapExceeded, ParseError

Word = tuple[int, ...]

EXACT_SEARCH_BOUND = 20


@dataclass(frozen=True)
class Dfa:
    """A complete DFA over states ``0..n-1`` and an ordered alphabet.

    ``delta[q][a]`` is the successor of state ``q`` under the letter with
    index ``a``.  ``name`` is a display label and does not take part in
    equality.
    """

    n: int
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a DFA needs at least one state")
        if not self.alphabet:
            raise ValueError("a DFA needs at least one letter")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet letters must be distinct")
        for sym in self.alphabet:
            if not sym or any(ch.isspace() for ch in sym) or not sym.isprintable():
                raise ValueError(f"letter {sym!r} is not a printable whitespace-free token")
        if len(self.delta) != self.n:
            raise ValueError("transition table must have one row per state")
        for q, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise ValueError(f"state {q}: transition row must cover every letter")
            for t in row:
                if not 0 <= t < self.n:
                    raise ValueError(f"state {q}: transition target {t} out of range")

    @property
    def k(self) -> int:
        return len(self.alphabet)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def step(self, q: int, a: int) -> int:
        return self.delta[q][a]

    def letter_index(self, symbol: str) -> int:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise ValueError(f"unknown letter {symbol!r}") from None

    def word_from_str(self, text: str) -> Word:
        """Parse a word: one char per letter for single-char alphabets,
        whitespace-separated tokens otherwise.  Empty text is the empty word."""
        text = text.strip()
        if not text:
            return ()
        if all(len(sym) == 1 for sym in self.alphabet):
            return tuple(self.letter_index(ch) for ch in text if not ch.isspace())
        return tuple(self.letter_index(tok) for tok in text.split())

    def word_to_str(self, word: Word) -> str:
        symbols = [self.alphabet[a] for a in word]
        if all(len(sym) == 1 for sym in self.alphabet):
            return "".join(symbols)
        return " ".join(symbols)


def mask_from_states(states: Iterable[int]) -> int:
    mask = 0
    for q in states:
        mask |= 1 << q
    return mask


def states_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@functools.lru_cache(maxsize=256)
def _letter_bits(dfa: Dfa) -> tuple[tuple[int, ...], ...]:
    """Per letter, the single-bit image of each state."""
    return tuple(
        tuple(1 << dfa.delta[q][a] for q in range(dfa.n)) for a in range(dfa.k)
    )


def apply_letter_mask(dfa: Dfa, mask: int, a: int) -> int:
    bits = _letter_bits(dfa)[a]
    out = 0
    m = mask
    while m:
        low = m & -m
        out |= bits[low.bit_length() - 1]
        m ^= low
    return out


def apply_word_mask(dfa: Dfa, mask: int, word: Word) -> int:
    for a in word:
        mask = apply_letter_mask(dfa, mask, a)
    return mask


def apply_word(dfa: Dfa, states: Iterable[int], word: Word) -> frozenset[int]:
    """Image of a state set under a word."""
    mask = mask_from_states(states)
    if mask and not mask < (1 << dfa.n):
        raise ValueError("state out of range")
    return frozenset(states_from_mask(apply_word_mask(dfa, mask, word)))


class SubsetDynamics:
    """Memoized subset-image and forward-closure computations for one DFA.

    ``closure(mask)`` returns every subset reachable from ``mask`` by
    applying words (the empty word included), which is exactly the set of
    images an unconstrained replier can reach.
    """

    def __init__(self, dfa: Dfa):
        self.dfa = dfa
        self._closure: dict[int, tuple[int, ...]] = {}

    def image(self, mask: int, a: int) -> int:
        return apply_letter_mask(self.dfa, mask, a)

    def closure(self, mask: int) -> tuple[int, ...]:
        cached = self._closure.get(mask)
        if cached is not None:
            return cached
        seen = {mask}
        queue = deque([mask])
        order = [mask]
        while queue:
            cur = queue.popleft()
            for a in range(self.dfa.k):
                nxt = self.image(cur, a)
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
        result = tuple(order)
        self._closure[mask] = result
        return result


@functools.lru_cache(maxsize=64)
def dynamics(dfa: Dfa) -> SubsetDynamics:
    return SubsetDynamics(dfa)


# ---------------------------------------------------------------------------
# Pair automaton


def _pair_merge_distances(dfa: Dfa) -> dict[tuple[int, int], int]:
    """Shortest number of letters merging each unordered pair (i < j).

    Backward BFS from the diagonal of the pair automaton.  Pairs absent
    from the result cannot be merged.
    """
    n, k = dfa.n, dfa.k
    rev: dict[tuple[int, int], list[tuple[int, int]]] = {}
    start: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            merged = False
            for a in range(k):
                ti, tj = dfa.delta[i][a], dfa.delta[j][a]
                if ti == tj:
                    merged = True
                else:
                    key = (ti, tj) if ti < tj else (tj, ti)
                    rev.setdefault(key, []).append((i, j))
            if merged:
                start.append((i, j))
    dist = {p: 1 for p in start}
    queue = deque(start)
    while queue:
        p = queue.popleft()
        for q in rev.get(p, ()):
            if q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    return dist


def is_synchronizing(dfa: Dfa) -> bool:
    """True iff some word maps every state to one state."""
    if dfa.n == 1:
        return True
    dist = _pair_merge_distances(dfa)
    return len(dist) == dfa.n * (dfa.n - 1) // 2


def _pair_merge_word(dfa: Dfa, pair: tuple[int, int], dist: dict[tuple[int, int], int]) -> Word:
    """Lexicographically least shortest merging word for one pair."""
    word = []
    i, j = pair
    while i != j:
        d = dist[(i, j) if i < j else (j, i)]
        for a in range(dfa.k):
            ti, tj = dfa.delta[i][a], dfa.delta[j][a]
            if ti == tj or dist.get((ti, tj) if ti < tj else (tj, ti), None) == d - 1:
                word.append(a)
                i, j = ti, tj
                break
        else:  # pragma: no cover - dist invariant guarantees progress
            raise AssertionError("no letter decreases the merge distance")
    return tuple(word)


def shortest_reset_word(
    dfa: Dfa, mode: str = "exact", exact_bound: int = EXACT_SEARCH_BOUND
) -> Word | None:
    """A reset word, or None when the automaton is not synchronizing.

    ``mode="exact"`` runs a BFS over subsets reachable from the full set
    and returns a length-minimal word; it requires ``n <= exact_bound``
    and raises :class:`CapExceeded` otherwise.  ``mode="greedy"`` merges
    one pair at a time (shortest merging word; ties by lexicographically
    smallest pair, then smallest word) and is deterministic but not
    length-minimal; its output is at most ``n * C(n, 2)`` letters.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    if dfa.n == 1:
        return ()
    if not is_synchronizing(dfa):
        return None
    if mode == "exact":
        if dfa.n > exact_bound:
            raise CapExceeded(
                "exact",
                f"exact search requires n <= {exact_bound}, got n = {dfa.n}; use greedy mode",
            )
        full = dfa.full_mask()
        parent: dict[int, tuple[int, int]] = {full: (-1, -1)}
        queue = deque([full])
        goal = None
        while queue:
            cur = queue.popleft()
            if cur & (cur - 1) == 0:
                goal = cur
                break
            for a in range(dfa.k):
                nxt = apply_letter_mask(dfa, cur, a)
                if nxt not in parent:
                    parent[nxt] = (cur, a)
                    queue.append(nxt)
        assert goal is not None
        word = []
        cur = goal
        while parent[cur][0] != -1:
            prev, a = parent[cur]
            word.append(a)
            cur = prev
        return tuple(reversed(word))
    dist = _pair_merge_distances(dfa)
    cur = dfa.full_mask()
    word: list[int] = []
    while cur & (cur - 1):
        states = states_from_mask(cur)
        best = min(
            ((i, j) for x, i in enumerate(states) for j in states[x + 1:]),
            key=lambda p: (dist[p], p),
        )
        piece = _pair_merge_word(dfa, best, dist)
        word.extend(piece)
        cur = apply_word_mask(dfa, cur, piece)
    return tuple(word)


# ---------------------------------------------------------------------------
# Structural classifiers


def is_weakly_acyclic(dfa: Dfa) -> bool:
    """True iff every cycle of the transition digraph is a self-loop."""
    succ = [
        sorted({t for t in dfa.delta[q] if t != q}) for q in range(dfa.n)
    ]
    color = [0] * dfa.n  # 0 new, 1 on stack, 2 done
    for root in range(dfa.n):
        if color[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        color[root] = 1
        while stack:
            q, idx = stack[-1]
            if idx < len(succ[q]):
                stack[-1] = (q, idx + 1)
                t = succ[q][idx]
                if color[t] == 1:
                    return False
                if color[t] == 0:
                    color[t] = 1
                    stack.append((t, 0))
            else:
                color[q] = 2
                stack.pop()
    return True


def is_definite(dfa: Dfa) -> tuple[bool, int | None]:
    """Whether every long-enough word resets the automaton.

    Returns ``(True, k)`` with the least ``k`` such that all words of
    length >= k map every pair of states together, or ``(False, None)``.
    Decided on the pair automaton restricted to non-diagonal pairs: the
    automaton is definite iff that restriction is acyclic, and then
    ``k = 1 +`` the longest path length (``k = 0`` iff ``n = 1``).
    """
    n, k = dfa.n, dfa.k
    if n == 1:
        return True, 0
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {p: x for x, p in enumerate(pairs)}
    succ: list[list[int]] = []
    for i, j in pairs:
        outs = []
        for a in range(k):
            ti, tj = dfa.delta[i][a], dfa.delta[j][a]
            if ti != tj:
                outs.append(index[(ti, tj) if ti < tj else (tj, ti)])
        succ.append(sorted(set(outs)))
    # longest path in a DAG via DFS with cycle detection
    color = [0] * len(pairs)
    longest = [0] * len(pairs)
    for root in range(len(pairs)):
        if color[root]:
            continue
        stack = [(root, 0)]
        color[root] = 1
        while stack:
            v, idx = stack[-1]
            if idx < len(succ[v]):
                stack[-1] = (v, idx + 1)
                t = succ[v][idx]
                if color[t] == 1:
                    return False, None
                if color[t] == 0:
                    color[t] = 1
                    stack.append((t, 0))
            else:
                color[v] = 2
                longest[v] = max((1 + longest[t] for t in succ[v]), default=0)
                stack.pop()
    return True, 1 + max(longest)


# ---------------------------------------------------------------------------
# Text format


def parse_dfa(text: str, name: str | None = None) -> Dfa:
    """Parse the DFA text format.

    Grammar (``#`` starts a comment, blank lines are ignored)::

        states: <n>
        alphabet: <letter> <letter> ...
        transitions:
        <state> <letter> <state>
        ...

    The table must be complete and deterministic.  State names that are
    decimal integers in ``0..n-1`` denote that index directly; any other
    name is assigned the next free index in order of first appearance.

    A ``# <name>`` comment before the first directive names the automaton
    (as written by :func:`serialize_dfa`); an explicit ``name`` argument
    wins over it.
    """
    lines = text.splitlines()

    if name is None:
        for raw in lines:
            stripped = raw.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                candidate = stripped.lstrip("#").strip()
                if candidate:
                    name = candidate
            break

    def content(lineno: int) -> str:
        raw = lines[lineno]
        cut = raw.find("#")
        return raw if cut < 0 else raw[:cut]

    meaningful = [
        (i + 1, content(i).strip()) for i in range(len(lines)) if content(i).strip()
    ]
    pos = 0

    def expect_directive(key: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(meaningful):
            raise ParseError(f"missing '{key}:' directive", line=len(lines) or 1)
        lineno, line = meaningful[pos]
        if not line.startswith(key + ":"):
            raise ParseError(f"expected '{key}:' directive, got {line!r}", line=lineno, column=1)
        pos += 1
        return lineno, line[len(key) + 1:].strip()

    lineno, value = expect_directive("states")
    try:
        n = int(value)
    except ValueError:
        raise ParseError(f"state count must be an integer, got {value!r}", line=lineno) from None
    if n < 1:
        raise ParseError("state count must be at least 1", line=lineno)

    lineno, value = expect_directive("alphabet")
    alphabet = tuple(value.split())
    if not alphabet:
        raise ParseError("alphabet must list at least one letter", line=lineno)
    if len(set(alphabet)) != len(alphabet):
        raise ParseError("alphabet letters must be distinct", line=lineno)
    letter_index = {sym: a for a, sym in enumerate(alphabet)}

    lineno, value = expect_directive("transitions")
    if value:
        raise ParseError("'transitions:' takes no argument", line=lineno)

    names: dict[str, int] = {}

    def state_index(token: str, lineno: int, column: int) -> int:
        if token.lstrip("-").isdigit():
            q = int(token)
            if not 0 <= q < n:
                raise ParseError(
                    f"state {token!r} out of range 0..{n - 1}", line=lineno, column=column
                )
            return q
        if token not in names:
            used = set(names.values())
            free = next((q for q in range(n) if q not in used), None)
            if free is None:
                raise ParseError(
                    f"state name {token!r} exceeds the declared {n} states",
                    line=lineno,
                    column=column,
                )
            names[token] = free
        return names[token]

    table: list[list[int | None]] = [[None] * len(alphabet) for _ in range(n)]
    for lineno, line in meaningful[pos:]:
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError(
                f"transition line needs '<state> <letter> <state>', got {line!r}",
                line=lineno,
                column=1,
            )
        src_tok, letter_tok, dst_tok = tokens
        col_letter = line.index(letter_tok, len(src_tok)) + 1
        src = state_index(src_tok, lineno, 1)
        if letter_tok not in letter_index:
            raise ParseError(f"unknown letter {letter_tok!r}", line=lineno, column=col_letter)
        a = letter_index[letter_tok]
        dst = state_index(dst_tok, lineno, line.rindex(dst_tok) + 1)
        previous = table[src][a]
        if previous is not None and previous != dst:
            raise ParseError(
                f"conflicting duplicate transition for state {src_tok!r} letter {letter_tok!r}",
                line=lineno,
            )
        table[src][a] = dst

    index_name = {q: s for s, q in names.items()}
    for q in range(n):
        for a, sym in enumerate(alphabet):
            if table[q][a] is None:
                shown = index_name.get(q, str(q))
                raise ParseError(
                    f"missing transition for state {shown!r} letter {sym!r}"
                )
    return Dfa(
        n=n,
        alphabet=alphabet,
        delta=tuple(tuple(row) for row in table),  # type: ignore[arg-type]
        name=name,
    )


def serialize_dfa(dfa: Dfa) -> str:
    """Canonical DFA text: numeric state names, letters in declared order."""
    out = []
    if dfa.name:
        out.append(f"# {dfa.name}")
    out.append(f"states: {dfa.n}")
    out.append("alphabet: " + " ".join(dfa.alphabet))
    out.append("transitions:")
    for q in range(dfa.n):
        for a, sym in enumerate(dfa.alphabet):
            out.append(f"{q} {sym} {dfa.delta[q][a]}")
    return "\n".join(out) + "\n"
