"""Two-player synchronization games on token sets.

The synchronizer moves first and plays single letters; the opponent
replies with one letter under the normal rule or with any word (the empty
word included) under the modified rule.  Every token moves with every
letter played, tokens on the same state merge, and the synchronizer wins
as soon as one token remains.  Values count synchronizer moves only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal

from .core import (
    Dfa,
    Word,
    apply_word_mask,
    dynamics,
    mask_from_states,
    states_from_mask,
)
from .errors import CapExceeded, GameError

Rule = Literal["normal", "modified"]
NORMAL: Rule = "normal"
MODIFIED: Rule = "modified"

RULES = (NORMAL, MODIFIED)

TOKEN_CAP_STATES = 22
ALICE = "alice"
BOB = "bob"

#: Interactive input bound for modified-rule replies.
WORD_LENGTH_CAP = 64


def check_rule(rule: str) -> Rule:
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r} (expected 'normal' or 'modified')")
    return rule  # type: ignore[return-value]


def cubic_bound(n: int) -> int:
    """Upper bound on the synchronizer's move count when she wins:
    merge each of the C(n, 2) pairs within n - 2 surviving rounds, plus one."""
    return n * (n - 1) // 2 * max(n - 2, 0) + 1


class _GameTable:
    """Backward-induction values over a mask universe.

    ``va[mask]`` / ``vb[mask]`` hold the synchronizer's guaranteed
    remaining move count with the synchronizer / opponent to move; a mask
    absent from the dict is opponent-winning.  Nodes are finalized in
    nondecreasing value order with a bucket queue, so opponent nodes can
    take the max of their successors and synchronizer nodes the min.
    """

    def __init__(self, dfa: Dfa, masks: Iterable[int], rule: Rule):
        self.dfa = dfa
        self.rule = rule
        dyn = dynamics(dfa)
        self.dyn = dyn
        k = dfa.k
        masks = list(masks)
        universe = set(masks)
        succ_a: dict[int, list[int]] = {}
        succ_b: dict[int, tuple[int, ...]] = {}
        for m in masks:
            if m & (m - 1) == 0:
                continue
            images = [dyn.image(m, a) for a in range(k)]
            succ_a[m] = images
            succ_b[m] = tuple(images) if rule == NORMAL else dyn.closure(m)
        for m, options in succ_a.items():
            for t in options:
                if t not in universe:  # pragma: no cover - universes are image-closed
                    raise AssertionError("universe not closed under images")
        rev_a: dict[int, list[int]] = {}
        rev_b: dict[int, list[int]] = {}
        count_b: dict[int, int] = {}
        for m in succ_a:
            for s in succ_a[m]:
                rev_a.setdefault(s, []).append(m)
            options = succ_b[m]
            count_b[m] = len(options)
            for t in options:
                rev_b.setdefault(t, []).append(m)
        va: dict[int, int] = {}
        vb: dict[int, int] = {}
        buckets: list[list[tuple[int, str]]] = [[]]
        for m in masks:
            if m & (m - 1) == 0:
                va[m] = 0
                vb[m] = 0
                buckets[0].append((m, ALICE))
                buckets[0].append((m, BOB))
        d = 0
        while d < len(buckets):
            bucket = buckets[d]
            i = 0
            while i < len(bucket):
                mask, turn = bucket[i]
                i += 1
                if turn == ALICE:
                    # a synchronizer node settled at d: opponent predecessors
                    # may now have all successors settled, with max = d
                    for m in rev_b.get(mask, ()):
                        count_b[m] -= 1
                        if count_b[m] == 0:
                            vb[m] = d
                            bucket.append((m, BOB))
                else:
                    for m in rev_a.get(mask, ()):
                        if m not in va:
                            va[m] = d + 1
                            while len(buckets) <= d + 1:
                                buckets.append([])
                            buckets[d + 1].append((m, ALICE))
            d += 1
        self.va = va
        self.vb = vb
        self._succ_b = succ_b

    def best_letter(self, mask: int) -> int | None:
        """Lexicographically least optimal letter at a winning
        synchronizer node; None when the opponent wins from here."""
        if mask & (mask - 1) == 0:
            return None
        target = self.va.get(mask)
        if target is None:
            return None
        for a in range(self.dfa.k):
            if self.vb.get(self.dyn.image(mask, a)) == target - 1:
                return a
        raise AssertionError("no letter achieves the computed value")  # pragma: no cover

    def bob_reply(self, mask: int) -> Word:
        """Opponent reply: winning when possible, else delay-maximizing.

        Under the normal rule this is a single letter; under the modified
        rule, a shortest (then lexicographically least) word to a best
        target, possibly empty.
        """
        if mask & (mask - 1) == 0:
            raise GameError("game already won", reason="over")
        value = self.vb.get(mask)
        if self.rule == NORMAL:
            for a in range(self.dfa.k):
                t = self.dyn.image(mask, a)
                v = self.va.get(t)
                if value is None:
                    if v is None:
                        return (a,)
                    continue
                if v == value:
                    return (a,)
            if value is None:  # pragma: no cover - fixpoint guarantees a survivor
                raise AssertionError("opponent-winning node without surviving letter")
            raise AssertionError("no letter achieves the computed value")  # pragma: no cover
        # modified rule: breadth-first over the closure, empty word first
        want = (lambda t: self.va.get(t) is None) if value is None else (
            lambda t: self.va.get(t) == value
        )
        seen = {mask}
        queue: deque[tuple[int, Word]] = deque([(mask, ())])
        while queue:
            cur, word = queue.popleft()
            if want(cur):
                return word
            for a in range(self.dfa.k):
                nxt = self.dyn.image(cur, a)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, word + (a,)))
        raise AssertionError("no closure element achieves the computed value")  # pragma: no cover


@dataclass
class PairGameSolution:
    """Solved game on pairs of states (plus merged singletons)."""

    dfa: Dfa
    rule: Rule
    _table: _GameTable

    def _mask(self, p: int, q: int) -> int:
        if p == q or not (0 <= p < self.dfa.n and 0 <= q < self.dfa.n):
            raise ValueError(f"need two distinct states, got {p}, {q}")
        return (1 << p) | (1 << q)

    def alice_wins(self, p: int, q: int) -> bool:
        return self._mask(p, q) in self._table.va

    def distance(self, p: int, q: int, turn: str = ALICE) -> int | None:
        """Guaranteed remaining synchronizer moves, None when the opponent
        wins the pair."""
        table = self._table.va if turn == ALICE else self._table.vb
        return table.get(self._mask(p, q))

    def alice_move(self, p: int, q: int) -> int | None:
        return self._table.best_letter(self._mask(p, q))

    @property
    def all_alice_win(self) -> bool:
        n = self.dfa.n
        return all(
            self.alice_wins(p, q) for p in range(n) for q in range(p + 1, n)
        )


def solve_pair_game(dfa: Dfa, rule: Rule = NORMAL) -> PairGameSolution:
    """Solve the game restricted to two tokens, for every pair at once."""
    check_rule(rule)
    n = dfa.n
    masks = [1 << p for p in range(n)] + [
        (1 << p) | (1 << q) for p in range(n) for q in range(p + 1, n)
    ]
    return PairGameSolution(dfa=dfa, rule=rule, _table=_GameTable(dfa, masks, rule))


def is_a_automaton(dfa: Dfa, rule: Rule = NORMAL) -> bool:
    """True iff the synchronizer has an adaptive winning strategy from the
    full token set, decided on pairs: she wins the whole game iff she wins
    every two-token game."""
    if dfa.n == 1:
        return True
    return solve_pair_game(dfa, rule).all_alice_win


@dataclass
class TokenGameSolution:
    """Solved game over every nonempty token set of a DFA."""

    dfa: Dfa
    rule: Rule
    initial_mask: int
    _table: _GameTable

    @property
    def value(self) -> int | None:
        """Synchronizer moves needed from the initial set with her to move;
        None when the opponent wins."""
        return self._table.va.get(self.initial_mask)

    def alice_wins(self, mask: int | None = None, turn: str = ALICE) -> bool:
        return self.value_of(mask, turn) is not None

    def value_of(self, mask: int | None = None, turn: str = ALICE) -> int | None:
        mask = self.initial_mask if mask is None else mask
        table = self._table.va if turn == ALICE else self._table.vb
        return table.get(mask)

    def best_move(self, mask: int | None = None) -> int | None:
        """Optimal synchronizer letter (lexicographic tie-break)."""
        return self._table.best_letter(self.initial_mask if mask is None else mask)

    def bob_delay_move(self, mask: int | None = None) -> Word:
        """Opponent reply: survives forever when the opponent wins, else
        maximizes the synchronizer's remaining move count."""
        return self._table.bob_reply(self.initial_mask if mask is None else mask)


def solve_token_game(
    dfa: Dfa,
    initial: int | Iterable[int] | None = None,
    rule: Rule = NORMAL,
    cap_states: int = TOKEN_CAP_STATES,
) -> TokenGameSolution:
    """Backward induction over all (token set, side to move) nodes.

    Requires ``2^n`` within cap (``n <= cap_states``).  The initial set
    defaults to all states; values for every other set come along for free.
    """
    check_rule(rule)
    if dfa.n > cap_states:
        raise CapExceeded(
            "token",
            f"token game needs n <= {cap_states}, got n = {dfa.n}; play via the pair solver",
        )
    if initial is None:
        initial_mask = dfa.full_mask()
    elif isinstance(initial, int):
        initial_mask = initial
    else:
        initial_mask = mask_from_states(initial)
    if initial_mask <= 0 or initial_mask > dfa.full_mask():
        raise ValueError("initial token set must be a nonempty set of states")
    masks = range(1, 1 << dfa.n)
    return TokenGameSolution(
        dfa=dfa, rule=rule, initial_mask=initial_mask, _table=_GameTable(dfa, masks, rule)
    )


# ---------------------------------------------------------------------------
# Sessions


@dataclass(frozen=True)
class Move:
    player: str
    word: Word
    tokens_after: int


class GameSession:
    """One play-through: token set, whose turn, move history, status.

    Status is ``ongoing`` until one token remains (``alice_won``) or the
    synchronizer exhausts the move cap without synchronizing (``capped``,
    default cap ``4 * 2^n`` synchronizer moves, far beyond any winnable
    length).
    """

    def __init__(
        self,
        dfa: Dfa,
        rule: Rule = NORMAL,
        initial: int | Iterable[int] | None = None,
        max_alice_moves: int | None = None,
    ):
        check_rule(rule)
        self.dfa = dfa
        self.rule: Rule = rule
        if initial is None:
            self.tokens = dfa.full_mask()
        elif isinstance(initial, int):
            self.tokens = initial
        else:
            self.tokens = mask_from_states(initial)
        if self.tokens <= 0 or self.tokens > dfa.full_mask():
            raise ValueError("initial token set must be a nonempty set of states")
        self.turn = ALICE
        self.history: list[Move] = []
        self.alice_moves = 0
        self.max_alice_moves = (
            4 * (1 << dfa.n) if max_alice_moves is None else max_alice_moves
        )
        self.status = "alice_won" if self._won() else "ongoing"

    def _won(self) -> bool:
        return self.tokens & (self.tokens - 1) == 0

    def check_word(self, player: str, word: Word) -> None:
        """Raise :class:`GameError` unless ``word`` is a legal move for
        ``player`` under the session rule."""
        if any(not 0 <= a < self.dfa.k for a in word):
            raise GameError("word uses letters outside the alphabet", reason="illegal")
        if player == ALICE:
            if len(word) != 1:
                raise GameError(
                    "the synchronizer plays exactly one letter per move", reason="illegal"
                )
        elif player == BOB:
            if self.rule == NORMAL and len(word) != 1:
                raise GameError(
                    "normal-rule replies are exactly one letter", reason="illegal"
                )
        else:
            raise GameError(f"unknown player {player!r}", reason="illegal")

    def play(self, player: str, word: Word) -> Move:
        if self.status != "ongoing":
            raise GameError("game is over", reason="over")
        if player != self.turn:
            raise GameError(f"it is {self.turn}'s turn", reason="turn")
        self.check_word(player, word)
        self.tokens = apply_word_mask(self.dfa, self.tokens, word)
        move = Move(player=player, word=word, tokens_after=self.tokens)
        self.history.append(move)
        if player == ALICE:
            self.alice_moves += 1
        if self._won():
            self.status = "alice_won"
        elif self.alice_moves >= self.max_alice_moves:
            self.status = "capped"
        self.turn = BOB if player == ALICE else ALICE
        return move

    def token_states(self) -> tuple[int, ...]:
        return states_from_mask(self.tokens)


def transcript_records(session: GameSession) -> list[dict]:
    """One JSON-ready record per move: ``{player, word, tokens_after}``."""
    return [
        {
            "player": move.player,
            "word": session.dfa.word_to_str(move.word),
            "tokens_after": list(states_from_mask(move.tokens_after)),
        }
        for move in session.history
    ]


# ---------------------------------------------------------------------------
# Engine


class Engine:
    """Move source for engine-played sides.

    The synchronizer prefers the exact token-game solution when the subset
    space is within cap, then a known uniform word, then merging one pair
    at a time.  The opponent replies with a winning move when one exists
    and a delay-maximizing move otherwise.
    """

    def __init__(
        self,
        dfa: Dfa,
        rule: Rule = NORMAL,
        uniform_word: Word | None = None,
        token_cap_states: int = TOKEN_CAP_STATES,
    ):
        check_rule(rule)
        self.dfa = dfa
        self.rule: Rule = rule
        self.uniform_word = uniform_word
        self.token_cap_states = token_cap_states
        self._token: TokenGameSolution | None = None
        self._pairs: PairGameSolution | None = None

    @property
    def token(self) -> TokenGameSolution | None:
        if self._token is None and self.dfa.n <= self.token_cap_states:
            self._token = solve_token_game(
                self.dfa, rule=self.rule, cap_states=self.token_cap_states
            )
        return self._token

    @property
    def pairs(self) -> PairGameSolution:
        if self._pairs is None:
            self._pairs = solve_pair_game(self.dfa, self.rule)
        return self._pairs

    # -- synchronizer ------------------------------------------------------

    def alice_move(self, session: GameSession) -> Word:
        tokens = session.tokens
        solution = self.token
        if solution is not None:
            a = solution.best_move(tokens)
            if a is not None:
                return (a,)
            return (0,)  # no forced win exists; any letter is as good
        if self.uniform_word is not None and session.alice_moves < len(self.uniform_word):
            return (self.uniform_word[session.alice_moves],)
        return (self._pair_merge_letter(tokens),)

    def _pair_merge_letter(self, tokens: int) -> int:
        states = states_from_mask(tokens)
        best: tuple[int, tuple[int, int]] | None = None
        for x, p in enumerate(states):
            for q in states[x + 1:]:
                d = self.pairs.distance(p, q)
                if d is not None and (best is None or (d, (p, q)) < best):
                    best = (d, (p, q))
        if best is None:
            return 0
        move = self.pairs.alice_move(*best[1])
        assert move is not None
        return move

    # -- opponent ----------------------------------------------------------

    def bob_move(self, session: GameSession) -> Word:
        tokens = session.tokens
        solution = self.token
        if solution is not None:
            return solution.bob_delay_move(tokens)
        return self._pair_bob_move(tokens)

    def _surviving_pair_score(self, mask: int) -> tuple[int, int]:
        """(has an opponent-winning pair, largest pair distance) for a set."""
        states = states_from_mask(mask)
        winning = 0
        longest = 0
        for x, p in enumerate(states):
            for q in states[x + 1:]:
                d = self.pairs.distance(p, q)
                if d is None:
                    winning = 1
                else:
                    longest = max(longest, d)
        return winning, longest

    def _pair_bob_move(self, tokens: int) -> Word:
        dyn = dynamics(self.dfa)
        if self.rule == NORMAL:
            scored = [
                (self._surviving_pair_score(dyn.image(tokens, a)), a)
                for a in range(self.dfa.k)
            ]
            best = max(scored, key=lambda item: (item[0], -item[1]))
            return (best[1],)
        options = dyn.closure(tokens)  # breadth-first, empty word first
        best_score = max(self._surviving_pair_score(m) for m in options)
        seen = {tokens}
        queue: deque[tuple[int, Word]] = deque([(tokens, ())])
        while queue:
            cur, word = queue.popleft()
            if self._surviving_pair_score(cur) == best_score:
                return word
            for a in range(self.dfa.k):
                nxt = dyn.image(cur, a)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, word + (a,)))
        raise AssertionError("closure search lost its best element")  # pragma: no cover

    def move(self, session: GameSession, role: str) -> Word:
        if role == ALICE:
            return self.alice_move(session)
        if role == BOB:
            return self.bob_move(session)
        raise ValueError(f"unknown role {role!r}")


def engine_move(session: GameSession, role: str, source: Engine) -> Word:
    """The engine's move for ``role`` in ``session``, drawn from ``source``."""
    return source.move(session, role)
