"""Exception types shared across the package."""

from __future__ import annotations


class SyncGamesError(Exception):
    """Base class for all package-specific errors."""


class ParseError(SyncGamesError):
    """Malformed DFA text or board source.

    Carries the 1-based source position when one is known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class CapExceeded(SyncGamesError):
    """A computation hit its configured resource cap.

    ``kind`` names the cap: "exact" (exact reset-word search bound),
    "monoid" (transition-monoid size), "config" (configuration search),
    "token" (token-game subset space), or "fallback" (strategy fallback
    budget).  Hitting a cap is an "undecided at this budget" outcome,
    never a verdict.
    """

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


class NotSynchronizing(SyncGamesError):
    """An operation that requires a synchronizing automaton got one that is not."""


class NotInDS(SyncGamesError):
    """An operation that requires a transition monoid in DS got one outside it."""


class DecompositionError(SyncGamesError):
    """Internal consistency check of an algebraic construction failed."""


class GameError(SyncGamesError):
    """Illegal interaction with a game session (wrong turn, bad word, finished game)."""

    def __init__(self, message: str, reason: str = "illegal"):
        self.reason = reason  # "turn", "over", "illegal"
        super().__init__(message)
