"""Board descriptions compiled to DFAs.

Two layouts exist.  A walled grid over the compass alphabet ``e n s w``:
tokens slide one cell per letter, walls block, an arrow on a walled cell
redirects the move once, a blocked redirect (or a blocked move with no
arrow) inverts direction, and a blocked inversion stays put; an optional
exit opening leads to an absorbing sink.  A circular track over ``a b``:
``b`` advances one cell clockwise and ``a`` advances by the cell's arrow
count.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .core import Dfa
from .errors import ParseError

DIRECTIONS = ("e", "n", "s", "w")
_OFFSETS = {"e": (1, 0), "n": (0, 1), "s": (0, -1), "w": (-1, 0)}
_INVERSE = {"e": "w", "w": "e", "n": "s", "s": "n"}

Cell = tuple[int, int]


@dataclass(frozen=True)
class GridBoard:
    """Walled grid with optional arrows and one optional exit cell.

    Cell ``(x, y)`` has ``(0, 0)`` at the bottom left.  ``walls`` holds
    unordered pairs of adjacent cell coordinates (off-board coordinates
    denote explicit boundary walls); the outer boundary counts as walls
    even when not listed, except at the exit openings.
    """

    width: int
    height: int
    walls: frozenset[frozenset[Cell]]
    arrows: tuple[tuple[Cell, str], ...]
    exit_cell: Cell | None
    exit_dirs: frozenset[str]

    def on_board(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def cell_index(self, x: int, y: int) -> int:
        if not self.on_board((x, y)):
            raise ValueError(f"cell ({x}, {y}) is off the board")
        return y * self.width + x

    @property
    def sink_index(self) -> int | None:
        return self.width * self.height if self.exit_cell is not None else None

    def arrow_at(self, cell: Cell) -> str | None:
        for at, direction in self.arrows:
            if at == cell:
                return direction
        return None


@dataclass(frozen=True)
class TrackBoard:
    """Circular track; ``arrow_count[i]`` arrows sit on cell ``i``."""

    cells: int
    arrow_count: tuple[int, ...]


Board = GridBoard | TrackBoard


def _neighbor(cell: Cell, direction: str) -> Cell:
    dx, dy = _OFFSETS[direction]
    return (cell[0] + dx, cell[1] + dy)


def parse_board(text: str) -> Board:
    """Parse the board DSL (``#`` comments and blank lines ignored).

    Grid form::

        grid <width> <height>
        wall <x1> <y1> <x2> <y2>        # between adjacent cells
        wall <x> <y> <e|n|s|w> outside  # explicit boundary wall
        arrow <x> <y> <e|n|s|w>
        exit <x> <y> <e|n|s|w>          # may repeat for several openings

    Track form::

        track cells=<n>
        arrows <i>=<k> [<i>=<k> ...]
    """
    entries: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        cut = raw.find("#")
        line = (raw if cut < 0 else raw[:cut]).strip()
        if line:
            entries.append((lineno, line.split()))
    if not entries:
        raise ParseError("empty board description", line=1)
    head_line, head = entries[0]
    if head[0] == "grid":
        return _parse_grid(head_line, head, entries[1:])
    if head[0] == "track":
        return _parse_track(head_line, head, entries[1:])
    raise ParseError(f"expected 'grid' or 'track', got {head[0]!r}", line=head_line, column=1)


def _int_token(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line=lineno) from None


def _parse_grid(head_line: int, head: list[str], rest: list[tuple[int, list[str]]]) -> GridBoard:
    if len(head) != 3:
        raise ParseError("grid header needs 'grid <width> <height>'", line=head_line)
    width = _int_token(head[1], head_line, "width")
    height = _int_token(head[2], head_line, "height")
    if width < 1 or height < 1:
        raise ParseError("grid dimensions must be positive", line=head_line)

    def cell(tokens: list[str], at: int, lineno: int) -> Cell:
        return (
            _int_token(tokens[at], lineno, "x coordinate"),
            _int_token(tokens[at + 1], lineno, "y coordinate"),
        )

    def on_board(c: Cell) -> bool:
        return 0 <= c[0] < width and 0 <= c[1] < height

    walls: set[frozenset[Cell]] = set()
    arrows: dict[Cell, str] = {}
    arrow_order: list[Cell] = []
    exit_cell: Cell | None = None
    exit_dirs: set[str] = set()
    for lineno, tokens in rest:
        kind = tokens[0]
        if kind == "wall" and len(tokens) == 5 and tokens[4] == "outside":
            c = cell(tokens, 1, lineno)
            direction = tokens[3]
            if direction not in DIRECTIONS:
                raise ParseError(f"unknown direction {direction!r}", line=lineno)
            if not on_board(c):
                raise ParseError(f"cell {c} is off the board", line=lineno)
            other = _neighbor(c, direction)
            if on_board(other):
                raise ParseError(
                    f"wall {c} {direction} is interior, not outside", line=lineno
                )
            walls.add(frozenset((c, other)))
        elif kind == "wall":
            if len(tokens) != 5:
                raise ParseError(
                    "wall needs 'wall x1 y1 x2 y2' or 'wall x y <dir> outside'",
                    line=lineno,
                )
            c1 = cell(tokens, 1, lineno)
            c2 = cell(tokens, 3, lineno)
            if not on_board(c1) or not on_board(c2):
                raise ParseError(f"wall cells {c1} and {c2} must be on the board", line=lineno)
            if abs(c1[0] - c2[0]) + abs(c1[1] - c2[1]) != 1:
                raise ParseError(
                    f"wall cells {c1} and {c2} are not orthogonally adjacent", line=lineno
                )
            walls.add(frozenset((c1, c2)))
        elif kind == "arrow":
            if len(tokens) != 4:
                raise ParseError("arrow needs 'arrow x y <dir>'", line=lineno)
            c = cell(tokens, 1, lineno)
            direction = tokens[3]
            if direction not in DIRECTIONS:
                raise ParseError(f"unknown direction {direction!r}", line=lineno)
            if not on_board(c):
                raise ParseError(f"arrow cell {c} is off the board", line=lineno)
            if c in arrows and arrows[c] != direction:
                raise ParseError(f"conflicting arrow for cell {c}", line=lineno)
            if c not in arrows:
                arrows[c] = direction
                arrow_order.append(c)
        elif kind == "exit":
            if len(tokens) != 4:
                raise ParseError("exit needs 'exit x y <dir>'", line=lineno)
            c = cell(tokens, 1, lineno)
            direction = tokens[3]
            if direction not in DIRECTIONS:
                raise ParseError(f"unknown direction {direction!r}", line=lineno)
            if not on_board(c):
                raise ParseError(f"exit cell {c} is off the board", line=lineno)
            if on_board(_neighbor(c, direction)):
                raise ParseError(
                    f"exit {c} {direction} must open through the outer boundary", line=lineno
                )
            if exit_cell is not None and exit_cell != c:
                raise ParseError(
                    f"only one exit cell is allowed (already have {exit_cell})", line=lineno
                )
            exit_cell = c
            exit_dirs.add(direction)
        else:
            raise ParseError(f"unknown board item {kind!r}", line=lineno, column=1)
    if exit_cell is not None:
        for direction in exit_dirs:
            if frozenset((exit_cell, _neighbor(exit_cell, direction))) in walls:
                raise ParseError(
                    f"exit {exit_cell} {direction} is blocked by a wall"
                )
    return GridBoard(
        width=width,
        height=height,
        walls=frozenset(walls),
        arrows=tuple((c, arrows[c]) for c in arrow_order),
        exit_cell=exit_cell,
        exit_dirs=frozenset(exit_dirs),
    )


def _parse_track(head_line: int, head: list[str], rest: list[tuple[int, list[str]]]) -> TrackBoard:
    if len(head) != 2 or not head[1].startswith("cells="):
        raise ParseError("track header needs 'track cells=<n>'", line=head_line)
    cells = _int_token(head[1][len("cells="):], head_line, "cell count")
    if cells < 1:
        raise ParseError("track needs at least one cell", line=head_line)
    counts = [0] * cells
    for lineno, tokens in rest:
        if tokens[0] != "arrows":
            raise ParseError(f"unknown board item {tokens[0]!r}", line=lineno, column=1)
        if len(tokens) < 2:
            raise ParseError("arrows needs at least one <i>=<k> entry", line=lineno)
        for item in tokens[1:]:
            if "=" not in item:
                raise ParseError(f"arrows entry {item!r} is not <i>=<k>", line=lineno)
            left, right = item.split("=", 1)
            i = _int_token(left, lineno, "cell index")
            k = _int_token(right, lineno, "arrow count")
            if not 0 <= i < cells:
                raise ParseError(f"cell index {i} out of range 0..{cells - 1}", line=lineno)
            if not 0 <= k < cells:
                raise ParseError(
                    f"arrow count {k} out of range 0..{cells - 1}", line=lineno
                )
            counts[i] = k
    return TrackBoard(cells=cells, arrow_count=tuple(counts))


def serialize_board(board: Board) -> str:
    """Canonical DSL text for a board (parses back to an equal board)."""
    if isinstance(board, TrackBoard):
        out = [f"track cells={board.cells}"]
        for i, k in enumerate(board.arrow_count):
            if k:
                out.append(f"arrows {i}={k}")
        return "\n".join(out) + "\n"
    out = [f"grid {board.width} {board.height}"]
    for cell, direction in board.arrows:
        out.append(f"arrow {cell[0]} {cell[1]} {direction}")
    interior = []
    boundary = []
    for wall in board.walls:
        a, b = sorted(wall)
        if board.on_board(a) and board.on_board(b):
            interior.append(f"wall {a[0]} {a[1]} {b[0]} {b[1]}")
        else:
            inside = a if board.on_board(a) else b
            outside = b if board.on_board(a) else a
            direction = next(
                d for d in DIRECTIONS if _neighbor(inside, d) == outside
            )
            boundary.append(f"wall {inside[0]} {inside[1]} {direction} outside")
    out.extend(sorted(interior))
    out.extend(sorted(boundary))
    if board.exit_cell is not None:
        for direction in sorted(board.exit_dirs):
            out.append(f"exit {board.exit_cell[0]} {board.exit_cell[1]} {direction}")
    return "\n".join(out) + "\n"


def compile_grid(board: GridBoard, name: str | None = None) -> Dfa:
    """Compile a grid to a complete DFA over ``e n s w``.

    State ``y * width + x`` is cell ``(x, y)``; the sink, when an exit
    exists, is the last state.  For letter ``d`` at a cell: an exit
    opening toward ``d`` leads to the sink; an unwalled edge moves to the
    neighbor; a walled edge with an arrow attempts the arrow's direction
    (one redirect); a walled edge without an arrow, or a walled redirect,
    attempts the inverse of the direction just tried; if that is walled
    too, the token stays put.
    """
    width, height = board.width, board.height
    sink = board.sink_index

    def is_exit(cell: Cell, direction: str) -> bool:
        return (
            board.exit_cell == cell
            and direction in board.exit_dirs
            and frozenset((cell, _neighbor(cell, direction))) not in board.walls
        )

    def blocked(cell: Cell, direction: str) -> bool:
        other = _neighbor(cell, direction)
        if frozenset((cell, other)) in board.walls:
            return True
        if not board.on_board(other):
            return not is_exit(cell, direction)
        return False

    def attempt(cell: Cell, direction: str) -> int | None:
        """Target index if moving toward ``direction`` succeeds, else None."""
        if is_exit(cell, direction):
            assert sink is not None
            return sink
        if blocked(cell, direction):
            return None
        other = _neighbor(cell, direction)
        return board.cell_index(*other)

    def resolve(cell: Cell, direction: str) -> int:
        target = attempt(cell, direction)
        if target is not None:
            return target
        arrow = board.arrow_at(cell)
        tried = direction
        if arrow is not None:
            target = attempt(cell, arrow)
            if target is not None:
                return target
            tried = arrow
        target = attempt(cell, _INVERSE[tried])
        if target is not None:
            return target
        return board.cell_index(*cell)

    n = width * height + (1 if sink is not None else 0)
    rows = []
    for y in range(height):
        for x in range(width):
            rows.append(tuple(resolve((x, y), d) for d in DIRECTIONS))
    if sink is not None:
        rows.append(tuple(sink for _ in DIRECTIONS))
    return Dfa(n=n, alphabet=DIRECTIONS, delta=tuple(rows), name=name or "grid")


def compile_track(board: TrackBoard, name: str | None = None) -> Dfa:
    """Compile a track to a DFA over ``a b``: ``b`` steps one cell, ``a``
    steps by the cell's arrow count (a fixed point on arrow-free cells)."""
    cells = board.cells
    rows = tuple(
        ((i + board.arrow_count[i]) % cells, (i + 1) % cells) for i in range(cells)
    )
    return Dfa(n=cells, alphabet=("a", "b"), delta=rows, name=name or "track")


def compile_board(board: Board, name: str | None = None) -> Dfa:
    if isinstance(board, TrackBoard):
        return compile_track(board, name)
    return compile_grid(board, name)


def board_layout(board: Board) -> dict:
    """JSON-ready layout metadata for rendering clients."""
    if isinstance(board, TrackBoard):
        return {
            "kind": "track",
            "cells": board.cells,
            "arrow_count": list(board.arrow_count),
        }
    return {
        "kind": "grid",
        "width": board.width,
        "height": board.height,
        "walls": sorted(sorted(map(list, wall)) for wall in board.walls),
        "arrows": [[list(cell), direction] for cell, direction in board.arrows],
        "exit_cell": list(board.exit_cell) if board.exit_cell else None,
        "exit_dirs": sorted(board.exit_dirs),
        "sink_index": board.sink_index,
    }


def looks_like_board(text: str) -> bool:
    """Heuristic dispatch between board DSL and DFA text."""
    for raw in text.splitlines():
        cut = raw.find("#")
        line = (raw if cut < 0 else raw[:cut]).strip()
        if line:
            return line.startswith("grid") or line.startswith("track")
    return False


def fig1_grid_board() -> GridBoard:
    """The packaged seven-by-five demonstration board."""
    text = resources.files("syncgames.data").joinpath("fig1-left.board").read_text()
    board = parse_board(text)
    assert isinstance(board, GridBoard)
    return board
