"""Command-line interface.

Subcommands::

    analyze   full structural report for an automaton
    solve     value and best move of the token game
    uniform   search or construct a uniform winning strategy
    gen       print a generated automaton
    board     render or compile a board description
    play      play a game on stdin/stdout against the engine
    serve     run the HTTP service
    verify    re-check a strategy certificate

Exit codes: 0 success, 1 negative verdict (``--fail-on-no`` or an invalid
certificate or an aborted game), 2 usage or input errors.

All ``--json`` output is canonical: sorted keys, two-space indent, one
trailing newline, byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import AnalysisOptions, analyze, render_json
from .boards import (
    Board,
    GridBoard,
    TrackBoard,
    board_layout,
    compile_board,
    parse_board,
    looks_like_board,
    serialize_board,
)
from .constructions import BUILTIN_NAMES, builtin, cerny, duplication, random_family
from .core import Dfa, parse_dfa, serialize_dfa, EXACT_SEARCH_BOUND
from .errors import GameError, SyncGamesError
from .games import (
    ALICE,
    BOB,
    RULES,
    TOKEN_CAP_STATES,
    Engine,
    GameSession,
    solve_token_game,
)
from .monoid import MONOID_CAP
from .uniform import (
    CONFIG_CAP,
    METHOD_CONFIG_BFS,
    METHOD_THEOREM_DS,
    check_certificate,
    decide_uws,
    ds_uniform_strategy,
    strategy_certificate,
)

import json


class _Failure(Exception):
    """Raised for an orderly nonzero exit: (code, message|None)."""

    def __init__(self, code: int, message: str | None = None):
        super().__init__(message or "")
        self.code = code
        self.message = message


# ---------------------------------------------------------------------------
# Input loading


def _read_source(path: str) -> tuple[str, str | None]:
    if path == "-":
        return sys.stdin.read(), None
    p = Path(path)
    try:
        return p.read_text(), p.stem
    except OSError as exc:
        raise _Failure(2, f"cannot read {path}: {exc.strerror or exc}")


def _load_dfa(args: argparse.Namespace) -> Dfa:
    if getattr(args, "builtin", None):
        try:
            return builtin(args.builtin)
        except KeyError:
            raise _Failure(2, f"unknown builtin; choose from {', '.join(BUILTIN_NAMES)}")
    if getattr(args, "path", None) is None:
        raise _Failure(2, "provide an automaton file ('-' for stdin) or --builtin NAME")
    text, stem = _read_source(args.path)
    if looks_like_board(text):
        return compile_board(parse_board(text), name=stem)
    return parse_dfa(text, name=stem)


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "path",
        nargs="?",
        help="automaton or board description file ('-' reads stdin)",
    )
    parser.add_argument(
        "--builtin",
        metavar="NAME",
        help=f"use a built-in automaton: {', '.join(BUILTIN_NAMES)}",
    )


def _parse_tokens(raw: str | None, dfa: Dfa) -> list[int] | None:
    if raw is None:
        return None
    try:
        states = [int(part) for part in raw.replace(",", " ").split()]
    except ValueError:
        raise _Failure(2, "--tokens expects state indices, e.g. --tokens 0,2,5")
    if not states or not all(0 <= q < dfa.n for q in states):
        raise _Failure(2, f"--tokens must name states in 0..{dfa.n - 1}")
    return states


# ---------------------------------------------------------------------------
# analyze


def _cmd_analyze(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args)
    options = AnalysisOptions(
        exact_bound=args.exact_bound,
        token_cap_states=args.token_cap,
        config_cap=args.config_cap,
        monoid_cap=args.monoid_cap,
    )
    report = analyze(dfa, options)
    if args.json:
        sys.stdout.write(render_json(report))
        return 0
    sys.stdout.write(_human_analysis(report))
    return 0


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _human_analysis(report: dict) -> str:
    auto = report["automaton"]
    cls = report["classifiers"]
    lines = [
        f"{auto['name'] or 'automaton'}: {auto['states']} states,"
        f" alphabet {' '.join(auto['alphabet'])}"
    ]
    degree = f" (degree {cls['definite_degree']})" if cls["definite"] else ""
    lines.append(
        "classifiers: weakly acyclic "
        + _yesno(cls["weakly_acyclic"])
        + ", definite "
        + _yesno(cls["definite"])
        + degree
        + ", commutative "
        + _yesno(cls["commutative"])
    )
    if report["reset_word"] is None:
        lines.append("synchronizing: no")
    else:
        reset = report["reset_word"]
        lines.append(
            f"synchronizing: yes, reset word \"{reset['word']}\""
            f" (length {reset['length']}, {reset['mode']})"
        )
    for rule in RULES:
        game = report["games"][rule]
        parts = [f"{rule} rule: one-letter win everywhere {_yesno(game['a_automaton'])}"]
        token = game["token"]
        if "unavailable" in token:
            parts.append(f"token game unavailable ({token['unavailable']})")
        elif token["value"] is None:
            parts.append("token game: opponent survives")
        else:
            parts.append(
                f"token game value {token['value']} (best first move {token['best_move']})"
            )
        uniform = report["uniform"][rule]
        if "unavailable" in uniform:
            parts.append(f"uniform strategy unavailable ({uniform['unavailable']})")
        elif uniform["exists"]:
            parts.append(
                f"uniform word \"{uniform['word']}\" (length {uniform['length']},"
                f" explored {uniform['explored']} of {uniform['bound']})"
            )
        else:
            parts.append(
                f"no uniform word (exhausted {uniform['explored']} configurations)"
            )
        lines.append("; ".join(parts))
    monoid = report["monoid"]
    if "unavailable" in monoid:
        lines.append(f"monoid: unavailable ({monoid['unavailable']})")
    else:
        regular = sum(1 for d in monoid["d_classes"] if d["regular"])
        line = (
            f"monoid: {monoid['size']} elements, {len(monoid['d_classes'])} D-classes"
            f" ({regular} regular), kernel size {monoid['kernel_size']},"
            f" DS {_yesno(monoid['ds'])}"
        )
        if monoid["decomposition"] is not None:
            sizes = monoid["decomposition"]["component_sizes"]
            line += f", components {'+'.join(str(s) for s in sizes)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# solve


def _cmd_solve(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args)
    tokens = _parse_tokens(args.tokens, dfa)
    solution = solve_token_game(dfa, initial=tokens, rule=args.rule, cap_states=args.token_cap)
    best = solution.best_move()
    result = {
        "rule": args.rule,
        "tokens": tokens if tokens is not None else list(range(dfa.n)),
        "alice_wins": solution.alice_wins(),
        "value": solution.value,
        "best_move": None if best is None else dfa.alphabet[best],
    }
    if args.json:
        sys.stdout.write(render_json(result))
    elif solution.alice_wins():
        sys.stdout.write(
            f"synchronizer wins in {solution.value} moves;"
            f" best first move {result['best_move']}\n"
        )
    else:
        sys.stdout.write("opponent survives forever\n")
    if args.fail_on_no and not solution.alice_wins():
        return 1
    return 0


# ---------------------------------------------------------------------------
# uniform


def _cmd_uniform(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args)
    if args.theorem:
        word = ds_uniform_strategy(dfa, monoid_cap=args.monoid_cap)
        result = {
            "rule": args.rule,
            "method": METHOD_THEOREM_DS,
            "exists": True,
            "word": dfa.word_to_str(word),
            "length": len(word),
        }
        method = METHOD_THEOREM_DS
    else:
        report = decide_uws(dfa, rule=args.rule, config_cap=args.config_cap)
        word = report.word
        result = {
            "rule": args.rule,
            "method": METHOD_CONFIG_BFS,
            "exists": report.exists,
            "word": None if word is None else dfa.word_to_str(word),
            "length": report.length,
            "explored": report.explored,
            "bound": str(report.bound),
        }
        method = METHOD_CONFIG_BFS
    if args.certificate:
        if word is None:
            raise _Failure(1, "no strategy exists, so no certificate was written")
        Path(args.certificate).write_text(
            render_json(strategy_certificate(dfa, word, args.rule, method))
        )
    if args.json:
        sys.stdout.write(render_json(result))
    elif result["exists"]:
        sys.stdout.write(f"uniform word \"{result['word']}\" (length {result['length']})\n")
    else:
        sys.stdout.write("no uniform word exists\n")
    if args.fail_on_no and not result["exists"]:
        return 1
    return 0


# ---------------------------------------------------------------------------
# gen


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.generator == "cerny":
        dfa = cerny(args.n)
    elif args.generator == "builtin":
        try:
            dfa = builtin(args.name)
        except KeyError:
            raise _Failure(2, f"unknown builtin; choose from {', '.join(BUILTIN_NAMES)}")
    elif args.generator == "random":
        dfa = random_family(
            args.kind, args.n, args.k, seed=args.seed, synchronizing=args.synchronizing
        )
    elif args.generator == "duplication":
        base = _load_dfa(args)
        dfa = duplication(base, args.initial, args.letter)
    else:  # pragma: no cover - argparse restricts choices
        raise _Failure(2, f"unknown generator {args.generator!r}")
    sys.stdout.write(serialize_dfa(dfa))
    return 0


# ---------------------------------------------------------------------------
# board


_ARROW_GLYPHS = {"e": ">", "n": "^", "s": "v", "w": "<"}


def render_grid(board: GridBoard) -> str:
    """ASCII picture: corners always drawn, walls solid, exits open and
    marked ``E``, arrows as ``> ^ v <`` inside their cell."""
    width, height = board.width, board.height

    def wall_between(a: tuple[int, int], b: tuple[int, int]) -> bool:
        return frozenset((a, b)) in board.walls

    def horizontal(y_edge: int) -> str:
        # Edge above board row y_edge-1 / below row y_edge (y grows upward).
        parts = ["+"]
        for x in range(width):
            if y_edge in (0, height):
                cell = (x, y_edge if y_edge == 0 else y_edge - 1)
                direction = "s" if y_edge == 0 else "n"
                is_exit = cell == board.exit_cell and direction in board.exit_dirs
                parts.append(" E " if is_exit else "---")
            else:
                parts.append("---" if wall_between((x, y_edge - 1), (x, y_edge)) else "   ")
            parts.append("+")
        return "".join(parts)

    def vertical(y: int) -> str:
        parts = []
        for x in range(width):
            if x == 0:
                left_exit = (x, y) == board.exit_cell and "w" in board.exit_dirs
                parts.append("E" if left_exit else "|")
            arrow = board.arrow_at((x, y))
            parts.append(f" {_ARROW_GLYPHS[arrow]} " if arrow else "   ")
            if x == width - 1:
                right_exit = (x, y) == board.exit_cell and "e" in board.exit_dirs
                parts.append("E" if right_exit else "|")
            else:
                parts.append("|" if wall_between((x, y), (x + 1, y)) else " ")
        return "".join(parts)

    lines = []
    for y in range(height - 1, -1, -1):
        lines.append(horizontal(y + 1))
        lines.append(vertical(y))
    lines.append(horizontal(0))
    return "\n".join(lines) + "\n"


def render_track(board: TrackBoard) -> str:
    arrows = ", ".join(f"{i}:+{c}" for i, c in enumerate(board.arrow_count) if c)
    return f"track with {board.cells} cells; arrows {arrows or '(none)'}\n"


def _cmd_board(args: argparse.Namespace) -> int:
    text, stem = _read_source(args.path)
    board: Board = parse_board(text)
    if args.dfa:
        sys.stdout.write(serialize_dfa(compile_board(board, name=stem)))
    elif args.layout:
        sys.stdout.write(render_json(board_layout(board)))
    elif isinstance(board, GridBoard):
        sys.stdout.write(render_grid(board))
    else:
        sys.stdout.write(render_track(board))
    return 0


# ---------------------------------------------------------------------------
# play


def _print_tokens(session: GameSession) -> None:
    states = " ".join(str(q) for q in session.token_states())
    sys.stdout.write(f"tokens: {states}\n")


def _finish_line(session: GameSession) -> str:
    if session.status == "alice_won":
        return f"synchronizer wins after {session.alice_moves} moves\n"
    return f"move cap reached after {session.alice_moves} moves; opponent survives\n"


def _cmd_play(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args)
    tokens = _parse_tokens(args.tokens, dfa)
    session = GameSession(dfa, rule=args.rule, initial=tokens)
    engine = Engine(dfa, rule=args.rule, token_cap_states=args.token_cap)
    human = {"alice": {ALICE}, "bob": {BOB}, "both": {ALICE, BOB}}[args.role]
    sys.stdout.write(
        f"{dfa.name or 'automaton'}: {dfa.n} states, alphabet {' '.join(dfa.alphabet)}\n"
    )
    sys.stdout.write(f"rule: {session.rule}; you play: {args.role}\n")
    _print_tokens(session)
    while session.status == "ongoing":
        side = session.turn
        if side in human:
            sys.stdout.write(f"move ({side})> ")
            sys.stdout.flush()
            line = sys.stdin.readline()
            if not line:
                sys.stdout.write("\ninput ended; game aborted\n")
                return 1
            raw = line.strip()
            if raw in ("quit", "resign"):
                sys.stdout.write("game aborted\n")
                return 1
            if raw == "hint":
                suggestion = engine.move(session, side)
                sys.stdout.write(f"hint: {dfa.word_to_str(suggestion)}\n")
                continue
            try:
                word = dfa.word_from_str(raw)
                session.play(side, word)
            except (ValueError, GameError) as exc:
                sys.stdout.write(f"illegal move: {exc}\n")
                continue
        else:
            word = engine.move(session, side)
            session.play(side, word)
            shown = dfa.word_to_str(word) if word else "(empty word)"
            sys.stdout.write(f"engine ({side}) plays: {shown}\n")
        _print_tokens(session)
    sys.stdout.write(_finish_line(session))
    return 0


# ---------------------------------------------------------------------------
# serve / verify


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceOptions, create_app

    options = ServiceOptions(
        analysis=AnalysisOptions(
            exact_bound=args.exact_bound,
            token_cap_states=args.token_cap,
            config_cap=args.config_cap,
            monoid_cap=args.monoid_cap,
        ),
        engine_token_cap_states=args.token_cap,
    )
    uvicorn.run(create_app(options), host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    dfa = _load_dfa(args)
    try:
        certificate = json.loads(Path(args.certificate).read_text())
    except OSError as exc:
        raise _Failure(2, f"cannot read {args.certificate}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise _Failure(2, f"certificate is not valid JSON: {exc}")
    ok, reason = check_certificate(dfa, certificate)
    if args.json:
        sys.stdout.write(render_json({"valid": ok, "reason": reason}))
    else:
        sys.stdout.write(f"{reason}\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def _add_cap_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--exact-bound", type=int, default=EXACT_SEARCH_BOUND,
                        help="largest state count for exact reset-word search")
    parser.add_argument("--token-cap", type=int, default=TOKEN_CAP_STATES,
                        help="largest state count for the full token-game solution")
    parser.add_argument("--config-cap", type=int, default=CONFIG_CAP,
                        help="largest number of configurations to explore")
    parser.add_argument("--monoid-cap", type=int, default=MONOID_CAP,
                        help="largest transition monoid to enumerate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syncgames",
        description="Synchronization games on deterministic finite automata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full structural report")
    _add_source_arguments(p)
    _add_cap_arguments(p)
    p.add_argument("--json", action="store_true", help="canonical JSON output")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("solve", help="token-game value and best move")
    _add_source_arguments(p)
    p.add_argument("--rule", choices=RULES, default="normal")
    p.add_argument("--tokens", help="initial token states, e.g. 0,2,5 (default: all)")
    p.add_argument("--token-cap", type=int, default=TOKEN_CAP_STATES)
    p.add_argument("--json", action="store_true")
    p.add_argument("--fail-on-no", action="store_true",
                   help="exit 1 when the synchronizer cannot win")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("uniform", help="uniform winning strategy")
    _add_source_arguments(p)
    p.add_argument("--rule", choices=RULES, default="normal")
    p.add_argument("--config-cap", type=int, default=CONFIG_CAP)
    p.add_argument("--monoid-cap", type=int, default=MONOID_CAP)
    p.add_argument("--theorem", action="store_true",
                   help="construct the strategy from the monoid decomposition"
                        " instead of searching")
    p.add_argument("--certificate", metavar="FILE",
                   help="write a re-checkable certificate to FILE")
    p.add_argument("--json", action="store_true")
    p.add_argument("--fail-on-no", action="store_true",
                   help="exit 1 when no uniform strategy exists")
    p.set_defaults(func=_cmd_uniform)

    p = sub.add_parser("gen", help="print a generated automaton")
    gen_sub = p.add_subparsers(dest="generator", required=True)

    g = gen_sub.add_parser("cerny", help="the classic slow-synchronizing family")
    g.add_argument("n", type=int)
    g.set_defaults(func=_cmd_gen)

    g = gen_sub.add_parser("builtin", help="a named example automaton")
    g.add_argument("name", choices=BUILTIN_NAMES)
    g.set_defaults(func=_cmd_gen)

    g = gen_sub.add_parser("random", help="a seeded random automaton")
    g.add_argument("kind", choices=("weakly_acyclic", "commutative", "arbitrary"))
    g.add_argument("n", type=int)
    g.add_argument("k", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--synchronizing", action="store_true",
                   help="retry seeds until the sample synchronizes")
    g.set_defaults(func=_cmd_gen)

    g = gen_sub.add_parser("duplication", help="two-layer duplication of a base automaton")
    _add_source_arguments(g)
    g.add_argument("--initial", type=int, default=0, metavar="STATE",
                   help="state entered after a non-distinguished second-layer letter")
    g.add_argument("--letter", required=True,
                   help="the distinguished letter of the base automaton")
    g.set_defaults(func=_cmd_gen)

    p = sub.add_parser("board", help="render or compile a board description")
    p.add_argument("path", help="board file ('-' reads stdin)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dfa", action="store_true", help="print the compiled automaton")
    group.add_argument("--layout", action="store_true", help="print layout JSON")
    group.add_argument("--render", action="store_true", help="ASCII picture (default)")
    p.set_defaults(func=_cmd_board)

    p = sub.add_parser("play", help="interactive game against the engine")
    _add_source_arguments(p)
    p.add_argument("--rule", choices=RULES, default="normal")
    p.add_argument("--role", choices=("alice", "bob", "both"), default="alice",
                   help="side(s) played by hand (default alice)")
    p.add_argument("--tokens", help="initial token states, e.g. 0,2,5 (default: all)")
    p.add_argument("--token-cap", type=int, default=TOKEN_CAP_STATES)
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    _add_cap_arguments(p)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("verify", help="re-check a strategy certificate")
    _add_source_arguments(p)
    p.add_argument("certificate", metavar="CERTIFICATE", help="certificate JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        if exc.message:
            sys.stderr.write(f"error: {exc.message}\n")
        return exc.code
    except SyncGamesError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
