"""Synchronization games on finite automata.

Exposes the DFA core, transition-monoid analyses, game solvers, uniform
winning strategies, example constructions, the board compiler, the play
service application factory and the command line entry point.
"""

from .analysis import AnalysisOptions, analyze, render_json
from .boards import (
    GridBoard,
    TrackBoard,
    board_layout,
    compile_board,
    compile_grid,
    compile_track,
    fig1_grid_board,
    parse_board,
    serialize_board,
)
from .constructions import (
    BUILTIN_NAMES,
    builtin,
    cerny,
    duplication,
    duplication_state,
    random_family,
)
from .core import (
    Dfa,
    Word,
    apply_letter_mask,
    apply_word,
    apply_word_mask,
    is_definite,
    is_synchronizing,
    is_weakly_acyclic,
    mask_from_states,
    parse_dfa,
    serialize_dfa,
    shortest_reset_word,
    states_from_mask,
)
from .errors import (
    CapExceeded,
    DecompositionError,
    GameError,
    NotInDS,
    NotSynchronizing,
    ParseError,
    SyncGamesError,
)
from .games import (
    ALICE,
    BOB,
    MODIFIED,
    NORMAL,
    Engine,
    GameSession,
    PairGameSolution,
    TokenGameSolution,
    cubic_bound,
    engine_move,
    is_a_automaton,
    solve_pair_game,
    solve_token_game,
    transcript_records,
)
from .monoid import (
    GreenClasses,
    SemilatticeDecomposition,
    Transformation,
    TransitionMonoid,
    archimedean_decomposition,
    enumerate_monoid,
    generators_commute,
    green_classes,
    is_commutative,
    is_ds,
    kernel,
    monoid_report,
    nilpotency_index,
    subsemigroup_kernel,
)
from .uniform import (
    UniformStrategyReport,
    check_certificate,
    decide_uws,
    ds_uniform_strategy,
    pair_uniform_strategy,
    refuting_replies,
    strategy_bound,
    strategy_bound_repr,
    strategy_certificate,
    verify_uniform_strategy,
    verify_with_trace,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
