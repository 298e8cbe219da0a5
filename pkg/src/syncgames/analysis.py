"""One-call structural analysis of an automaton.

Bundles the structural classifiers, the two game solutions, the
uniform-strategy search and the transition-monoid summary into a single
JSON-ready report shared by the CLI and the HTTP service.  Sections whose
computation would exceed an explicit cap are reported as unavailable with
the reason, never silently dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import (
    Dfa,
    EXACT_SEARCH_BOUND,
    is_definite,
    is_synchronizing,
    is_weakly_acyclic,
    shortest_reset_word,
)
from .errors import CapExceeded
from .games import RULES, TOKEN_CAP_STATES, Rule, is_a_automaton, solve_token_game
from .monoid import MONOID_CAP, enumerate_monoid, generators_commute, monoid_report
from .uniform import CONFIG_CAP, decide_uws

ANALYSIS_SCHEMA = "syncgames.analysis/1"
UNAVAILABLE = "unavailable"


@dataclass(frozen=True)
class AnalysisOptions:
    """Caps for the expensive sections of a report."""

    exact_bound: int = EXACT_SEARCH_BOUND
    token_cap_states: int = TOKEN_CAP_STATES
    config_cap: int = CONFIG_CAP
    monoid_cap: int = MONOID_CAP


def _reset_section(dfa: Dfa, synchronizing: bool, opt: AnalysisOptions) -> dict | None:
    if not synchronizing:
        return None
    try:
        word = shortest_reset_word(dfa, mode="exact", exact_bound=opt.exact_bound)
        mode = "exact"
    except CapExceeded:
        word = shortest_reset_word(dfa, mode="greedy")
        mode = "greedy"
    assert word is not None
    return {"word": dfa.word_to_str(word), "length": len(word), "mode": mode}


def _game_section(dfa: Dfa, rule: Rule, opt: AnalysisOptions) -> dict:
    section: dict = {"a_automaton": is_a_automaton(dfa, rule)}
    try:
        solution = solve_token_game(dfa, rule=rule, cap_states=opt.token_cap_states)
    except CapExceeded as exc:
        section["token"] = {UNAVAILABLE: str(exc)}
        return section
    best = solution.best_move()
    section["token"] = {
        "alice_wins": solution.alice_wins(),
        "value": solution.value,
        "best_move": None if best is None else dfa.alphabet[best],
    }
    return section


def _uniform_section(dfa: Dfa, rule: Rule, opt: AnalysisOptions) -> dict:
    try:
        report = decide_uws(dfa, rule=rule, config_cap=opt.config_cap)
    except CapExceeded as exc:
        return {UNAVAILABLE: str(exc)}
    return {
        "exists": report.exists,
        "word": None if report.word is None else dfa.word_to_str(report.word),
        "length": report.length,
        "explored": report.explored,
        "bound": str(report.bound),
    }


def _monoid_section(dfa: Dfa, opt: AnalysisOptions) -> dict:
    try:
        monoid = enumerate_monoid(dfa, cap=opt.monoid_cap)
    except CapExceeded as exc:
        return {UNAVAILABLE: str(exc)}
    return monoid_report(monoid)


def analyze(dfa: Dfa, options: AnalysisOptions | None = None) -> dict:
    """Full report for one automaton; every container is deterministic."""
    opt = options or AnalysisOptions()
    definite, degree = is_definite(dfa)
    synchronizing = is_synchronizing(dfa)
    return {
        "schema": ANALYSIS_SCHEMA,
        "automaton": {
            "name": dfa.name,
            "states": dfa.n,
            "alphabet": list(dfa.alphabet),
        },
        "classifiers": {
            "weakly_acyclic": is_weakly_acyclic(dfa),
            "definite": definite,
            "definite_degree": degree,
            "commutative": generators_commute(dfa),
        },
        "synchronizing": synchronizing,
        "reset_word": _reset_section(dfa, synchronizing, opt),
        "games": {rule: _game_section(dfa, rule, opt) for rule in RULES},
        "uniform": {rule: _uniform_section(dfa, rule, opt) for rule in RULES},
        "monoid": _monoid_section(dfa, opt),
    }


def render_json(obj: object) -> str:
    """Canonical JSON text: sorted keys, two-space indent, one trailing
    newline.  Byte-identical across runs for equal inputs."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
