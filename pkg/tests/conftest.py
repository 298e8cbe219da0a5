"""Shared fixtures and hypothesis configuration."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

import syncgames as sg

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def b2() -> sg.Dfa:
    return sg.builtin("b2")


@pytest.fixture(scope="session")
def b2_prime() -> sg.Dfa:
    return sg.builtin("b2_prime")


@pytest.fixture(scope="session")
def e_automaton() -> sg.Dfa:
    return sg.builtin("e_automaton")


@pytest.fixture(scope="session")
def f_automaton() -> sg.Dfa:
    return sg.builtin("f_automaton")


@pytest.fixture(scope="session")
def intro() -> sg.Dfa:
    return sg.builtin("intro_example")


@pytest.fixture(scope="session")
def fig1_board():
    return sg.fig1_grid_board()


@pytest.fixture(scope="session")
def fig1_dfa(fig1_board) -> sg.Dfa:
    return sg.compile_grid(fig1_board, name="fig1_left")


def sample_pool(count: int, *, kinds=("arbitrary",), max_n=6, max_k=3, base_seed=0):
    """Deterministic list of small random automata for scanning tests."""
    pool = []
    for i in range(count):
        kind = kinds[i % len(kinds)]
        n = 2 + (i % (max_n - 1))
        k = 1 + (i % max_k)
        pool.append(sg.random_family(kind, n, k, seed=base_seed + i))
    return pool
