"""Built-in automata, generated families and the duplication construction."""

from __future__ import annotations

import pytest

import syncgames as sg
from syncgames.monoid import generators_commute

from conftest import sample_pool


# ---------------------------------------------------------------------------
# Built-in tables (frozen)


def test_builtin_tables_are_frozen():
    assert sg.builtin("intro_example").delta == ((0, 0), (0, 2), (2, 1))
    assert sg.builtin("b2").delta == ((0, 0), (2, 0), (0, 1))
    assert sg.builtin("b2_prime").delta == ((0, 0, 0), (2, 0, 1), (0, 1, 2))
    assert sg.builtin("e_automaton").delta == (
        (0, 0, 0),
        (2, 1, 1),
        (0, 3, 4),
        (5, 3, 0),
        (5, 0, 4),
        (5, 0, 0),
    )
    assert sg.builtin("f_automaton").delta == ((1, 1, 0), (1, 2, 1), (2, 0, 1))


def test_builtin_alphabets():
    assert sg.builtin("b2").alphabet == ("a", "b")
    assert sg.builtin("b2_prime").alphabet == ("a", "b", "c")
    assert sg.builtin("e_automaton").alphabet == ("a", "b", "c")


def test_builtin_aliases_and_unknown():
    assert sg.builtin("intro").delta == sg.builtin("intro_example").delta
    assert sg.builtin("e").delta == sg.builtin("e_automaton").delta
    assert sg.builtin("f").delta == sg.builtin("f_automaton").delta
    with pytest.raises(KeyError):
        sg.builtin("nope")


def test_b2_prime_is_b2_plus_identity_letter(b2, b2_prime):
    extended = tuple(row + (q,) for q, row in enumerate(b2.delta))
    assert b2_prime.delta == extended
    assert b2_prime.alphabet == b2.alphabet + ("c",)


# ---------------------------------------------------------------------------
# The slow-synchronizing family


def test_cerny_structure():
    dfa = sg.cerny(4)
    assert dfa.n == 4 and dfa.alphabet == ("a", "b")
    # a moves only state 0, b is the cycle
    assert tuple(dfa.delta[q][0] for q in range(4)) == (1, 1, 2, 3)
    assert tuple(dfa.delta[q][1] for q in range(4)) == (1, 2, 3, 0)


def test_cerny_synchronizes_slowly():
    for n in (3, 4, 5, 6):
        dfa = sg.cerny(n)
        assert sg.is_synchronizing(dfa)
        assert len(sg.shortest_reset_word(dfa, mode="exact")) == (n - 1) ** 2


def test_cerny_rejects_tiny_n():
    with pytest.raises(ValueError):
        sg.cerny(1)


# ---------------------------------------------------------------------------
# Duplication


def test_duplication_frozen_example(b2):
    d = sg.duplication(b2, 0, "b")
    assert d.n == 6
    assert d.alphabet == b2.alphabet
    assert d.delta == ((1, 1), (1, 0), (5, 1), (1, 2), (1, 3), (1, 4))


def test_duplication_contract(b2):
    d = sg.duplication(b2, 0, "b")
    b = b2.letter_index("b")
    for q in range(b2.n):
        lower = sg.duplication_state(q, 0)
        upper = sg.duplication_state(q, 1)
        for a in range(b2.k):
            # every letter lifts the base move into the marked layer
            assert d.delta[lower][a] == sg.duplication_state(b2.delta[q][a], 1)
            if a == b:
                # the distinguished letter clears the mark in place
                assert d.delta[upper][a] == lower
            else:
                # any other letter resets a marked token to the anchor
                assert d.delta[upper][a] == sg.duplication_state(0, 1)


def test_duplication_accepts_letter_index(b2):
    assert sg.duplication(b2, 0, 1).delta == sg.duplication(b2, 0, "b").delta


def test_duplication_rejects_bad_arguments(b2):
    with pytest.raises(ValueError):
        sg.duplication(b2, 5, "b")  # anchor out of range
    with pytest.raises(ValueError):
        sg.duplication(b2, 0, "z")  # unknown letter


def test_duplication_state_mapping():
    assert sg.duplication_state(0, 0) == 0
    assert sg.duplication_state(0, 1) == 1
    assert sg.duplication_state(2, 1) == 5


# ---------------------------------------------------------------------------
# Random families


def test_random_family_is_deterministic():
    a = sg.random_family("arbitrary", 5, 2, seed=3)
    b = sg.random_family("arbitrary", 5, 2, seed=3)
    assert a.delta == b.delta
    assert any(
        sg.random_family("arbitrary", 5, 2, seed=s).delta != a.delta for s in (4, 5, 6)
    )


def test_random_family_respects_shape():
    dfa = sg.random_family("arbitrary", 7, 3, seed=0)
    assert dfa.n == 7 and dfa.k == 3
    assert all(0 <= dfa.delta[q][a] < 7 for q in range(7) for a in range(3))


def test_weakly_acyclic_family_property():
    for i in range(30):
        dfa = sg.random_family("weakly_acyclic", 2 + i % 6, 1 + i % 3, seed=i)
        assert sg.is_weakly_acyclic(dfa)


def test_commutative_family_property():
    for i in range(30):
        dfa = sg.random_family("commutative", 2 + i % 6, 1 + i % 3, seed=i)
        assert generators_commute(dfa)


def test_synchronizing_flag():
    for kind in ("weakly_acyclic", "commutative", "arbitrary"):
        for i in range(10):
            dfa = sg.random_family(kind, 3 + i % 4, 2, seed=i, synchronizing=True)
            assert sg.is_synchronizing(dfa)


def test_random_family_rejects_bad_arguments():
    with pytest.raises(ValueError):
        sg.random_family("nope", 3, 2, seed=0)
    with pytest.raises(ValueError):
        sg.random_family("arbitrary", 0, 2, seed=0)
    with pytest.raises(ValueError):
        sg.random_family("arbitrary", 3, 0, seed=0)


def test_sample_pool_helper_is_deterministic():
    first = [d.delta for d in sample_pool(5)]
    second = [d.delta for d in sample_pool(5)]
    assert first == second
