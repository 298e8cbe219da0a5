"""Uniform winning strategies: verification, search, construction, certificates."""

from __future__ import annotations

import itertools

import pytest

import syncgames as sg
from syncgames.errors import CapExceeded, NotInDS, NotSynchronizing
from syncgames.uniform import (
    METHOD_CONFIG_BFS,
    METHOD_THEOREM_DS,
    canonical_config,
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

from conftest import sample_pool
from oracles import naive_apply, oracle_verify_uws


# ---------------------------------------------------------------------------
# The double-exponential budget


def test_strategy_bound_frozen_values():
    assert strategy_bound(1) == 0
    assert strategy_bound(2) == 4
    assert strategy_bound(3) == 120
    assert strategy_bound(6) == 9223372036854775744


def test_strategy_bound_repr():
    assert strategy_bound_repr(3) == 120
    assert strategy_bound_repr(16) == strategy_bound(16)
    assert strategy_bound_repr(20) == "2^(2^20-1)-2^20"


# ---------------------------------------------------------------------------
# Verification


def test_b2_uniform_words(b2):
    assert verify_uniform_strategy(b2, b2.word_from_str("ab"), "normal")
    assert verify_uniform_strategy(b2, b2.word_from_str("ba"), "normal")
    # the shortest reset word is not a uniform strategy
    assert sg.shortest_reset_word(b2) == b2.word_from_str("aa")
    assert not verify_uniform_strategy(b2, b2.word_from_str("aa"), "normal")
    # no word at all works under the modified rule
    assert not verify_uniform_strategy(b2, b2.word_from_str("ab"), "modified")


def test_e_uniform_words(e_automaton):
    e = e_automaton
    assert verify_uniform_strategy(e, e.word_from_str("abc"), "normal")
    assert verify_uniform_strategy(e, e.word_from_str("aab"), "normal")
    assert verify_uniform_strategy(e, e.word_from_str("aab"), "modified")
    for word in itertools.product(range(3), repeat=2):
        assert not verify_uniform_strategy(e, word, "normal")


def test_verification_matches_reply_enumeration_oracle():
    for dfa in sample_pool(10, max_n=4, max_k=2, base_seed=3):
        for rule in ("normal", "modified"):
            for length in range(0, 4):
                for word in itertools.product(range(dfa.k), repeat=length):
                    assert verify_uniform_strategy(dfa, word, rule) == oracle_verify_uws(
                        dfa, word, rule
                    ), (dfa.name, rule, word)


def test_uniform_word_survives_extension(e_automaton):
    base = e_automaton.word_from_str("aab")
    for suffix in [(0,), (1, 2), (2, 2, 0)]:
        assert verify_uniform_strategy(e_automaton, base + suffix, "normal")
        assert verify_uniform_strategy(e_automaton, base + suffix, "modified")


def test_verify_with_trace_frozen(e_automaton):
    ok, counts = verify_with_trace(e_automaton, e_automaton.word_from_str("abc"), "normal")
    assert ok and counts == [3, 2, 0]
    ok, counts = verify_with_trace(e_automaton, e_automaton.word_from_str("aab"), "normal")
    assert ok and counts == [3, 1, 0]
    ok, counts = verify_with_trace(e_automaton, e_automaton.word_from_str("ab"), "normal")
    assert not ok and counts[-1] > 0


def test_refuting_replies_refute(e_automaton):
    for word_str in ("ab", "aa", "bc"):
        word = e_automaton.word_from_str(word_str)
        replies = refuting_replies(e_automaton, word, "normal")
        assert replies is not None and len(replies) == len(word)
        tokens = frozenset(range(e_automaton.n))
        for letter, reply in zip(word, replies):
            tokens = naive_apply(e_automaton, tokens, (letter,) + tuple(reply))
        assert len(tokens) >= 2
    assert refuting_replies(e_automaton, e_automaton.word_from_str("aab"), "normal") is None


def test_refuting_replies_modified(b2):
    word = b2.word_from_str("ab")  # works under normal, fails under modified
    replies = refuting_replies(b2, word, "modified")
    assert replies is not None
    tokens = frozenset(range(b2.n))
    for letter, reply in zip(word, replies):
        tokens = naive_apply(b2, tokens, (letter,) + tuple(reply))
    assert len(tokens) >= 2


# ---------------------------------------------------------------------------
# Search


def test_decide_frozen_values(b2, b2_prime, e_automaton, f_automaton, intro):
    report = decide_uws(b2, rule="normal")
    assert report.exists and b2.word_to_str(report.word) == "ab"
    assert report.explored == 4

    report = decide_uws(b2, rule="modified")
    assert not report.exists and report.explored == 2

    for rule in ("normal", "modified"):
        report = decide_uws(b2_prime, rule=rule)
        assert not report.exists
        assert report.explored == 2  # well under the budget of 120
        assert report.bound == 120

    report = decide_uws(e_automaton, rule="normal")
    assert e_automaton.word_to_str(report.word) == "aab"
    assert report.length == 3
    assert report.explored == 10

    report = decide_uws(e_automaton, rule="modified")
    assert e_automaton.word_to_str(report.word) == "aab"
    assert report.explored == 9

    # adaptive play wins on F, yet no uniform word exists even normally
    report = decide_uws(f_automaton, rule="normal")
    assert not report.exists and report.explored == 4

    report = decide_uws(f_automaton, rule="modified")
    assert not report.exists and report.explored == 2

    for rule in ("normal", "modified"):
        assert not decide_uws(intro, rule=rule).exists


def test_decide_word_is_shortest_and_verified():
    for dfa in sample_pool(12, max_n=4, max_k=2, base_seed=13):
        report = decide_uws(dfa, rule="normal")
        if not report.exists:
            continue
        assert oracle_verify_uws(dfa, report.word, "normal")
        for length in range(len(report.word)):
            for word in itertools.product(range(dfa.k), repeat=length):
                assert not oracle_verify_uws(dfa, word, "normal")


def test_decide_singleton_initial(e_automaton):
    report = decide_uws(e_automaton, rule="normal", initial=(1 << 3,))
    assert report.exists and report.word == ()


def test_decide_honours_config_cap():
    with pytest.raises(CapExceeded) as err:
        decide_uws(sg.cerny(4), rule="normal", config_cap=2)
    assert err.value.kind == "config"


def test_decide_reduction_invariance():
    for dfa in sample_pool(20, max_n=4, base_seed=19):
        for rule in ("normal", "modified"):
            reduced = decide_uws(dfa, rule=rule, reduce=True)
            plain = decide_uws(dfa, rule=rule, reduce=False, config_cap=500_000)
            assert reduced.exists == plain.exists
            if reduced.exists:
                assert len(reduced.word) <= len(plain.word)
                assert reduced.explored <= plain.explored


def test_pair_uniform_strategy(e_automaton):
    word = pair_uniform_strategy(e_automaton, (2, 3), "normal")
    assert word is not None
    tokens = {frozenset((2, 3))}
    for a in word:
        tokens = {
            naive_apply(e_automaton, naive_apply(e_automaton, t, (a,)), (x,))
            for t in tokens
            for x in range(e_automaton.k)
        }
    assert all(len(t) == 1 for t in tokens)
    with pytest.raises(ValueError):
        pair_uniform_strategy(e_automaton, (2, 2), "normal")


def test_canonical_config_drops_singletons_and_subsets():
    assert canonical_config([0b1, 0b11, 0b111]) == (0b111,)
    assert canonical_config([0b11, 0b11]) == (0b11,)
    assert canonical_config([0b1]) == ()
    assert canonical_config([0b101, 0b110]) == (0b101, 0b110)


# ---------------------------------------------------------------------------
# The constructed strategy for monoids in DS


def test_ds_strategy_on_e(e_automaton):
    word = ds_uniform_strategy(e_automaton)
    assert e_automaton.word_to_str(word) == "aabaabaab"
    assert verify_uniform_strategy(e_automaton, word, "normal")
    assert verify_uniform_strategy(e_automaton, word, "modified")


def test_ds_strategy_raises_outside_ds(b2):
    with pytest.raises(NotInDS):
        ds_uniform_strategy(b2)
    with pytest.raises(NotInDS):
        ds_uniform_strategy(sg.cerny(3))


def test_ds_strategy_requires_synchronizing():
    flip = sg.Dfa(n=2, alphabet=("a",), delta=((1,), (0,)))
    with pytest.raises(NotSynchronizing):
        ds_uniform_strategy(flip)


def test_ds_strategy_on_commutative_pool():
    for i in range(20):
        dfa = sg.random_family("commutative", 2 + i % 5, 1 + i % 3, seed=200 + i,
                               synchronizing=True)
        word = ds_uniform_strategy(dfa)
        assert verify_uniform_strategy(dfa, word, "normal")
        assert verify_uniform_strategy(dfa, word, "modified")


def test_capped_monoid_falls_back_to_reset_power(e_automaton):
    word = ds_uniform_strategy(e_automaton, monoid_cap=2, fallback=True)
    assert verify_uniform_strategy(e_automaton, word, "normal")
    assert verify_uniform_strategy(e_automaton, word, "modified")
    with pytest.raises(CapExceeded) as err:
        ds_uniform_strategy(e_automaton, monoid_cap=2, fallback=False)
    assert err.value.kind == "monoid"


def test_fallback_gives_up_when_no_power_works(b2):
    # no uniform word exists under the modified rule, so no reset-word power
    # can pass the two-rule verification
    with pytest.raises(CapExceeded) as err:
        ds_uniform_strategy(b2, monoid_cap=2, fallback=True, fallback_limit=5)
    assert err.value.kind == "fallback"


# ---------------------------------------------------------------------------
# Certificates


def test_certificate_round_trip(e_automaton):
    word = e_automaton.word_from_str("abc")
    certificate = strategy_certificate(e_automaton, word, "normal", METHOD_CONFIG_BFS)
    assert certificate["schema"] == "syncgames.certificate/1"
    assert certificate["word"] == "abc"
    assert certificate["verification"] == [3, 2, 0]
    ok, reason = check_certificate(e_automaton, certificate)
    assert ok and reason == "certificate verifies"


def test_certificate_detects_word_tampering(e_automaton):
    word = e_automaton.word_from_str("abc")
    certificate = strategy_certificate(e_automaton, word, "normal", METHOD_CONFIG_BFS)
    tampered = dict(certificate, word="aac")
    # "aac" happens to be a uniform word too, but its branch trace differs
    assert verify_uniform_strategy(e_automaton, e_automaton.word_from_str("aac"), "normal")
    ok, reason = check_certificate(e_automaton, tampered)
    assert not ok and "trace" in reason


def test_certificate_detects_bad_word(e_automaton):
    word = e_automaton.word_from_str("abc")
    certificate = strategy_certificate(e_automaton, word, "normal", METHOD_CONFIG_BFS)
    ok, reason = check_certificate(e_automaton, dict(certificate, word="ab"))
    assert not ok and "fails" in reason


def test_certificate_rejects_malformed(e_automaton):
    word = e_automaton.word_from_str("abc")
    certificate = strategy_certificate(e_automaton, word, "normal", METHOD_CONFIG_BFS)
    for broken in (
        {k: v for k, v in certificate.items() if k != "word"},
        dict(certificate, method="guesswork"),
        dict(certificate, rule="sideways"),
        dict(certificate, word="axc"),
    ):
        ok, _ = check_certificate(e_automaton, broken)
        assert not ok


def test_certificate_refuses_non_strategies(e_automaton):
    with pytest.raises(ValueError):
        strategy_certificate(
            e_automaton, e_automaton.word_from_str("ab"), "normal", METHOD_CONFIG_BFS
        )
    with pytest.raises(ValueError):
        strategy_certificate(
            e_automaton, e_automaton.word_from_str("abc"), "normal", "guesswork"
        )


def test_theorem_certificate(e_automaton):
    word = ds_uniform_strategy(e_automaton)
    for rule in ("normal", "modified"):
        certificate = strategy_certificate(e_automaton, word, rule, METHOD_THEOREM_DS)
        ok, _ = check_certificate(e_automaton, certificate)
        assert ok
