import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tailsync.automata import AutomatonError, accepts, empty_acceptor, from_words
from tailsync.factors import (
    analyze_missing_factors,
    applicability,
    factor_count,
    factor_recognizer,
    find_missing_factor,
    theorem1_bound,
)

from conftest import AB, all_words, generators, identity, w


def factors_of(words):
    return {u[i:j] for u in words for i in range(len(u) + 1) for j in range(i, len(u) + 1)}


@pytest.mark.parametrize(
    "texts, expected",
    [
        (["ab"], ["", "a", "b", "ab"]),
        (["ab", "ba"], ["", "a", "b", "ab", "ba"]),
    ],
)
def test_factor_recognizer_examples(texts, expected):
    F = factor_recognizer(generators(*texts))
    assert {u for u in all_words(2, 4) if accepts(F, u)} == {w(t) for t in expected}


def test_factor_recognizer_of_empty_language():
    F = factor_recognizer(empty_acceptor(AB))
    assert not any(accepts(F, u) for u in all_words(2, 3))


def test_find_missing_factor_examples():
    assert find_missing_factor(generators("aa"), 4) == (1, w("b"))
    assert find_missing_factor(generators("ab", "ba"), 4) == (2, w("aa"))
    assert find_missing_factor(generators("aa", "ab", "ba", "bb"), 2) is None
    assert find_missing_factor(empty_acceptor(AB), 3) == (1, w("a"))
    with pytest.raises(AutomatonError):
        find_missing_factor(generators("aa"), 0)


word_lists = st.lists(st.text(alphabet="ab", max_size=6), min_size=1, max_size=5)


@settings(max_examples=100, deadline=None)
@given(word_lists)
def test_missing_factor_is_minimal_and_least(texts):
    words = {w(t) for t in texts}
    M = from_words(AB, words)
    facts = factors_of(words)
    found = find_missing_factor(M, 5)
    brute = next(
        ((len(u), u) for u in all_words(2, 5) if u and u not in facts),
        None,
    )
    assert found == brute
    F = factor_recognizer(M)
    for ell in range(6):
        assert factor_count(M, ell) == sum(1 for u in facts if len(u) == ell)
    if found is not None:
        ell, witness = found
        assert not accepts(F, witness)
        # monotone: every extension of a missing factor is missing
        assert not accepts(F, witness + (0,)) and not accepts(F, (1,) + witness)
        for u in all_words(2, ell):
            if len(u) == ell and u < witness:
                assert accepts(F, u)


def test_theorem1_bound():
    assert theorem1_bound(4, 1) == 8
    assert theorem1_bound(1, 1) == 2
    assert theorem1_bound(10, 3) == 51
    with pytest.raises(AutomatonError):
        theorem1_bound(0, 1)


def test_applicability_examples():
    a = applicability(4, 9, 1)
    assert a.cerny_applicable
    b = applicability(4, 8, 2)
    assert b.quadratic_applicable and b.quadratic_bound == Fraction(49, 4)
    c = applicability(3, 2, 2)
    assert not c.cerny_applicable and not c.quadratic_applicable


def test_applicability_thresholds_are_exact():
    # n = 3: (9 - 9 + 2)/4 = 1/2, so ell = 1 is just outside
    assert not applicability(3, 100, 1).cerny_applicable
    # norm 15: 15/4 + 1/16 = 61/16 < 4
    assert not applicability(10, 15, 4).quadratic_applicable
    # norm 16: 4 + 1/16 >= 4
    assert applicability(10, 16, 4).quadratic_applicable


def test_analyze_cerny(C4):
    report = analyze_missing_factors(C4, 4)
    assert report.n == 4 and report.ideal_norm == 9 and report.shortest_reset_length == 9
    if report.ell_star is not None:
        assert report.theorem1_holds
    else:
        assert report.theorem1_holds is None and report.cerny_applicable is None


def test_analyze_single_state():
    report = analyze_missing_factors(identity(1), 3)
    assert report.ell_star == 1 and report.witness == w("a")
    assert report.theorem1_bound == 2 and report.shortest_reset_length == 0
    assert report.theorem1_holds


def test_analyze_rejects_non_synchronizing():
    with pytest.raises(AutomatonError):
        analyze_missing_factors(identity(2), 3)


def test_missing_factor_bound_on_random_automata():
    from conftest import random_synchronizing

    rng = random.Random(99)
    found = 0
    for _ in range(150):
        A = random_synchronizing(rng, 5, min_n=2)
        report = analyze_missing_factors(A, 4)
        if report.ell_star is not None:
            found += 1
            assert report.theorem1_holds, A
    assert found > 0
