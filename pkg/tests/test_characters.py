import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klrcell.cartan import build_cartan
from klrcell.characters import (Character, FreeAlgebraElement,
                                dimension_formula, lusztig_pairing,
                                shuffle_coefficient, shuffle_product)
from klrcell.laurent import LaurentSeries
from klrcell import modules

from oracles import count_basis

dA2 = build_cartan("A", 2)


def word_char(word):
    return Character.from_word(dA2, word)


def test_shuffle_unit():
    unit = Character.from_word(dA2, ())
    x = shuffle_product(word_char((1, 2)), word_char((2,)))
    assert shuffle_product(x, unit) == x
    assert shuffle_product(unit, x) == x


words_strategy = st.lists(st.integers(1, 2), min_size=0, max_size=3).map(tuple)


@given(words_strategy, words_strategy, words_strategy)
@settings(max_examples=60, deadline=None)
def test_shuffle_associative(u, v, w):
    a, b, c = word_char(u), word_char(v), word_char(w)
    assert shuffle_product(shuffle_product(a, b), c) == \
        shuffle_product(a, shuffle_product(b, c))


@given(words_strategy, words_strategy)
@settings(max_examples=60, deadline=None)
def test_shuffle_q1_degeneration(u, v):
    prod = shuffle_product(word_char(u), word_char(v))
    total = sum(c.evaluate(1) for c in prod.terms.values())
    assert total == math.comb(len(u) + len(v), len(u))


def test_a2_shuffles():
    assert shuffle_product(word_char((1,)), word_char((2,))).terms == {
        (1, 2): LaurentSeries.one(), (2, 1): LaurentSeries.monomial(1)}
    assert shuffle_product(word_char((2,)), word_char((1,))).terms == {
        (2, 1): LaurentSeries.one(), (1, 2): LaurentSeries.monomial(1)}


def test_shuffle_coefficient_matches_full_product():
    a = shuffle_product(word_char((1,)), word_char((2,)))
    b = word_char((2, 1))
    full = shuffle_product(a, b)
    for w in full.terms:
        assert shuffle_coefficient(dA2, a, b, w) == full.terms[w]
    assert not shuffle_coefficient(dA2, a, b, (1, 1, 2, 2))


D = 12


def _pairing_fixture():
    t21 = FreeAlgebraElement.monomial(dA2, (2, 1))
    t12 = FreeAlgebraElement.monomial(dA2, (1, 2))
    e12 = t12 - t21.scale(LaurentSeries.monomial(1))
    return t21, e12


def test_a2_pairing_example():
    t21, e12 = _pairing_fixture()
    g = LaurentSeries.geometric(2, D)
    assert lusztig_pairing(t21, t21, D) == g * g
    assert lusztig_pairing(e12, e12, D) == g
    assert lusztig_pairing(t21, e12, D) == LaurentSeries.zero(D)
    assert lusztig_pairing(e12, t21, D) == LaurentSeries.zero(D)


def test_pairing_bilinear_symmetric():
    t21, e12 = _pairing_fixture()
    x = t21 + e12
    lhs = lusztig_pairing(x, t21, D)
    rhs = lusztig_pairing(t21, t21, D) + lusztig_pairing(e12, t21, D)
    assert lhs == rhs
    assert lusztig_pairing(x, e12, D) == lusztig_pairing(e12, x, D)


def test_pairing_vanishes_across_weights():
    a = FreeAlgebraElement.monomial(dA2, (1,))
    b = FreeAlgebraElement.monomial(dA2, (2,))
    assert lusztig_pairing(a, b, D) == LaurentSeries.zero(D)


def test_dual_basis_biorthogonality():
    """{(12), (21)+q(12)} is dual to {theta2 theta1, theta1theta2 - q theta2theta1}."""
    t21, e12 = _pairing_fixture()
    pbw = [t21, e12]
    dual = [Character(dA2, {(1, 2): LaurentSeries.one()}),
            Character(dA2, {(2, 1): LaurentSeries.one(),
                            (1, 2): LaurentSeries.monomial(1)})]
    for k, db in enumerate(dual):
        for l, x in enumerate(pbw):
            val = LaurentSeries.zero()
            for w, c in x.terms.items():
                val = val + c * db.coeff(w)
            assert val == (LaurentSeries.one() if k == l else LaurentSeries.zero())


def test_dimension_formula_a1():
    dA1 = build_cartan("A", 1)
    chars = modules.standard_characters(dA1, (1,))
    got = dimension_formula(dA1, (1,), (1,), 8, chars)
    assert got == LaurentSeries.geometric(2, 8)


def test_dimension_formula_a2_vs_enumeration():
    chars = modules.standard_characters(dA2, (1, 1))
    got = dimension_formula(dA2, (1, 2), (1, 2), 8, chars)
    for n in range(-2, 9):
        assert got.coeff(n) == count_basis(dA2, (1, 1), (1, 2), (1, 2), n)


def test_dimension_formula_nilhecke():
    dA1 = build_cartan("A", 1)
    chars = modules.standard_characters(dA1, (2,))
    got = dimension_formula(dA1, (1, 1), (1, 1), 8, chars)
    for n in range(-4, 9):
        assert got.coeff(n) == count_basis(dA1, (2,), (1, 1), (1, 1), n)


def test_standard_char_shift_bookkeeping():
    dA1 = build_cartan("A", 1)
    pi = modules.root_partitions(dA1, (2,))[0]
    assert pi.sh() == 1
    ch = modules.proper_standard_character(dA1, pi)
    assert ch.terms[(1, 1)] == LaurentSeries({1: 1, -1: 1})
