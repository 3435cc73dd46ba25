from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klrcell.laurent import (LaurentSeries, l_pi, quantum_factorial,
                             quantum_integer, sqrt_polynomial, word_factorial)
from klrcell.cartan import build_cartan


series_strategy = st.builds(
    LaurentSeries,
    st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=5))


@given(series_strategy, series_strategy, series_strategy)
@settings(max_examples=200, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * LaurentSeries.one() == a
    assert a - a == LaurentSeries.zero()


@given(series_strategy, series_strategy, st.integers(-3, 8))
@settings(max_examples=200, deadline=None)
def test_truncation_is_ring_hom(a, b, d):
    assert (a * b).truncate(d) == (a.truncate(d) * b.truncate(d)).truncate(d)
    assert (a + b).truncate(d) == (a.truncate(d) + b.truncate(d))


def test_quantum_integers():
    assert quantum_integer(2, 2) == LaurentSeries({1: 1, -1: 1})
    assert quantum_integer(3, 2) == LaurentSeries({2: 1, 0: 1, -2: 1})
    # long root in type B: q_beta = q^2
    assert quantum_integer(2, 4) == LaurentSeries({2: 1, -2: 1})
    for n in range(6):
        q = quantum_integer(n, 2)
        assert q.is_bar_invariant()
        assert q.evaluate(1) == n


def test_bar_involution_truncated_raises():
    with pytest.raises(ValueError):
        LaurentSeries({0: 1}, truncation=3).bar()


def test_word_factorial():
    dA2 = build_cartan("A", 2)
    assert word_factorial((1, 2, 1), dA2) == LaurentSeries.one()
    assert word_factorial((1, 1), dA2) == LaurentSeries({1: 1, -1: 1})
    expect = LaurentSeries({1: 1, -1: 1}) * LaurentSeries({2: 1, 0: 1, -2: 1})
    assert word_factorial((1, 1, 1), dA2) == expect


class _FakePi:
    def __init__(self, parts):
        self.parts = parts


class _FakeRoot:
    def __init__(self, norm):
        self.norm = norm


def test_l_pi_examples():
    beta = _FakeRoot(2)
    one_part = _FakePi([(beta, 1)])
    assert l_pi(one_part, 6) == LaurentSeries({0: 1, 2: 1, 4: 1, 6: 1}, 6)
    squared = _FakePi([(beta, 2)])
    got = l_pi(squared, 4)
    assert got == LaurentSeries({0: 1, 2: 1, 4: 2}, 4)
    assert l_pi(_FakePi([]), 5) == LaurentSeries.one(5)


def test_sqrt_and_exact_division():
    p = LaurentSeries({-1: 1, 1: 1})  # q + 1/q
    assert sqrt_polynomial(p * p) == p
    with pytest.raises(ValueError):
        sqrt_polynomial(LaurentSeries({0: 2}))
    num = LaurentSeries({0: 1, 2: -1}) * LaurentSeries({0: 3, 1: 5})
    assert num.exact_div(LaurentSeries({0: 1, 2: -1})) == LaurentSeries({0: 3, 1: 5})
    with pytest.raises(ValueError):
        LaurentSeries({0: 1, 1: 1}).exact_div(LaurentSeries({0: 1, 2: -1}))


def test_min_cutoff_combination():
    a = LaurentSeries({0: 1, 5: 1}, truncation=5)
    b = LaurentSeries({0: 1}, truncation=3)
    assert (a * b).truncation == 3
    assert (a + b).truncation == 3
