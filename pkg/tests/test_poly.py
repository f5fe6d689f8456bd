"""Exact sparse polynomials: ring laws, calculus, serialization."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f4prolong.poly import Chart, ChartMismatchError, MultiPoly, extend_poly

CHART = Chart("t3", ("a", "b", "c"))


def v(name: str) -> MultiPoly:
    return MultiPoly.variable(CHART, name)


@st.composite
def polys(draw):
    n_terms = draw(st.integers(0, 5))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(draw(st.integers(0, 3)) for _ in range(3))
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 5))
        terms[exps] = Fraction(num, den)
    return MultiPoly(CHART, terms)


points = st.fixed_dictionaries(
    {n: st.fractions(min_value=-3, max_value=3, max_denominator=4) for n in CHART.variables}
)


def test_constructor_drops_zero_terms():
    p = MultiPoly(CHART, {(1, 0, 0): Fraction(0), (0, 1, 0): Fraction(2)})
    assert p == v("b") * 2


def test_basic_arithmetic():
    p = (v("a") + v("b")) * (v("a") - v("b"))
    assert p == v("a") * v("a") - v("b") * v("b")
    assert (p - p).is_zero()
    assert MultiPoly.constant(CHART, Fraction(3, 2)).constant_value() == Fraction(3, 2)


def test_diff_and_evaluate():
    p = v("a") * v("a") * v("b") + v("c") * Fraction(1, 2)
    assert p.diff("a") == v("a") * v("b") * 2
    assert p.diff("c") == MultiPoly.constant(CHART, Fraction(1, 2))
    pt = {"a": Fraction(2), "b": Fraction(-1), "c": Fraction(4)}
    assert p.evaluate(pt) == Fraction(-2)
    assert p.evaluate_seq([Fraction(2), Fraction(-1), Fraction(4)]) == Fraction(-2)


def test_substitute():
    p = v("a") * v("b")
    q = p.substitute({"a": v("c") + 1})
    assert q == v("c") * v("b") + v("b")


def test_chart_mismatch_raises():
    other = Chart("t2", ("a", "b"))
    with pytest.raises(ChartMismatchError):
        v("a") + MultiPoly.variable(other, "a")


def test_json_round_trip():
    p = v("a") * v("b") * Fraction(-7, 3) + 2
    assert MultiPoly.from_json(p.to_json(), CHART) == p


def test_extend_poly():
    big = Chart("t4", ("x", "a", "b", "c"))
    p = v("a") * v("c") + 1
    q = extend_poly(p, big)
    assert q.chart == big
    assert q.evaluate({"x": Fraction(9), "a": Fraction(2), "b": Fraction(5), "c": Fraction(3)}) == 7


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_diff_is_a_derivation(p, q):
    for name in CHART.variables:
        assert (p * q).diff(name) == p.diff(name) * q + p * q.diff(name)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points)
def test_evaluate_is_a_ring_map(p, q, pt):
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
