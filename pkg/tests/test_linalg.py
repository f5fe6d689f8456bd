"""Exact linear algebra against independent oracles (sympy, naive cofactor)."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from f4prolong.linalg import (
    det_cofactor,
    mat_det,
    mat_mul,
    mat_rank,
    mat_rank_kernel,
    pfaffian,
    solve_exact,
    transpose,
)

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def matrices(rows, cols):
    return st.lists(
        st.lists(fracs, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    )


@settings(max_examples=40, deadline=None)
@given(matrices(4, 5))
def test_rank_matches_sympy(rows):
    assert mat_rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4))
def test_det_matches_sympy_and_cofactor(rows):
    d = mat_det(rows)
    assert d == Fraction(sympy.Rational(sympy.Matrix(rows).det()))
    assert d == det_cofactor(rows, Fraction(0), Fraction(1))


@settings(max_examples=40, deadline=None)
@given(matrices(5, 4))
def test_rank_plus_nullity(rows):
    rank, basis = mat_rank_kernel(rows)
    assert rank + len(basis) == 4
    for vec in basis:
        for row in rows:
            assert sum(a * b for a, b in zip(row, vec)) == 0


def test_kernel_is_exact_rational():
    rows = [[Fraction(1), Fraction(2), Fraction(0)], [Fraction(0), Fraction(0), Fraction(3)]]
    _, basis = mat_rank_kernel(rows)
    assert basis == [(Fraction(-2), Fraction(1), Fraction(0))]
    assert all(isinstance(x, Fraction) for vec in basis for x in vec)


@settings(max_examples=30, deadline=None)
@given(st.lists(fracs, min_size=15, max_size=15))
def test_pfaffian_squares_to_det(entries):
    n = 6
    m = [[Fraction(0)] * n for _ in range(n)]
    it = iter(entries)
    for i in range(n):
        for j in range(i + 1, n):
            x = next(it)
            m[i][j] = x
            m[j][i] = -x
    pf = pfaffian(m, Fraction(0), Fraction(1))
    assert pf * pf == mat_det(m)


def test_pfaffian_2x2_convention():
    m = [[Fraction(0), Fraction(7)], [Fraction(-7), Fraction(0)]]
    assert pfaffian(m, Fraction(0), Fraction(1)) == 7


def test_pfaffian_rejects_non_skew():
    with pytest.raises(ValueError):
        pfaffian([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(0)]], Fraction(0), Fraction(1))


@settings(max_examples=40, deadline=None)
@given(matrices(4, 3), st.lists(fracs, min_size=3, max_size=3))
def test_solve_exact_solution_or_inconsistent(rows, x):
    rhs = [sum(a * b for a, b in zip(row, x)) for row in rows]
    sol = solve_exact(rows, rhs)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in rows] == rhs


def test_solve_exact_inconsistent():
    rows = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    assert solve_exact(rows, [Fraction(1), Fraction(3)]) is None


def test_mat_mul_and_transpose():
    rng = random.Random(3)
    a = [[Fraction(rng.randint(-4, 4)) for _ in range(3)] for _ in range(2)]
    b = [[Fraction(rng.randint(-4, 4)) for _ in range(2)] for _ in range(3)]
    prod = mat_mul(a, b, Fraction(0))
    oracle = sympy.Matrix(a) * sympy.Matrix(b)
    assert sympy.Matrix(prod) == oracle
    assert transpose(a) == [list(r) for r in sympy.Matrix(a).T.tolist()]
