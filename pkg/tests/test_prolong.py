"""The prolonged rank-4 distribution E: Pfaff system, bracket table, growth."""

from __future__ import annotations

import random
from fractions import Fraction

from conftest import by_id, discrepancies, failures
from f4prolong.fields import lie_bracket, origin, pair, random_point
from f4prolong.prolong import (
    DEFINING_BRACKETS,
    EXPECTED_GROWTH,
    PRINTED_TABLE,
    PROLONGED_VARIABLES,
    growth_vector_E,
    pfaff_forms,
    symbol_structure,
)


def test_chart_has_24_variables():
    assert len(PROLONGED_VARIABLES) == 24
    assert len(set(PROLONGED_VARIABLES)) == 24


def test_printed_table_covers_strict_upper_entries():
    assert len(PRINTED_TABLE) == 82
    assert all(1 <= i < j <= 23 and i <= 4 for i, j in PRINTED_TABLE)


def test_defining_brackets_reference_earlier_fields():
    for k, (i, j) in DEFINING_BRACKETS.items():
        assert 5 <= k <= 24
        assert i < k and j < k


def test_zetas_annihilate_pfaff_system(prolong_run):
    _, zs, _, _ = prolong_run
    for form in pfaff_forms(zs.chart):
        for k in (1, 2, 3, 4):
            assert pair(form, zs.zeta[k]).is_zero()


def test_defining_brackets_reproduce_zetas(prolong_run):
    _, zs, _, _ = prolong_run
    for k in (10, 17, 24):
        i, j = DEFINING_BRACKETS[k]
        assert lie_bracket(zs.zeta[i], zs.zeta[j]) == zs.zeta[k]


def test_growth_vector(prolong_run):
    _, zs, _, _ = prolong_run
    rng = random.Random(99)
    assert growth_vector_E(zs, origin(zs.chart)).ranks == EXPECTED_GROWTH
    assert growth_vector_E(zs, random_point(zs.chart, rng)).ranks == EXPECTED_GROWTH


def test_table_all_constant_with_rational_coefficients(prolong_run):
    _, _, table, _ = prolong_run
    assert len(table.entries) == 92
    assert all(combo is not None for combo in table.entries.values())
    for combo in table.entries.values():
        assert all(isinstance(c, Fraction) for c in combo.values())


def test_table_spot_values(prolong_run):
    _, _, table, _ = prolong_run
    assert table.entries[(1, 2)] == {5: Fraction(1)}
    assert table.entries[(4, 10)] == {13: Fraction(-2)}
    assert table.entries[(4, 20)] == {21: Fraction(1, 2)}
    assert table.entries[(1, 23)] == {24: Fraction(1)}
    # the one printed entry the computation overrules (forced by Jacobi)
    assert table.entries[(1, 16)] == {18: Fraction(1)}
    assert PRINTED_TABLE[(1, 16)] == {}


def test_symbol_algebra(prolong_run):
    _, zs, table, _ = prolong_run
    sym = symbol_structure(zs, table, origin(zs.chart))
    assert sym.graded_dimensions == (4, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1)
    assert sym.weights[7] == 2
    assert sym.weights[24] == 11
    # graded structure constants retain the weight-additive part
    assert sym.structure_constants[(1, 2)] == {5: Fraction(1)}


def test_suite_statuses(prolong_run):
    items, _, _, elapsed = prolong_run
    assert not failures(items)
    assert {i.id for i in discrepancies(items)} == {
        "table:[z1,z16]",
        "text:duplicated-E8-block",
        "text:zeta18-z12-term",
        "text:missing-equals",
    }
    ids = by_id(items)
    assert ids["growth:E"].status == "pass"
    assert ids["growth:pi-lift-in-E7"].status == "pass"
    assert ids["pfaff:zeta4-eta1"].status == "pass"
    assert elapsed < 120.0
