"""The 24-dimensional prolonged space W, the rank-4 distribution E, its full
bracket table, growth vector, and graded symbol structure."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cartan import BASE_VARIABLES, build_model
from .fields import (
    Distribution,
    OneForm,
    Point,
    VectorField,
    constant_combination,
    derived_flag,
    derived_flag_fields,
    extend_field,
    fields_matrix,
    lie_bracket,
    origin,
    pair,
    random_point,
    span_membership,
)
from .linalg import mat_rank
from .nullflag import FREE_COORDS, eta_frames
from .poly import Chart, MultiPoly
from .report import DISCREPANCY, Item, check

PROLONGED_VARIABLES = BASE_VARIABLES + FREE_COORDS

EXPECTED_GROWTH = (4, 7, 10, 13, 16, 18, 20, 21, 22, 23, 24)

DEFINING_BRACKETS: Dict[int, Tuple[int, int]] = {
    5: (1, 2), 6: (2, 3), 7: (3, 4),
    8: (1, 6), 9: (2, 7), 10: (3, 6),
    11: (1, 9), 12: (1, 10), 13: (3, 9),
    14: (1, 13), 15: (2, 12), 16: (4, 13),
    17: (2, 14), 18: (4, 14),
    19: (2, 18), 20: (3, 17),
    21: (3, 19), 22: (3, 21), 23: (2, 22), 24: (1, 23),
}

# the published relation list: (i, j) -> {k: coefficient} meaning
# [zeta_i, zeta_j] = sum coeff * zeta_k (empty dict = printed zero)
PRINTED_TABLE: Dict[Tuple[int, int], Dict[int, Fraction]] = {
    (1, 2): {5: Fraction(1)}, (1, 3): {}, (1, 4): {},
    (2, 3): {6: Fraction(1)}, (2, 4): {}, (3, 4): {7: Fraction(1)},
    (1, 5): {}, (1, 6): {8: Fraction(1)}, (1, 7): {},
    (2, 5): {}, (2, 6): {}, (2, 7): {9: Fraction(1)},
    (3, 5): {8: Fraction(-1)}, (3, 6): {10: Fraction(1)}, (3, 7): {},
    (4, 5): {}, (4, 6): {9: Fraction(-1)}, (4, 7): {},
    (1, 8): {}, (1, 9): {11: Fraction(1)}, (1, 10): {12: Fraction(1)},
    (2, 8): {}, (2, 9): {}, (2, 10): {},
    (3, 8): {12: Fraction(1)}, (3, 9): {13: Fraction(1)}, (3, 10): {},
    (4, 8): {11: Fraction(-1)}, (4, 9): {}, (4, 10): {13: Fraction(-2)},
    (1, 11): {}, (1, 12): {}, (1, 13): {14: Fraction(1)},
    (2, 11): {}, (2, 12): {15: Fraction(1)}, (2, 13): {},
    (3, 11): {14: Fraction(1)}, (3, 12): {}, (3, 13): {},
    (4, 11): {}, (4, 12): {14: Fraction(-2)}, (4, 13): {16: Fraction(1)},
    (1, 14): {}, (1, 15): {}, (1, 16): {},
    (2, 14): {17: Fraction(1)}, (2, 15): {}, (2, 16): {},
    (3, 14): {}, (3, 15): {}, (3, 16): {},
    (4, 14): {18: Fraction(1)}, (4, 15): {17: Fraction(-2)}, (4, 16): {},
    (1, 17): {}, (1, 18): {}, (2, 17): {}, (2, 18): {19: Fraction(1)},
    (3, 17): {20: Fraction(1)}, (3, 18): {}, (4, 17): {19: Fraction(1)}, (4, 18): {},
    (1, 19): {}, (1, 20): {}, (2, 19): {}, (2, 20): {},
    (3, 19): {21: Fraction(1)}, (3, 20): {}, (4, 19): {}, (4, 20): {21: Fraction(1, 2)},
    (1, 21): {}, (2, 21): {}, (3, 21): {22: Fraction(1)}, (4, 21): {},
    (1, 22): {}, (2, 22): {23: Fraction(1)}, (3, 22): {}, (4, 22): {},
    (1, 23): {24: Fraction(1)}, (2, 23): {}, (3, 23): {}, (4, 23): {},
}


def prolonged_chart() -> Chart:
    return Chart("prolonged24", PROLONGED_VARIABLES)


@dataclass
class ZetaSystem:
    chart: Chart
    zeta: Dict[int, VectorField]
    defining: Dict[int, Tuple[int, int]] = field(default_factory=lambda: dict(DEFINING_BRACKETS))

    @property
    def generators(self) -> List[VectorField]:
        return [self.zeta[k] for k in (1, 2, 3, 4)]

    def distribution(self) -> Distribution:
        return Distribution(self.chart, self.generators)


@dataclass
class BracketTable:
    # (i, j) -> constant expansion {k: coeff} of [zeta_i, zeta_j], or None
    # when no rational-constant expansion exists
    entries: Dict[Tuple[int, int], Optional[Dict[int, Fraction]]]


def _expr(chart: Chart, terms: Dict[Tuple[str, ...], Fraction]) -> MultiPoly:
    total = MultiPoly.zero(chart)
    for names, coeff in terms.items():
        t = MultiPoly.constant(chart, coeff)
        for n in names:
            t = t * MultiPoly.variable(chart, n)
        total = total + t
    return total


def zeta4_coefficients(chart: Chart) -> Dict[str, MultiPoly]:
    """The published zeta_4 coefficients over (X1..X4, Y1..Y4), transcribed."""
    h = Fraction(1, 2)
    q = Fraction(1, 4)
    return {
        "X1": _expr(chart, {
            ("z11", "z25"): -h, ("z15", "z21"): h, ("z16", "z31"): h,
            ("z11", "z21", "z31"): Fraction(1, 8), ("z15", "z24", "z31"): -h,
        }),
        "X2": _expr(chart, {
            ("z11",): h, ("z13", "z21"): -h, ("z14", "z31"): -h,
            ("z13", "z24", "z31"): h,
        }),
        "X3": _expr(chart, {("z21",): h, ("z24", "z31"): -h}),
        "X4": _expr(chart, {("z31",): h}),
        "Y1": MultiPoly.constant(chart, 1),
        "Y2": _expr(chart, {("z25",): Fraction(1), ("z21", "z31"): -q}),
        "Y3": _expr(chart, {
            ("z15",): Fraction(-1), ("z11", "z31"): q,
            ("z13", "z25"): Fraction(1), ("z13", "z21", "z31"): -q,
        }),
        "Y4": _expr(chart, {
            ("z16",): Fraction(-1), ("z11", "z21"): -q, ("z14", "z25"): Fraction(1),
            ("z11", "z24", "z31"): q, ("z14", "z21", "z31"): -q,
        }),
    }


def lifted_frame(chart: Chart) -> Dict[str, VectorField]:
    model = build_model()
    return {name: extend_field(f, chart) for name, f in model.frame.items()}


def build_zeta_generators() -> ZetaSystem:
    chart = prolonged_chart()
    var = lambda n: MultiPoly.variable(chart, n)
    one = MultiPoly.constant(chart, 1)
    z1 = VectorField.from_dict(
        chart,
        {
            "z13": one,
            "z11": var("z21"),
            "z14": var("z24"),
            "z15": var("z25"),
            "z16": var("z24") * var("z25") - var("z21") * var("z21") * Fraction(1, 4),
        },
        "zeta1",
    )
    z2 = VectorField.from_dict(
        chart,
        {
            "z24": one,
            "z21": var("z31"),
            "z25": var("z31") * var("z31") * Fraction(1, 4),
        },
        "zeta2",
    )
    z3 = VectorField.coordinate(chart, "z31", "zeta3")
    frame = lifted_frame(chart)
    z4 = VectorField.zero(chart)
    for name, coeff in zeta4_coefficients(chart).items():
        z4 = z4 + frame[name] * coeff
    z4.name = "zeta4"
    return ZetaSystem(chart, {1: z1, 2: z2, 3: z3, 4: z4})


def pfaff_forms(chart: Chart) -> List[OneForm]:
    var = lambda n: MultiPoly.variable(chart, n)
    one = MultiPoly.constant(chart, 1)
    data = [
        ("z11", {"z13": -var("z21")}),
        ("z21", {"z24": -var("z31")}),
        ("z14", {"z13": -var("z24")}),
        ("z25", {"z24": -(var("z31") * var("z31") * Fraction(1, 4))}),
        ("z15", {"z13": -var("z25")}),
        ("z16", {"z13": -(var("z24") * var("z25") - var("z21") * var("z21") * Fraction(1, 4))}),
    ]
    forms = []
    for lead, rest in data:
        coeffs = {lead: one, **rest}
        forms.append(OneForm.from_dict(chart, coeffs, f"pfaff-d{lead}"))
    return forms


def verify_pfaff_conditions(zs: ZetaSystem) -> List[Item]:
    items = []
    for form in pfaff_forms(zs.chart):
        for k in (1, 2, 3, 4):
            val = pair(form, zs.zeta[k])
            items.append(
                check(
                    f"pfaff:{form.name}:zeta{k}",
                    f"<{form.name}, zeta{k}> = 0 identically",
                    val.is_zero(),
                    computed="" if val.is_zero() else str(val),
                )
            )
    # zeta_4's frame coefficients must reproduce eta_1 of the flag correspondence
    coords = {n: MultiPoly.variable(zs.chart, n) for n in FREE_COORDS}
    eta1 = eta_frames(coords).eta1
    frame = lifted_frame(zs.chart)
    names = ("X1", "X2", "X3", "X4", "Y1", "Y2", "Y3", "Y4")
    rebuilt = VectorField.zero(zs.chart)
    for name, coeff in zip(names, eta1):
        rebuilt = rebuilt + frame[name] * coeff
    items.append(
        check(
            "pfaff:zeta4-eta1",
            "zeta4 equals the eta1-direction lift, symbolically in 9 flag variables",
            rebuilt == zs.zeta[4],
        )
    )
    return items


def compute_bracket_table(zs: ZetaSystem) -> BracketTable:
    """Materialize zeta_5..zeta_24 by the defining brackets, then expand all
    92 brackets [zeta_i, zeta_j] (i in 1..4, j in 1..23) with exact rational
    constant coefficients."""
    for k in range(5, 25):
        i, j = zs.defining[k]
        br = lie_bracket(zs.zeta[i], zs.zeta[j])
        br.name = f"zeta{k}"
        zs.zeta[k] = br
    basis = [zs.zeta[k] for k in range(1, 25)]
    entries: Dict[Tuple[int, int], Optional[Dict[int, Fraction]]] = {}
    for i in range(1, 5):
        for j in range(1, 24):
            br = lie_bracket(zs.zeta[i], zs.zeta[j])
            if br.is_zero():
                entries[(i, j)] = {}
                continue
            combo = constant_combination(br, basis)
            if combo is None:
                entries[(i, j)] = None
            else:
                entries[(i, j)] = {
                    k + 1: c for k, c in enumerate(combo) if c != 0
                }
    return BracketTable(entries)


def verify_bracket_table(zs: ZetaSystem, table: BracketTable) -> List[Item]:
    items: List[Item] = []
    for (i, j), combo in sorted(table.entries.items()):
        item_id = f"table:[z{i},z{j}]"
        if combo is None:
            items.append(
                check(
                    item_id,
                    f"[zeta{i}, zeta{j}] expands with constant rational coefficients",
                    False,
                    computed="non-constant",
                    expected="constant combination of zeta_1..zeta_24",
                )
            )
            continue
        printed = PRINTED_TABLE.get((i, j))
        if printed is None:
            # below/at the diagonal: consistency with antisymmetry only
            if j < i:
                mirror = table.entries.get((j, i))
                ok = mirror is not None and combo == {
                    k: -c for k, c in mirror.items()
                }
                items.append(
                    check(
                        item_id,
                        f"[zeta{i}, zeta{j}] is minus [zeta{j}, zeta{i}]",
                        ok,
                        computed=_fmt_combo(combo),
                    )
                )
            else:
                items.append(
                    check(
                        item_id,
                        f"[zeta{i}, zeta{i}] = 0",
                        combo == {},
                        computed=_fmt_combo(combo),
                        expected="0",
                    )
                )
            continue
        if combo == printed:
            items.append(
                check(
                    item_id,
                    f"[zeta{i}, zeta{j}] matches the published relation",
                    True,
                    computed=_fmt_combo(combo),
                    expected=_fmt_combo(printed),
                )
            )
        else:
            items.append(
                Item(
                    item_id,
                    f"[zeta{i}, zeta{j}] vs the published relation",
                    DISCREPANCY,
                    computed=_fmt_combo(combo),
                    expected=_fmt_combo(printed),
                    note="computed bracket is authoritative; the defining"
                    " brackets come from the same derivation",
                )
            )
    return items


def _fmt_combo(combo: Dict[int, Fraction]) -> str:
    if not combo:
        return "0"
    return " + ".join(
        (f"zeta{k}" if c == 1 else f"{c}*zeta{k}") for k, c in sorted(combo.items())
    )


def static_discrepancy_items(zs: ZetaSystem) -> List[Item]:
    """Published-text defects in the relation list and its proof."""
    z_coeff = zs.zeta[18].components[zs.chart.index("z")]
    return [
        Item(
            "text:duplicated-E8-block",
            "the published relation list prints the E^(8) block twice verbatim",
            DISCREPANCY,
            computed="single block used",
            expected="one block",
            note="treated as a duplication, not as extra relations",
        ),
        Item(
            "text:zeta18-z12-term",
            'the published zeta_18 display contains "1/4 z_12 Z" with z12 not a'
            " chart variable",
            DISCREPANCY,
            computed=f"computed [zeta4, zeta14] has Z-coefficient {z_coeff}",
            expected="published display shows 1/4 z12",
            note="the computed bracket is authoritative",
        ),
        Item(
            "text:missing-equals",
            'a proof line reads "z14\' - z24 z13\' 0" with a missing "="',
            DISCREPANCY,
            computed="interpreted as = 0 (what the derivation requires)",
            expected="published text lacks the sign",
        ),
    ]


def growth_vector_E(zs: ZetaSystem, point: Point):
    return derived_flag(zs.distribution(), point, max_depth=12)


def verify_growth(zs: ZetaSystem, seed: int = 0, samples: int = 5) -> List[Item]:
    rng = random.Random(seed)
    pts = [origin(zs.chart)] + [random_point(zs.chart, rng) for _ in range(samples)]
    growths = [growth_vector_E(zs, p).ranks for p in pts]
    items = [
        check(
            "growth:E",
            f"growth vector of E is {EXPECTED_GROWTH} at origin and {samples} samples",
            all(g == EXPECTED_GROWTH for g in growths),
            computed=str(sorted(set(growths))),
            expected=str([EXPECTED_GROWTH]),
        )
    ]
    # pi_*^{-1}(D) inside E^(7)
    stages = derived_flag_fields(zs.distribution(), max_depth=7)
    e7: List[VectorField] = [f for stage in stages for f in stage]
    dist_e7 = Distribution(zs.chart, e7)
    frame = lifted_frame(zs.chart)
    lifts = [frame[n] for n in ("X1", "X2", "X3", "X4", "Y1", "Y2", "Y3", "Y4")]
    ok = all(span_membership(f, dist_e7, p) for f in lifts for p in pts)
    items.append(
        check(
            "growth:pi-lift-in-E7",
            "the lifts of the eight base generators lie in E^(7) at all sample points",
            ok,
        )
    )
    return items


@dataclass
class SymbolAlgebra:
    graded_dimensions: Tuple[int, ...]
    weights: Dict[int, int]
    structure_constants: Dict[Tuple[int, int], Dict[int, Fraction]]


def symbol_structure(zs: ZetaSystem, table: BracketTable, point: Point) -> SymbolAlgebra:
    """Weights from first appearance in the derived flag; graded brackets keep
    only the weight-additive part of each table entry."""
    stages = derived_flag_fields(zs.distribution(), max_depth=12)
    acc: List[VectorField] = []
    rank_by_depth = []
    acc_by_depth = []
    for stage in stages:
        acc = acc + stage
        acc_by_depth.append(list(acc))
        rank_by_depth.append(mat_rank(fields_matrix(acc, point)))
    weights: Dict[int, int] = {}
    for k in range(1, 25):
        zk = zs.zeta[k]
        depth = None
        for d, fields_d in enumerate(acc_by_depth, start=1):
            rows = fields_matrix(fields_d, point)
            r0 = mat_rank(rows)
            if mat_rank(rows + [list(zk.evaluate(point))]) == r0:
                depth = d
                break
        if depth is None:
            raise ValueError(f"zeta{k} not captured by the derived flag at the point")
        expected_depth = _expected_weight(k)
        if depth != expected_depth:
            raise ValueError(
                f"weight of zeta{k} ambiguous: first appears at depth {depth}"
            )
        weights[k] = depth
    counts: Dict[int, int] = {}
    for k, w in weights.items():
        counts[w] = counts.get(w, 0) + 1
    graded = tuple(counts[d] for d in sorted(counts))
    structure: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (i, j), combo in table.entries.items():
        if combo is None:
            continue
        target = weights[i] + weights[j]
        structure[(i, j)] = {
            k: c for k, c in combo.items() if weights[k] == target
        }
    return SymbolAlgebra(graded, weights, structure)


def _expected_weight(k: int) -> int:
    bounds = (4, 7, 10, 13, 16, 18, 20, 21, 22, 23, 24)
    for d, b in enumerate(bounds, start=1):
        if k <= b:
            return d
    raise ValueError(k)


def verify_symbol(zs: ZetaSystem, table: BracketTable, seed: int = 0) -> List[Item]:
    rng = random.Random(seed)
    pts = [origin(zs.chart)] + [random_point(zs.chart, rng) for _ in range(3)]
    items = []
    symbols = []
    try:
        for p in pts:
            symbols.append(symbol_structure(zs, table, p))
        ok = True
        err = ""
    except ValueError as exc:
        ok = False
        err = str(exc)
    if not ok:
        items.append(check("symbol:weights", "weight assignment well-defined", False, computed=err))
        return items
    s0 = symbols[0]
    items.append(
        check(
            "symbol:graded-dims",
            "graded dimensions are (4,3,3,3,3,2,2,1,1,1,1)",
            s0.graded_dimensions == (4, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1),
            computed=str(s0.graded_dimensions),
            expected="(4, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1)",
        )
    )
    items.append(
        check(
            "symbol:weights-spot",
            "weight(zeta7) = 2 and weight(zeta24) = 11",
            s0.weights[7] == 2 and s0.weights[24] == 11,
            computed=f"w(zeta7)={s0.weights[7]}, w(zeta24)={s0.weights[24]}",
            expected="2 and 11",
        )
    )
    same = all(
        s.weights == s0.weights and s.structure_constants == s0.structure_constants
        for s in symbols[1:]
    )
    items.append(
        check(
            "symbol:point-independence",
            "weights and graded structure constants agree at origin + 3 samples",
            same,
        )
    )
    return items


def verify_suite(seed: int = 0, samples: int = 5) -> Tuple[List[Item], ZetaSystem, BracketTable]:
    zs = build_zeta_generators()
    items: List[Item] = []
    items.extend(verify_pfaff_conditions(zs))
    table = compute_bracket_table(zs)
    items.extend(verify_bracket_table(zs, table))
    items.extend(static_discrepancy_items(zs))
    items.extend(verify_growth(zs, seed, samples))
    items.extend(verify_symbol(zs, table, seed))
    return items, zs, table
