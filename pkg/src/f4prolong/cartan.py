"""The rank-8 model distribution on a 15-variable chart: frame, coframe, checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .fields import (
    Distribution,
    OneForm,
    Point,
    VectorField,
    derived_flag,
    fields_matrix,
    frobenius_check,
    lie_bracket,
    origin,
    pair,
    random_point,
    rank_at,
    span_membership,
    two_form_eval,
)
from .linalg import det_cofactor, mat_rank
from .poly import Chart, MultiPoly
from .report import DISCREPANCY, Item, check

PAIRS = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]

BASE_VARIABLES = (
    "z",
    "x1", "x2", "x3", "x4",
    "y1", "y2", "y3", "y4",
    "x12", "x13", "x14", "x23", "x24", "x34",
)


def base_chart() -> Chart:
    return Chart("base15", BASE_VARIABLES)


def _parity(perm: Tuple[int, ...]) -> int:
    inv = sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )
    return -1 if inv % 2 else 1


def even_complement(i: int, j: int) -> Tuple[int, int]:
    """The ordered pair (h, k) with (i, j, h, k) an even permutation of (1,2,3,4)."""
    rest = [t for t in (1, 2, 3, 4) if t not in (i, j)]
    h, k = rest
    if _parity((i, j, h, k)) == 1:
        return h, k
    return k, h


@dataclass(frozen=True)
class CartanModel:
    chart: Chart
    frame: Dict[str, VectorField]
    frame_order: Tuple[str, ...]
    coframe: Dict[str, OneForm]
    coframe_order: Tuple[str, ...]
    distribution: Distribution

    @property
    def generators(self) -> List[VectorField]:
        return list(self.distribution.generators)


def build_model() -> CartanModel:
    """Construct the model frame and coframe on the 15-variable chart.

    The (h, k) companion pair of each omega_ij is computed from permutation
    parity, then the frame is assembled so that duality with the coframe is an
    exact polynomial identity (verified separately).
    """
    chart = base_chart()
    var = lambda name: MultiPoly.variable(chart, name)

    frame: Dict[str, VectorField] = {}
    coframe: Dict[str, OneForm] = {}

    frame["Z"] = VectorField.coordinate(chart, "z", "Z")
    for i, j in PAIRS:
        frame[f"X{i}{j}"] = VectorField.coordinate(chart, f"x{i}{j}", f"X{i}{j}")

    # omega = dz - sum y_i dx_i
    coframe["omega"] = OneForm.from_dict(
        chart,
        {"z": MultiPoly.constant(chart, 1), **{f"x{i}": -var(f"y{i}") for i in range(1, 5)}},
        "omega",
    )
    # omega_ij = dx_ij - (x_i dx_j - x_j dx_i + y_h dy_k - y_k dy_h)
    for i, j in PAIRS:
        h, k = even_complement(i, j)
        coframe[f"omega{i}{j}"] = OneForm.from_dict(
            chart,
            {
                f"x{i}{j}": MultiPoly.constant(chart, 1),
                f"x{j}": -var(f"x{i}"),
                f"x{i}": var(f"x{j}"),
                f"y{k}": -var(f"y{h}"),
                f"y{h}": var(f"y{k}"),
            },
            f"omega{i}{j}",
        )
    for i in range(1, 5):
        coframe[f"dx{i}"] = OneForm.differential(chart, f"x{i}")
        coframe[f"dy{i}"] = OneForm.differential(chart, f"y{i}")

    # X_i: unit dx_i direction, y_i dz correction, and the x_ij corrections
    # dual to the omega_ij above.
    xcomp: Dict[int, Dict[str, MultiPoly]] = {
        i: {f"x{i}": MultiPoly.constant(chart, 1), "z": var(f"y{i}")} for i in range(1, 5)
    }
    ycomp: Dict[int, Dict[str, MultiPoly]] = {
        i: {f"y{i}": MultiPoly.constant(chart, 1)} for i in range(1, 5)
    }
    for i, j in PAIRS:
        h, k = even_complement(i, j)
        xcomp[j][f"x{i}{j}"] = var(f"x{i}")
        xcomp[i][f"x{i}{j}"] = -var(f"x{j}")
        ycomp[k][f"x{i}{j}"] = var(f"y{h}")
        ycomp[h][f"x{i}{j}"] = -var(f"y{k}")
    for i in range(1, 5):
        frame[f"X{i}"] = VectorField.from_dict(chart, xcomp[i], f"X{i}")
        frame[f"Y{i}"] = VectorField.from_dict(chart, ycomp[i], f"Y{i}")

    frame_order = tuple(
        ["Z"]
        + [f"X{i}{j}" for i, j in PAIRS]
        + [f"X{i}" for i in range(1, 5)]
        + [f"Y{i}" for i in range(1, 5)]
    )
    coframe_order = tuple(
        ["omega"]
        + [f"omega{i}{j}" for i, j in PAIRS]
        + [f"dx{i}" for i in range(1, 5)]
        + [f"dy{i}" for i in range(1, 5)]
    )
    gens = [frame[f"X{i}"] for i in range(1, 5)] + [frame[f"Y{i}"] for i in range(1, 5)]
    return CartanModel(
        chart, frame, frame_order, coframe, coframe_order, Distribution(chart, gens)
    )


GENERATOR_ORDER = ("X1", "X2", "X3", "X4", "Y1", "Y2", "Y3", "Y4")


def expected_bracket(m: CartanModel, a: str, b: str) -> VectorField:
    """The bracket table's value for [a, b] over the full 15-field frame."""
    center = {"Z"} | {f"X{i}{j}" for i, j in PAIRS}
    if a in center or b in center:
        return VectorField.zero(m.chart)
    ta, ia = a[0], int(a[1])
    tb, ib = b[0], int(b[1])
    if ta == "X" and tb == "X":
        if ia == ib:
            return VectorField.zero(m.chart)
        i, j = min(ia, ib), max(ia, ib)
        sign = 1 if ia < ib else -1
        return m.frame[f"X{i}{j}"] * (2 * sign)
    if ta == "Y" and tb == "Y":
        if ia == ib:
            return VectorField.zero(m.chart)
        i, j = min(ia, ib), max(ia, ib)
        sign = 1 if ia < ib else -1
        h, k = even_complement(i, j)
        if h > k:
            h, k = k, h
            sign = -sign
        return m.frame[f"X{h}{k}"] * (2 * sign)
    # mixed: [Y_i, X_i] = Z, zero otherwise
    if ia != ib:
        return VectorField.zero(m.chart)
    return m.frame["Z"] * (1 if ta == "Y" else -1)


def verify_bracket_table(m: CartanModel) -> List[Item]:
    """Check every pairwise bracket of the 15 frame fields against the table."""
    items = []
    names = list(m.frame_order)
    for a_idx, a in enumerate(names):
        for b in names[a_idx + 1 :]:
            got = lie_bracket(m.frame[a], m.frame[b])
            want = expected_bracket(m, a, b)
            ok = got == want
            items.append(
                check(
                    f"bracket:[{a},{b}]",
                    f"[{a}, {b}] matches the model bracket table",
                    ok,
                    computed=repr(got) if not ok else "as expected",
                    expected=repr(want) if not ok else "",
                )
            )
    return items


def verify_duality(m: CartanModel) -> Tuple[int, int]:
    """Count (checked, mismatched) of the 225 coframe/frame pairings."""
    checked = mismatched = 0
    for a, form_name in enumerate(m.coframe_order):
        for b, field_name in enumerate(m.frame_order):
            p = pair(m.coframe[form_name], m.frame[field_name])
            want = 1 if a == b else 0
            checked += 1
            if not (p == want):
                mismatched += 1
    return checked, mismatched


def contact_foliation_check(m: CartanModel, i: int, j: int, seed: int = 0) -> List[Item]:
    """Integrability of D_ij plus nondegeneracy of the leaf contact form."""
    if not (1 <= i < j <= 4):
        raise ValueError("need 1 <= i < j <= 4")
    h, k = even_complement(i, j)
    complement = [m.frame[f"X{i}"], m.frame[f"X{j}"], m.frame[f"Y{h}"], m.frame[f"Y{k}"]]
    gens = complement + [m.frame[f"X{i}{j}"]]
    dij = Distribution(m.chart, gens)
    items = []
    integrable = frobenius_check(dij, origin(m.chart), seed=seed)
    items.append(
        check(
            f"foliation:D{i}{j}:integrable",
            f"D_{i}{j} is completely integrable (Frobenius)",
            integrable,
            computed=str(integrable),
            expected="True",
        )
    )
    alpha = m.coframe[f"omega{i}{j}"]
    mat = [[two_form_eval(alpha, a, b) for b in complement] for a in complement]
    # restrict to the leaf through the origin: coordinates not moved by D_ij
    # are frozen at 0
    moving = {f"x{i}", f"x{j}", f"y{h}", f"y{k}", f"x{i}{j}"}
    frozen = {
        v: MultiPoly.zero(m.chart) for v in m.chart.variables if v not in moving
    }
    restricted = [[entry.substitute(frozen) for entry in row] for row in mat]
    det = det_cofactor(
        restricted, MultiPoly.zero(m.chart), MultiPoly.constant(m.chart, 1)
    )
    nondeg = det.is_constant() and det.constant_value() != 0
    items.append(
        check(
            f"foliation:D{i}{j}:contact",
            f"d(omega{i}{j}) is nondegenerate on the leaf complement of X{i}{j}",
            nondeg,
            computed=str(det),
            expected="nonzero constant",
        )
    )
    return items


F4_SKEW_RELATIONS = [
    # ((i, j), (a, b), sign): [X_i, X_j] == sign * [Y_a, Y_b] mod D
    ((1, 2), (3, 4), 1),
    ((1, 3), (2, 4), -1),
    ((1, 4), (2, 3), 1),
    ((2, 3), (1, 4), 1),
    ((2, 4), (1, 3), -1),
    ((3, 4), (1, 2), 1),
]


def type_f4_frame_check(
    frame: Dict[str, VectorField],
    d: Distribution,
    point: Point,
    seed: int = 0,
    samples: int = 5,
) -> List[Item]:
    """Check the defining congruences of a type-F4 adapted frame modulo D."""
    chart = d.chart
    X = {i: frame[f"X{i}"] for i in range(1, 5)}
    Y = {i: frame[f"Y{i}"] for i in range(1, 5)}
    fields8 = list(X.values()) + list(Y.values())
    if rank_at(fields8, point) != 8:
        raise ValueError("frame candidate is degenerate at the test point")
    rng = random.Random(seed)
    pts = [point] + [random_point(chart, rng) for _ in range(samples)]

    def congruent_zero(v: VectorField) -> bool:
        return all(span_membership(v, d, p) for p in pts)

    items = []
    for (i, j), (a, b), sign in F4_SKEW_RELATIONS:
        diff = lie_bracket(X[i], X[j]) - lie_bracket(Y[a], Y[b]) * sign
        items.append(
            check(
                f"f4:[X{i},X{j}]~{'' if sign == 1 else '-'}[Y{a},Y{b}]",
                f"[X{i},X{j}] = {'' if sign == 1 else '-'}[Y{a},Y{b}] mod D",
                congruent_zero(diff),
            )
        )
    first = lie_bracket(X[1], Y[1])
    for i in range(2, 5):
        diff = first - lie_bracket(X[i], Y[i])
        items.append(
            check(
                f"f4:[X1,Y1]~[X{i},Y{i}]",
                f"[X1,Y1] = [X{i},Y{i}] mod D",
                congruent_zero(diff),
            )
        )
    for i in range(1, 5):
        for j in range(1, 5):
            if i == j:
                continue
            items.append(
                check(
                    f"f4:[X{i},Y{j}]~0",
                    f"[X{i},Y{j}] = 0 mod D",
                    congruent_zero(lie_bracket(X[i], Y[j])),
                )
            )
    induced = list(fields8)
    for i, j in PAIRS:
        induced.append(lie_bracket(X[i], X[j]) * Fraction(1, 2))
    induced.append(lie_bracket(Y[1], X[1]))
    indep = all(mat_rank(fields_matrix(induced, p)) == 15 for p in pts)
    items.append(
        check(
            "f4:induced-frame-rank",
            "frame + half-brackets + [Y1,X1] span rank 15 pointwise",
            indep,
            computed=str(indep),
            expected="True",
        )
    )
    return items


def verify_suite(seed: int = 0, samples: int = 5) -> List[Item]:
    """The full frame-level suite: brackets, duality, foliations, growth, F4 check."""
    m = build_model()
    items = verify_bracket_table(m)
    checked, mism = verify_duality(m)
    items.append(
        check(
            "duality:225",
            "all 225 coframe/frame pairings equal the Kronecker delta",
            checked == 225 and mism == 0,
            computed=f"checked={checked}, mismatched={mism}",
            expected="checked=225, mismatched=0",
        )
    )
    for i, j in PAIRS:
        items.extend(contact_foliation_check(m, i, j, seed=seed))
    rng = random.Random(seed)
    pts = [origin(m.chart)] + [random_point(m.chart, rng) for _ in range(samples)]
    growths = [derived_flag(m.distribution, p).ranks for p in pts]
    items.append(
        check(
            "growth:D",
            "growth vector of D is (8, 15) at the origin and sampled points",
            all(g == (8, 15) for g in growths),
            computed=str(sorted(set(growths))),
            expected="[(8, 15)]",
        )
    )
    items.extend(
        type_f4_frame_check(m.frame, m.distribution, origin(m.chart), seed=seed)
    )
    return items
