"""Null flags for the forms R and Q: completion of the nine free flag
coordinates, the correspondence to null flags in the distribution, and the
explicit eta-frames."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .control import bilinear_R, build_A, gram_R
from .linalg import mat_rank, mat_rank_kernel, solve_exact
from .poly import Chart, MultiPoly
from .report import DISCREPANCY, Item, check

FREE_COORDS = ("z11", "z13", "z14", "z15", "z16", "z21", "z24", "z25", "z31")
DEPENDENT_COORDS = ("z35", "z36", "z26", "z37", "z27", "z17")


@dataclass(frozen=True)
class LambdaFlagFrame:
    f1: Tuple
    f2: Tuple
    f3: Tuple
    coords: Dict[str, object]  # all fifteen z-values, free and dependent


@dataclass(frozen=True)
class VFlagFrame:
    eta1: Tuple
    eta2: Tuple
    eta3: Tuple
    eta4: Tuple

    @property
    def etas(self) -> Tuple[Tuple, ...]:
        return (self.eta1, self.eta2, self.eta3, self.eta4)


def _ring_units(sample):
    if isinstance(sample, MultiPoly):
        return MultiPoly.zero(sample.chart), MultiPoly.constant(sample.chart, 1)
    return Fraction(0), Fraction(1)


def complete_null_flag(coords: Mapping[str, object]) -> LambdaFlagFrame:
    """Solve the six nullity equations (f_i | f_j) = 0 for the dependent coords.

    The equations are evaluated through the R-bilinear form itself, not the
    published expansions. Each is affine in its unknown with a constant
    nonzero coefficient, so the triangular order (f3|f3), (f2|f3), (f2|f2),
    (f1|f3), (f1|f2), (f1|f1) solves them one at a time. Works over exact
    rationals or polynomial coefficients alike.
    """
    c = dict(coords)
    zero, one = _ring_units(c[FREE_COORDS[0]])
    for name in FREE_COORDS:
        if name not in c:
            raise KeyError(f"missing free coordinate {name}")
    f1 = [c["z11"], one, c["z13"], c["z14"], c["z15"], c["z16"], zero]
    f2 = [c["z21"], zero, one, c["z24"], c["z25"], zero, zero]
    f3 = [c["z31"], zero, zero, one, zero, zero, zero]

    def solve(va: list, vb: list, slot: int) -> object:
        vb[slot] = zero
        v0 = bilinear_R(va, vb)
        vb[slot] = one
        v1 = bilinear_R(va, vb)
        coef = v1 - v0
        cc = coef if isinstance(coef, Fraction) else coef.constant_value()
        if cc == 0:
            raise ArithmeticError("nullity equation is not affine in its unknown")
        val = v0 * (Fraction(-1) / cc)
        vb[slot] = val
        return val

    c["z35"] = solve(f3, f3, 4)
    c["z36"] = solve(f2, f3, 5)
    c["z26"] = solve(f2, f2, 5)
    c["z37"] = solve(f1, f3, 6)
    c["z27"] = solve(f1, f2, 6)
    c["z17"] = solve(f1, f1, 6)
    return LambdaFlagFrame(tuple(f1), tuple(f2), tuple(f3), c)


def eta_frames(coords: Mapping[str, object]) -> VFlagFrame:
    """The closed-form eta frame of the corresponding null flag in D.

    Components over (X1, X2, X3, X4, Y1, Y2, Y3, Y4); transcribed from the
    published displays, used as a cross-check against kernel solving.
    """
    z11, z13, z14 = coords["z11"], coords["z13"], coords["z14"]
    z15, z16, z21 = coords["z15"], coords["z16"], coords["z21"]
    z24, z25, z31 = coords["z24"], coords["z25"], coords["z31"]
    zero, one = _ring_units(z11)
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    eta1 = (
        z11 * z25 * (-half) + z16 * z31 * half + z11 * z21 * z31 * Fraction(1, 8)
        + z15 * z24 * z31 * (-half) + z15 * z21 * half,
        z11 * half + z13 * z21 * (-half) + z14 * z31 * (-half) + z13 * z24 * z31 * half,
        z21 * half + z24 * z31 * (-half),
        z31 * half,
        one,
        z25 + z21 * z31 * (-quarter),
        z15 * (-1) + z11 * z31 * quarter + z13 * z25 + z13 * z21 * z31 * (-quarter),
        z16 * (-1) + z11 * z21 * (-quarter) + z14 * z25 + z11 * z24 * z31 * quarter
        + z14 * z21 * z31 * (-quarter),
    )
    eta2 = (
        z16 + z11 * z21 * quarter + z15 * z24 * (-1),
        z14 * (-1) + z13 * z24,
        z24 * (-1),
        one,
        zero,
        z21 * (-half),
        z11 * half + z13 * z21 * (-half),
        z11 * z24 * half + z14 * z21 * (-half),
    )
    eta3 = (z15, z13 * (-1), one, zero, zero, zero, zero, z11 * (-half))
    eta4 = (z11 * (-half), zero, zero, zero, zero, one, z13, z14)
    return VFlagFrame(eta1, eta2, eta3, eta4)


def q_pair(a: Sequence, b: Sequence):
    """Polarized Q on 8-vectors over the frame (X1..X4, Y1..Y4)."""
    acc = None
    for i in range(4):
        for x, y in ((a[i], b[4 + i]), (b[i], a[4 + i])):
            term = x * y
            acc = term if acc is None else acc + term
    return acc * Fraction(1, 2)


def _apply_A(lam: Sequence, w: Sequence):
    """A(lambda) applied to an 8-vector; lam = (s, r12, r13, r14, r23, r24, r34)."""
    amat = build_A(lam[0], list(lam[1:]))
    out = []
    for row in amat:
        acc = None
        for x, y in zip(row, w):
            term = x * y
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def _normalized(basis: List[Tuple[Fraction, ...]], constraints) -> Tuple[Fraction, ...]:
    """The unique combination of the basis meeting the (index, value) constraints."""
    rows = [[b[idx] for b in basis] for idx, _ in constraints]
    rhs = [val for _, val in constraints]
    sol = solve_exact(rows, rhs)
    if sol is None:
        raise ValueError("flag lies outside the echelon normalization patch")
    n = len(basis[0])
    out = [Fraction(0)] * n
    for c, b in zip(sol, basis):
        for k in range(n):
            out[k] += c * b[k]
    # the constraint system can be underdetermined only through a bug upstream
    for idx, val in constraints:
        if out[idx] != val:
            raise ValueError("normalization constraints are inconsistent")
    return tuple(out)


def lambda_to_v(frame: LambdaFlagFrame) -> VFlagFrame:
    """Kernel-solve A(lambda)(u, v) = 0 for the nested flag and normalize.

    V4 = ker A(f1) (dim 4), V2 = ker of the stacked f1, f2 system (dim 2),
    V1 = ker of all three (dim 1). Bases are normalized to the published
    pivot pattern: eta1 has v1 = 1; eta2 has u4 = 1, v1 = 0; eta3 has
    u3 = 1, u4 = v1 = v2 = 0; eta4 has v2 = 1, u3 = u4 = v1 = 0.
    """
    for f in (frame.f1, frame.f2, frame.f3):
        val = bilinear_R(list(f), list(f))
        if val != 0:
            raise ValueError("flag frame is not R-null")
    rows1 = build_A(frame.f1[0], list(frame.f1[1:]))
    rows2 = rows1 + build_A(frame.f2[0], list(frame.f2[1:]))
    rows3 = rows2 + build_A(frame.f3[0], list(frame.f3[1:]))
    _, b4 = mat_rank_kernel(rows1)
    _, b2 = mat_rank_kernel(rows2)
    _, b1 = mat_rank_kernel(rows3)
    if (len(b4), len(b2), len(b1)) != (4, 2, 1):
        raise ValueError(
            f"unexpected kernel dimensions {(len(b4), len(b2), len(b1))}; expected (4, 2, 1)"
        )
    one = Fraction(1)
    zero = Fraction(0)
    eta1 = _normalized(b1, [(4, one)])
    eta2 = _normalized(b2, [(3, one), (4, zero)])
    eta3 = _normalized(b4, [(2, one), (3, zero), (4, zero), (5, zero)])
    eta4 = _normalized(b4, [(2, zero), (3, zero), (4, zero), (5, one)])
    return VFlagFrame(eta1, eta2, eta3, eta4)


def verify_flag_nullity(v: VFlagFrame) -> List[Item]:
    """All ten Q-pairings vanish and the flag containments hold."""
    items = []
    bad = []
    for a in range(4):
        for b in range(a, 4):
            if q_pair(v.etas[a], v.etas[b]) != 0:
                bad.append((a + 1, b + 1))
    items.append(
        check(
            "nullity:q-pairings",
            "Q(eta_a, eta_b) = 0 for all ten pairs",
            not bad,
            computed=f"nonzero pairs: {bad}" if bad else "all 10 zero",
            expected="all zero",
        )
    )
    r1 = mat_rank([list(v.eta1)])
    r2 = mat_rank([list(v.eta1), list(v.eta2)])
    r4 = mat_rank([list(e) for e in v.etas])
    r2c = mat_rank([list(v.eta1), list(v.eta2)] + [list(e) for e in v.etas])
    items.append(
        check(
            "nullity:containments",
            "dim profile (1, 2, 4) with V1 in V2 in V4",
            (r1, r2, r4) == (1, 2, 4) and r2c == 4,
            computed=str((r1, r2, r4)),
            expected="(1, 2, 4)",
        )
    )
    return items


PRINTED_NULL_EXPANSIONS = {
    # published expansions of (f_i | f_j); data for cross-checking only
    ("f1", "f1"): {("z11",): 1, ("z17",): -4, ("z13", "z16"): 4, ("z14", "z15"): -4},
    ("f1", "f2"): {
        ("z11", "z21"): 1, ("z27",): -2, ("z13", "z26"): 2,
        ("z14", "z25"): -2, ("z15", "z24"): -2, ("z16",): 2,
    },
    ("f1", "f3"): {
        ("z11", "z31"): 1, ("z37",): -2, ("z13", "z36"): 2,
        ("z14", "z35"): -2, ("z15",): -2,
    },
    ("f2", "f2"): {("z21", "z21"): 1, ("z26",): 4, ("z24", "z25"): -4},
    ("f2", "f3"): {("z21", "z31"): 1, ("z36",): 2, ("z24", "z35"): -2, ("z25",): -2},
    ("f3", "f3"): {("z31", "z31"): 1, ("z35",): -4},
}

ALL_Z = FREE_COORDS + ("z17", "z26", "z27", "z35", "z36", "z37")


def verify_printed_expansions() -> List[Item]:
    """Compare the published (f_i | f_j) expansions with the form itself."""
    chart = Chart("flag15", ALL_Z)
    zv = {n: MultiPoly.variable(chart, n) for n in chart.variables}
    one = MultiPoly.constant(chart, 1)
    zero = MultiPoly.zero(chart)
    f = {
        "f1": [zv["z11"], one, zv["z13"], zv["z14"], zv["z15"], zv["z16"], zv["z17"]],
        "f2": [zv["z21"], zero, one, zv["z24"], zv["z25"], zv["z26"], zv["z27"]],
        "f3": [zv["z31"], zero, zero, one, zv["z35"], zv["z36"], zv["z37"]],
    }
    items = []
    for (a, b), terms in PRINTED_NULL_EXPANSIONS.items():
        computed = bilinear_R(f[a], f[b])
        printed = MultiPoly.zero(chart)
        for names, coeff in terms.items():
            t = MultiPoly.constant(chart, coeff)
            for n in names:
                t = t * zv[n]
            printed = printed + t
        if computed == printed:
            items.append(
                check(
                    f"expansion:({a}|{b})",
                    f"published ({a}|{b}) expansion matches the bilinear form",
                    True,
                )
            )
        else:
            items.append(
                Item(
                    f"expansion:({a}|{b})",
                    f"published ({a}|{b}) expansion vs the bilinear form",
                    DISCREPANCY,
                    computed=str(computed),
                    expected=str(printed),
                    note="the published expansion has z11 where the form"
                    " yields z11^2" if (a, b) == ("f1", "f1") else "",
                )
            )
    return items


def flag_chart() -> Chart:
    return Chart("flag9", FREE_COORDS)


def verify_symbolic_etas() -> List[Item]:
    """Exact polynomial checks of the closed-form frames over all 9 coordinates."""
    chart = flag_chart()
    coords = {n: MultiPoly.variable(chart, n) for n in FREE_COORDS}
    frame = complete_null_flag(coords)
    items = []
    null_ok = all(
        bilinear_R(list(a), list(b)).is_zero()
        for a in (frame.f1, frame.f2, frame.f3)
        for b in (frame.f1, frame.f2, frame.f3)
    )
    items.append(
        check(
            "symbolic:flag-null",
            "completed flag satisfies all six (f_i|f_j) = 0 identically",
            null_ok,
        )
    )
    v = eta_frames(coords)
    kills = [
        (frame.f1, v.etas, "A(f1) kills eta1..eta4"),
        (frame.f2, v.etas[:2], "A(f2) kills eta1, eta2"),
        (frame.f3, v.etas[:1], "A(f3) kills eta1"),
    ]
    for lam, etas, desc in kills:
        ok = all(all(x.is_zero() for x in _apply_A(lam, e)) for e in etas)
        items.append(check(f"symbolic:{desc.split()[0]}-kernel", desc + " identically", ok))
    q_ok = all(
        q_pair(v.etas[a], v.etas[b]).is_zero() for a in range(4) for b in range(a, 4)
    )
    items.append(
        check(
            "symbolic:eta-q-null",
            "closed-form etas are pairwise Q-null identically",
            q_ok,
        )
    )
    return items


def verify_dimensions() -> List[Item]:
    """Fiber-dimension bookkeeping for the two flag bundles (9 and 11)."""
    items = []
    items.append(
        check(
            "dim:lambda-fiber",
            "the Lambda-flag chart has 9 free coordinates",
            len(FREE_COORDS) == 9,
            computed=str(len(FREE_COORDS)),
            expected="9",
        )
    )
    # null 4-spaces through the graph patch v = S u: Q-nullity forces S + tS = 0
    rows = []
    for a in range(4):
        for b in range(a, 4):
            row = [Fraction(0)] * 16
            row[4 * a + b] += 1
            row[4 * b + a] += 1
            rows.append(row)
    rank, kernel = mat_rank_kernel(rows)
    dim_v4 = len(kernel)
    gr24 = 2 * (4 - 2)
    gr12 = 1 * (2 - 1)
    total = dim_v4 + gr24 + gr12
    items.append(
        check(
            "dim:v-fiber",
            "V-flag fiber dimension: null 4-spaces (6) + Gr(2,4) (4) + Gr(1,2) (1) = 11",
            dim_v4 == 6 and total == 11,
            computed=f"{dim_v4} + {gr24} + {gr12} = {total}",
            expected="6 + 4 + 1 = 11",
        )
    )
    return items


def random_coords(rng: random.Random) -> Dict[str, Fraction]:
    return {n: Fraction(rng.randint(-2, 2)) for n in FREE_COORDS}


def verify_samples(seed: int = 0, samples: int = 100) -> List[Item]:
    """Random-coordinate property checks, including the closed-form cross-check."""
    rng = random.Random(seed)
    null_bad = 0
    dim_bad = 0
    pairing_bad = 0
    mismatches = 0
    for _ in range(samples):
        coords = random_coords(rng)
        frame = complete_null_flag(coords)
        for a in (frame.f1, frame.f2, frame.f3):
            for b in (frame.f1, frame.f2, frame.f3):
                if bilinear_R(list(a), list(b)) != 0:
                    null_bad += 1
        try:
            v = lambda_to_v(frame)
        except ValueError:
            dim_bad += 1
            continue
        for a in range(4):
            for b in range(a, 4):
                if q_pair(v.etas[a], v.etas[b]) != 0:
                    pairing_bad += 1
        closed = eta_frames(coords)
        for got, want in zip(v.etas, closed.etas):
            mismatches += sum(1 for x, y in zip(got, want) if x != y)
    items = [
        check(
            "samples:r-null",
            f"{samples} random flags complete to exactly R-null frames",
            null_bad == 0,
            computed=f"{null_bad} nonzero pairings",
            expected="0",
        ),
        check(
            "samples:dims",
            "kernel dimension profile (4, 2, 1) at every sample",
            dim_bad == 0,
            computed=f"{dim_bad} failures",
            expected="0",
        ),
        check(
            "samples:q-null",
            "every sampled V-flag is exactly Q-null",
            pairing_bad == 0,
            computed=f"{pairing_bad} nonzero pairings",
            expected="0",
        ),
        check(
            "samples:closed-form-crosscheck",
            "kernel-solved frames agree with the published closed forms",
            True,  # a nonzero count is reported, not failed
            computed=f"{mismatches} coefficient mismatches",
            expected="0",
        ),
    ]
    if mismatches:
        items[-1] = Item(
            "samples:closed-form-crosscheck",
            "kernel-solved frames vs the published closed forms",
            DISCREPANCY,
            computed=f"{mismatches} coefficient mismatches",
            expected="0",
            note="nonzero count indicates published coefficient typos",
        )
    return items


def verify_suite(seed: int = 0, samples: int = 100) -> List[Item]:
    items: List[Item] = []
    items.extend(verify_printed_expansions())
    items.extend(verify_symbolic_etas())
    items.extend(verify_dimensions())
    # base-point sanity: all free coordinates zero
    zero_coords = {n: Fraction(0) for n in FREE_COORDS}
    frame0 = complete_null_flag(zero_coords)
    v0 = lambda_to_v(frame0)
    e = lambda k: tuple(Fraction(1 if i == k else 0) for i in range(8))
    items.append(
        check(
            "base-point:etas",
            "at the base point the etas are the Y1, X4, X3, Y2 directions",
            v0.etas == (e(4), e(3), e(2), e(5)),
            computed=str([tuple(map(str, x)) for x in v0.etas]),
            expected="(e5, e4, e3, e6) in (X1..X4, Y1..Y4) numbering",
        )
    )
    items.extend(verify_flag_nullity(v0))
    items.extend(verify_samples(seed, samples))
    return items
