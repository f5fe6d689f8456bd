"""Polynomial vector fields, 1-forms, Lie brackets, derived flags on a single chart."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import mat_rank, solve_exact
from .poly import Chart, ChartMismatchError, MultiPoly

Point = Dict[str, Fraction]


def origin(chart: Chart) -> Point:
    return {v: Fraction(0) for v in chart.variables}


def random_point(chart: Chart, rng: random.Random, lo: int = -2, hi: int = 2) -> Point:
    return {v: Fraction(rng.randint(lo, hi)) for v in chart.variables}


class VectorField:
    """First-order derivation with polynomial components, one per chart variable."""

    __slots__ = ("chart", "components", "name")

    def __init__(self, chart: Chart, components: Sequence[MultiPoly], name: str = ""):
        components = tuple(components)
        if len(components) != chart.dimension:
            raise ValueError("component count != chart dimension")
        for c in components:
            if c.chart != chart:
                raise ChartMismatchError("component on a different chart")
        self.chart = chart
        self.components = components
        self.name = name

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        z = MultiPoly.zero(chart)
        return cls(chart, [z] * chart.dimension)

    @classmethod
    def coordinate(cls, chart: Chart, var: str, name: str = "") -> "VectorField":
        """The coordinate field d/d(var)."""
        comps = [MultiPoly.zero(chart)] * chart.dimension
        comps[chart.index(var)] = MultiPoly.constant(chart, 1)
        return cls(chart, comps, name or f"d/d{var}")

    @classmethod
    def from_dict(cls, chart: Chart, comps: Dict[str, MultiPoly], name: str = "") -> "VectorField":
        z = MultiPoly.zero(chart)
        return cls(chart, [comps.get(v, z) for v in chart.variables], name)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def apply(self, scalar: MultiPoly) -> MultiPoly:
        """Directional derivative of a scalar: sum_j comp_j * d(scalar)/dv_j."""
        if scalar.chart != self.chart:
            raise ChartMismatchError("scalar on a different chart")
        out = MultiPoly.zero(self.chart)
        for v, comp in zip(self.chart.variables, self.components):
            if not comp.is_zero():
                out = out + comp * scalar.diff(v)
        return out

    def evaluate(self, point: Point) -> Tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.chart != other.chart:
            raise ChartMismatchError("fields on different charts")
        return VectorField(
            self.chart, [a + b for a, b in zip(self.components, other.components)]
        )

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, [-c for c in self.components])

    def __mul__(self, scalar) -> "VectorField":
        return VectorField(self.chart, [c * scalar for c in self.components])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorField)
            and self.chart == other.chart
            and self.components == other.components
        )

    def __repr__(self) -> str:
        label = self.name or "VectorField"
        nz = [
            f"({c})d/d{v}"
            for v, c in zip(self.chart.variables, self.components)
            if not c.is_zero()
        ]
        return f"{label}: " + (" + ".join(nz) if nz else "0")

    def to_json(self) -> dict:
        return {
            "chart": list(self.chart.variables),
            "name": self.name,
            "components": [c.to_json() for c in self.components],
        }


class OneForm:
    """Differential 1-form with polynomial coefficients, one per chart variable."""

    __slots__ = ("chart", "coefficients", "name")

    def __init__(self, chart: Chart, coefficients: Sequence[MultiPoly], name: str = ""):
        coefficients = tuple(coefficients)
        if len(coefficients) != chart.dimension:
            raise ValueError("coefficient count != chart dimension")
        for c in coefficients:
            if c.chart != chart:
                raise ChartMismatchError("coefficient on a different chart")
        self.chart = chart
        self.coefficients = coefficients
        self.name = name

    @classmethod
    def differential(cls, chart: Chart, var: str, name: str = "") -> "OneForm":
        """The coordinate differential d(var)."""
        coeffs = [MultiPoly.zero(chart)] * chart.dimension
        coeffs[chart.index(var)] = MultiPoly.constant(chart, 1)
        return cls(chart, coeffs, name or f"d{var}")

    @classmethod
    def from_dict(cls, chart: Chart, coeffs: Dict[str, MultiPoly], name: str = "") -> "OneForm":
        z = MultiPoly.zero(chart)
        return cls(chart, [coeffs.get(v, z) for v in chart.variables], name)

    def __add__(self, other: "OneForm") -> "OneForm":
        if self.chart != other.chart:
            raise ChartMismatchError("forms on different charts")
        return OneForm(
            self.chart, [a + b for a, b in zip(self.coefficients, other.coefficients)]
        )

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self + (-other)

    def __neg__(self) -> "OneForm":
        return OneForm(self.chart, [-c for c in self.coefficients])

    def __mul__(self, scalar) -> "OneForm":
        return OneForm(self.chart, [c * scalar for c in self.coefficients])

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {
            "chart": list(self.chart.variables),
            "name": self.name,
            "coefficients": [c.to_json() for c in self.coefficients],
        }


def extend_field(f: VectorField, chart: Chart, name: str = "") -> VectorField:
    """Trivial lift of a field to a larger chart (zero on the new variables)."""
    from .poly import extend_poly

    comps = {
        v: extend_poly(c, chart)
        for v, c in zip(f.chart.variables, f.components)
        if not c.is_zero()
    }
    return VectorField.from_dict(chart, comps, name or f.name)


def lie_bracket(x: VectorField, y: VectorField) -> VectorField:
    """Commutator [x, y] of derivations, exact."""
    if x.chart != y.chart:
        raise ChartMismatchError("fields on different charts")
    chart = x.chart
    comps = []
    for k in range(chart.dimension):
        comps.append(x.apply(y.components[k]) - y.apply(x.components[k]))
    return VectorField(chart, comps)


def pair(form: OneForm, field: VectorField) -> MultiPoly:
    """Natural pairing <form, field> = sum_i coeff_i * component_i."""
    if form.chart != field.chart:
        raise ChartMismatchError("form and field on different charts")
    out = MultiPoly.zero(form.chart)
    for a, b in zip(form.coefficients, field.components):
        if not (a.is_zero() or b.is_zero()):
            out = out + a * b
    return out


def two_form_eval(form: OneForm, x: VectorField, y: VectorField) -> MultiPoly:
    """d(form)(x, y) via the Cartan formula: x<a,y> - y<a,x> - <a,[x,y]>."""
    return x.apply(pair(form, y)) - y.apply(pair(form, x)) - pair(form, lie_bracket(x, y))


@dataclass(frozen=True)
class Distribution:
    chart: Chart
    generators: Tuple[VectorField, ...]

    def __init__(self, chart: Chart, generators: Sequence[VectorField]):
        generators = tuple(generators)
        if not generators:
            raise ValueError("distribution needs at least one generator")
        for g in generators:
            if g.chart != chart:
                raise ChartMismatchError("generator on a different chart")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "generators", generators)


@dataclass(frozen=True)
class GrowthVector:
    ranks: Tuple[int, ...]
    base_point: Tuple[Fraction, ...]

    def __post_init__(self):
        rs = self.ranks
        if any(rs[i] > rs[i + 1] for i in range(len(rs) - 1)):
            raise ValueError("growth vector must be non-decreasing")


def fields_matrix(fields: Sequence[VectorField], point: Point) -> List[List[Fraction]]:
    return [list(f.evaluate(point)) for f in fields]


def rank_at(fields: Sequence[VectorField], point: Point) -> int:
    return mat_rank(fields_matrix(fields, point))


def constant_combination(
    field: VectorField, basis: Sequence[VectorField]
) -> Optional[List[Fraction]]:
    """Exact rational constants c with field = sum c_i basis_i, else None.

    Equations: one per (component index, monomial) pair appearing anywhere.
    """
    chart = field.chart
    monos = set()
    for k in range(chart.dimension):
        monos.update((k, e) for e in field.components[k].terms)
        for b in basis:
            monos.update((k, e) for e in b.components[k].terms)
    keys = sorted(monos)
    rows = [
        [b.components[k].terms.get(e, Fraction(0)) for b in basis] for k, e in keys
    ]
    rhs = [field.components[k].terms.get(e, Fraction(0)) for k, e in keys]
    return solve_exact(rows, rhs)


def derived_flag_fields(
    d: Distribution, max_depth: int = 16
) -> List[List[VectorField]]:
    """Weak derived flag D^(i+1) = D^(i) + [D, D^(i)] as lists of new fields per stage.

    A candidate bracket is kept only when it is not a rational-constant
    combination of the fields collected so far; this prunes the closure while
    preserving the span (brackets are bilinear over constants).
    """
    stages: List[List[VectorField]] = [list(d.generators)]
    collected: List[VectorField] = list(d.generators)
    for _ in range(1, max_depth):
        new: List[VectorField] = []
        for g in d.generators:
            for f in stages[-1]:
                br = lie_bracket(g, f)
                if br.is_zero():
                    continue
                if constant_combination(br, collected + new) is None:
                    new.append(br)
        if not new:
            break
        stages.append(new)
        collected.extend(new)
    return stages


def derived_flag(d: Distribution, point: Point, max_depth: int = 16) -> GrowthVector:
    """Pointwise growth vector of the weak derived flag at the point."""
    stages = derived_flag_fields(d, max_depth)
    ranks: List[int] = []
    acc: List[VectorField] = []
    for stage in stages:
        acc.extend(stage)
        r = rank_at(acc, point)
        if ranks and r == ranks[-1]:
            break
        ranks.append(r)
    base = tuple(point[v] for v in d.chart.variables)
    return GrowthVector(tuple(ranks), base)


def span_membership(v: VectorField, d: Distribution, point: Point) -> bool:
    """True iff v(point) lies in the span of the generators at the point."""
    if v.chart != d.chart:
        raise ChartMismatchError("field and distribution on different charts")
    gens = fields_matrix(d.generators, point)
    r0 = mat_rank(gens)
    return mat_rank(gens + [list(v.evaluate(point))]) == r0


def frobenius_check(
    d: Distribution,
    point: Point,
    sample_points: Optional[Sequence[Point]] = None,
    seed: int = 0,
) -> bool:
    """True iff all pairwise generator brackets stay in the pointwise span.

    Checked at `point` and at sample points (5 seeded random rational points
    when none are given). Raises if the generators are dependent at `point`.
    """
    gens = d.generators
    if rank_at(gens, point) != len(gens):
        raise ValueError("generators are dependent at the test point")
    if sample_points is None:
        rng = random.Random(seed)
        sample_points = [random_point(d.chart, rng) for _ in range(5)]
    pts = [point] + list(sample_points)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            br = lie_bracket(gens[i], gens[j])
            if br.is_zero():
                continue
            # symbolic fast path: a constant combination lies in the span
            # at every point
            if constant_combination(br, gens) is not None:
                continue
            for p in pts:
                if not span_membership(br, d, p):
                    return False
    return True
