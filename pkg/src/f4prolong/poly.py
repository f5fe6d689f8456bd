"""Sparse multivariate polynomials with exact rational coefficients over a named chart."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class ChartMismatchError(ValueError):
    """Raised when combining objects that live on different charts."""


class Chart:
    """An ordered list of distinct variable names with an identifying token."""

    __slots__ = ("id", "variables", "_index")

    def __init__(self, chart_id: str, variables: Sequence[str]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("chart variables must be distinct")
        self.id = chart_id
        self.variables = variables
        self._index = {name: k for k, name in enumerate(variables)}

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not on chart {self.id!r}") from None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chart)
            and self.id == other.id
            and self.variables == other.variables
        )

    def __hash__(self) -> int:
        return hash((self.id, self.variables))

    def __repr__(self) -> str:
        return f"Chart({self.id!r}, dim={self.dimension})"


def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def grlex_key(exps: Sequence[int]):
    """Graded-lexicographic sort key (total degree first, then lex)."""
    return (sum(exps), tuple(exps))


class MultiPoly:
    """Sparse polynomial: map from exponent vectors to nonzero rationals.

    Immutable after construction; all operations return new instances.
    """

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: Mapping[tuple, Scalar] | None = None):
        self.chart = chart
        clean: dict[tuple, Fraction] = {}
        if terms:
            n = chart.dimension
            for exps, coeff in terms.items():
                if len(exps) != n:
                    raise ValueError("exponent vector length != chart dimension")
                c = _as_fraction(coeff)
                if c != 0:
                    clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "MultiPoly":
        return cls(chart)

    @classmethod
    def constant(cls, chart: Chart, c: Scalar) -> "MultiPoly":
        return cls(chart, {(0,) * chart.dimension: c})

    @classmethod
    def variable(cls, chart: Chart, name: str) -> "MultiPoly":
        exps = [0] * chart.dimension
        exps[chart.index(name)] = 1
        return cls(chart, {tuple(exps): Fraction(1)})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- ring operations ----------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.chart != other.chart:
            raise ChartMismatchError(
                f"charts differ: {self.chart.id!r} vs {other.chart.id!r}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.chart, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        out = MultiPoly.__new__(MultiPoly)
        out.chart = self.chart
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.chart = self.chart
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.chart, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return MultiPoly.zero(self.chart)
            out = MultiPoly.__new__(MultiPoly)
            out.chart = self.chart
            out.terms = {e: k * c for e, k in self.terms.items()}
            return out
        self._check(other)
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = MultiPoly.__new__(MultiPoly)
        out.chart = self.chart
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.chart, other)
        return (
            isinstance(other, MultiPoly)
            and self.chart == other.chart
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    # -- calculus -----------------------------------------------------

    def diff(self, var: str) -> "MultiPoly":
        """Exact partial derivative with respect to a chart variable."""
        k = self.chart.index(var)
        terms: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            if e[k] == 0:
                continue
            d = list(e)
            d[k] -= 1
            terms[tuple(d)] = c * e[k]
        return MultiPoly(self.chart, terms)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a full assignment of chart variables."""
        vals = []
        for name in self.chart.variables:
            if name not in point:
                raise KeyError(f"point does not assign variable {name!r}")
            vals.append(_as_fraction(point[name]))
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v**k
            total += term
        return total

    def evaluate_seq(self, values: Sequence) -> object:
        """Value at an ordered assignment (rationals or floats); no exactness check."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def substitute(self, assign: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials (on the same chart) for some variables."""
        result = MultiPoly.zero(self.chart)
        for e, c in self.terms.items():
            term = MultiPoly.constant(self.chart, c)
            for name, k in zip(self.chart.variables, e):
                if not k:
                    continue
                base = assign.get(name)
                if base is None:
                    base = MultiPoly.variable(self.chart, name)
                for _ in range(k):
                    term = term * base
            result = result + term
        return result

    # -- presentation / serialization ---------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.sorted_terms()):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.chart.variables, e)
                if k
            )
            if mono:
                parts.append(f"{c}*{mono}" if abs(c) != 1 else ("-" + mono if c < 0 else mono))
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "chart": list(self.chart.variables),
            "terms": [
                {"exps": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, chart: Chart | None = None) -> "MultiPoly":
        if chart is None:
            chart = Chart("json", data["chart"])
        elif list(chart.variables) != list(data["chart"]):
            raise ChartMismatchError("serialized chart does not match target chart")
        terms = {
            tuple(t["exps"]): Fraction(int(t["num"]), int(t["den"]))
            for t in data["terms"]
        }
        return cls(chart, terms)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Exact add/sub/mul of polynomials on a shared chart."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_diff(p: MultiPoly, var: str) -> MultiPoly:
    return p.diff(var)


def poly_eval(p: MultiPoly, point: Mapping[str, Scalar]) -> Fraction:
    return p.evaluate(point)


def variables(chart: Chart) -> list[MultiPoly]:
    """Convenience: the chart's coordinate functions as polynomials."""
    return [MultiPoly.variable(chart, v) for v in chart.variables]


def extend_poly(p: MultiPoly, chart: Chart) -> MultiPoly:
    """Reinterpret p on a larger chart containing all of its variables (by name)."""
    if p.chart == chart:
        return p
    idx = [chart.index(v) for v in p.chart.variables]
    terms: dict[tuple, Fraction] = {}
    for e, c in p.terms.items():
        out = [0] * chart.dimension
        for k, power in zip(idx, e):
            out[k] = power
        terms[tuple(out)] = c
    return MultiPoly(chart, terms)
