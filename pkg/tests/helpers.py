"""Shared scene builders for the test suite.

The recurring scenes: the half-plane chart with the invariant frame
e1+ = x*d/dx, e2+ = x*d/dy, the six-field ambient basis it supports together
with its multiplication table, a one-parameter family of left-symmetric
products on the same frame, and the GL2 chart with left/right invariant
fields.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from flataffine import (
    Chart,
    Connection,
    Frame,
    RationalFunction,
    SCAlgebra,
    VectorField,
    connection_from_frame,
)


def chart_xy() -> Chart:
    return Chart("halfplane", ("x", "y"))


def plane_chart() -> Chart:
    return Chart("plane", ("x", "y"))


def aff_frame(chart: Chart) -> Frame:
    return Frame([VectorField(chart, ["x", "0"]), VectorField(chart, ["0", "x"])])


def aff_line_lsa() -> SCAlgebra:
    """e1e1 = 2e1, e1e2 = e2, e2e1 = 0, e2e2 = e1."""
    return SCAlgebra.from_products(
        ("e1", "e2"),
        {("e1", "e1"): {"e1": 2}, ("e1", "e2"): {"e2": 1}, ("e2", "e2"): {"e1": 1}})


def alpha_family(alpha: int) -> SCAlgebra:
    """e1e1 = alpha*e1, e1e2 = e2, e2e1 = e2e2 = 0."""
    return SCAlgebra.from_products(
        ("e1", "e2"),
        {("e1", "e1"): {"e1": alpha}, ("e1", "e2"): {"e2": 1}})


def aff_line_connection(chart: Chart | None = None) -> Connection:
    chart = chart or chart_xy()
    return connection_from_frame(aff_frame(chart), aff_line_lsa())


def alpha_connection(alpha: int, chart: Chart | None = None) -> Connection:
    chart = chart or chart_xy()
    return connection_from_frame(aff_frame(chart), alpha_family(alpha))


SIX_IAT_FIELDS = (
    ("e1-", ("x", "y")),
    ("e2-", ("0", "1")),
    ("C3", ("1/x", "0")),
    ("C4", ("y/x", "0")),
    ("C5", ("x + y^2/x", "0")),
    ("C6", ("-x*y - y^3/x", "x^2 + y^2")),
)


def six_iat_fields(chart: Chart | None = None):
    chart = chart or chart_xy()
    names = [name for name, _ in SIX_IAT_FIELDS]
    fields = [VectorField(chart, coeffs) for _, coeffs in SIX_IAT_FIELDS]
    return names, fields


# Multiplication table of the six invariant-connection fields on the half
# plane; rows are the left factor, entries as {name: coefficient}.
SIX_FIELD_TABLE = {
    ("e1-", "e1-"): {"e1-": 1, "C5": 1},
    ("e1-", "e2-"): {"C4": 1},
    ("e1-", "C4"): {"C4": 1},
    ("e1-", "C5"): {"C5": 2},
    ("e1-", "C6"): {"C6": 2},
    ("e2-", "e1-"): {"e2-": 1, "C4": 1},
    ("e2-", "e2-"): {"C3": 1},
    ("e2-", "C4"): {"C3": 1},
    ("e2-", "C5"): {"C4": 2},
    ("e2-", "C6"): {"e1-": 2, "C5": -2},
    ("C3", "e1-"): {"C3": 2},
    ("C3", "C5"): {"C3": 2},
    ("C3", "C6"): {"e2-": 2, "C4": -2},
    ("C4", "e1-"): {"C4": 2},
    ("C4", "C5"): {"C4": 2},
    ("C4", "C6"): {"e1-": 2, "C5": -2},
    ("C5", "e1-"): {"C5": 2},
    ("C5", "C5"): {"C5": 2},
    ("C5", "C6"): {"C6": 2},
    ("C6", "e1-"): {"C6": 1},
    ("C6", "e2-"): {"C5": 1},
    ("C6", "C4"): {"C5": 1},
}


def six_field_table_algebra() -> SCAlgebra:
    names = [name for name, _ in SIX_IAT_FIELDS]
    return SCAlgebra.from_products(names, SIX_FIELD_TABLE)


ALPHA2_FIELDS = (
    ("C1", ("1/2*x", "0")),
    ("C2", ("0", "1/2*x^2")),
    ("C3", ("0", "y")),
    ("C4", ("0", "1")),
)

# The 4x4 table of the generic case at alpha = 2; rows are the left factor.
ALPHA2_TABLE = {
    ("C1", "C1"): {"C1": 1},
    ("C1", "C2"): {"C2": 1},
    ("C2", "C3"): {"C2": 1},
    ("C3", "C3"): {"C3": 1},
    ("C4", "C3"): {"C4": 1},
}


def alpha2_fields(chart: Chart | None = None):
    chart = chart or chart_xy()
    names = [name for name, _ in ALPHA2_FIELDS]
    fields = [VectorField(chart, coeffs) for _, coeffs in ALPHA2_FIELDS]
    return names, fields


def alpha2_table_algebra() -> SCAlgebra:
    names = [name for name, _ in ALPHA2_FIELDS]
    return SCAlgebra.from_products(names, ALPHA2_TABLE)


# ----- GL2 ---------------------------------------------------------------------


class GL2Scene:
    """Chart, invariant frames and the bi-invariant connection on GL2."""

    def __init__(self):
        n = 2
        self.n = n
        self.chart = Chart("gl2", tuple(f"x{i}{j}"
                                        for i in range(1, n + 1) for j in range(1, n + 1)))
        self.pairs = [(r, s) for r in range(1, n + 1) for s in range(1, n + 1)]
        names = [f"E{r}{s}" for (r, s) in self.pairs]
        products = {}
        for (p, q) in self.pairs:
            for (r, s) in self.pairs:
                if q == r:
                    products[(f"E{p}{q}", f"E{r}{s}")] = {f"E{p}{s}": 1}
        self.constants = SCAlgebra.from_products(names, products)
        self.frame = Frame([self.e_plus(r, s) for (r, s) in self.pairs])
        self.connection = connection_from_frame(self.frame, self.constants)
        quads = list(iproduct(range(1, n + 1), repeat=4))
        self.f_names = [f"x{s}{p}d{r}{q}" for (p, q, r, s) in quads]
        self.f_fields = [self.f_field(p, q, r, s) for (p, q, r, s) in quads]
        self.quads = quads

    def _zero_coeffs(self):
        return [RationalFunction.zero(self.chart) for _ in range(self.chart.dim)]

    def _var(self, i, j):
        return RationalFunction.variable(self.chart, f"x{i}{j}")

    def _axis(self, i, j):
        return self.chart.axis(f"x{i}{j}")

    def e_plus(self, r, s) -> VectorField:
        coeffs = self._zero_coeffs()
        for i in range(1, self.n + 1):
            coeffs[self._axis(i, s)] = self._var(i, r)
        return VectorField(self.chart, coeffs)

    def e_minus(self, r, s) -> VectorField:
        coeffs = self._zero_coeffs()
        for i in range(1, self.n + 1):
            coeffs[self._axis(r, i)] = self._var(s, i)
        return VectorField(self.chart, coeffs)

    def f_field(self, p, q, r, s) -> VectorField:
        """x_{sp} * d/dx_{rq}."""
        coeffs = self._zero_coeffs()
        coeffs[self._axis(r, q)] = self._var(s, p)
        return VectorField(self.chart, coeffs)

    def invariant_fields(self):
        names, fields = [], []
        for (r, s) in self.pairs:
            names.append(f"E+{r}{s}")
            fields.append(self.e_plus(r, s))
        for (r, s) in self.pairs:
            names.append(f"E-{r}{s}")
            fields.append(self.e_minus(r, s))
        return names, fields


# ----- randomized instances ------------------------------------------------------


def random_polynomial(rng, chart: Chart, max_degree: int = 3, max_terms: int = 4):
    from flataffine import Polynomial
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = []
        budget = max_degree
        for _ in range(chart.dim):
            e = rng.randint(0, budget)
            exps.append(e)
            budget -= e
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if coeff:
            terms[tuple(exps)] = terms.get(tuple(exps), Fraction(0)) + coeff
    return Polynomial(chart, {e: c for e, c in terms.items() if c})


def random_rational_function(rng, chart: Chart, max_degree: int = 3):
    num = random_polynomial(rng, chart, max_degree)
    den = random_polynomial(rng, chart, max_degree=2, max_terms=2)
    while den.is_zero():
        den = random_polynomial(rng, chart, max_degree=2, max_terms=2)
    return RationalFunction(num, den)


def random_algebra(rng, dim: int) -> SCAlgebra:
    names = tuple(f"b{i + 1}" for i in range(dim))
    c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if rng.random() < 0.6:
                k = rng.randrange(dim)
                c[i][j][k] = Fraction(rng.choice((-2, -1, 1, 2)))
    return SCAlgebra(names, c)
