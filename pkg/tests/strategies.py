"""Hypothesis strategies for small exact objects on a three-variable chart."""

from fractions import Fraction

from hypothesis import strategies as st

from g2twistor.geomcalc import DiffForm, VectorField
from g2twistor.symcore import Chart, RatExpr, parse_scalar

CHART = Chart(("x", "y", "z"))
SOURCE = Chart(("u", "v"))

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polynomials(draw, chart=CHART, max_terms=3, max_deg=2):
    n = draw(st.integers(0, max_terms))
    text = "0"
    for _ in range(n):
        c = draw(coeffs)
        mono = "*".join(f"{v}^{draw(st.integers(0, max_deg))}" for v in chart.variables)
        text += f" + ({c.numerator}/{c.denominator})*{mono}"
    return parse_scalar(text, chart)


@st.composite
def rational_functions(draw, chart=CHART):
    num = draw(polynomials(chart))
    if draw(st.booleans()):
        v = draw(st.sampled_from(chart.variables))
        return num / parse_scalar(f"1 + {v}^2", chart)
    return num


@st.composite
def forms(draw, degree, chart=CHART):
    from itertools import combinations

    out = DiffForm.zero(chart, degree)
    for key in combinations(chart.variables, degree):
        if draw(st.booleans()):
            f = draw(rational_functions(chart))
            basis = DiffForm.function(RatExpr.const(chart, 1))
            for v in key:
                basis = basis.wedge(DiffForm.differential(chart, v))
            out = out + basis * f
    return out


@st.composite
def vector_fields(draw, chart=CHART):
    return VectorField(chart, [draw(polynomials(chart, max_terms=2)) for _ in chart.variables])


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    entries = st.integers(-3, 3).map(Fraction)
    rows = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m))
    b = draw(st.lists(entries, min_size=m, max_size=m))
    return rows, b
