"""Randomized identities of the exact calculus (200 derandomized examples each)."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from g2twistor import liealg
from g2twistor.geomcalc import ChartMap, lie_bracket, pullback
from g2twistor.symcore import Affine, Inconsistent, Matrix, Unique, exact_linear_solve, rank

from strategies import CHART, SOURCE, forms, matrices, polynomials, vector_fields


@given(st.integers(0, 1).flatmap(forms))
def test_d_squared_is_zero(w):
    assert w.d().d().is_zero()


@given(forms(1), forms(1))
def test_leibniz_rule(a, b):
    assert (a.wedge(b).d() - (a.d().wedge(b) - a.wedge(b.d()))).is_zero()


@given(vector_fields(), st.integers(0, 2).flatmap(forms))
def test_cartan_formula(X, w):
    lhs = w.lie(X)
    rhs = w.d().interior(X) + (w.interior(X).d() if w.degree > 0 else w.zero(CHART, 0))
    assert (lhs - rhs).is_zero()


@given(vector_fields(), vector_fields(), vector_fields())
def test_jacobi_vector_fields(X, Y, Z):
    s = lie_bracket(lie_bracket(X, Y), Z) + lie_bracket(lie_bracket(Y, Z), X) + lie_bracket(lie_bracket(Z, X), Y)
    assert s.is_zero()


_G2 = liealg.build_models().g2
small = st.lists(st.integers(-2, 2), min_size=14, max_size=14)


@given(small, small, small)
def test_jacobi_g2(a, b, c):
    x, y, z = (_G2.element(v) for v in (a, b, c))
    s = x.bracket(y).bracket(z).flat()
    for u, v, w in ((y, z, x), (z, x, y)):
        s = [p + q for p, q in zip(s, u.bracket(v).bracket(w).flat())]
    assert not any(s)


@st.composite
def chart_maps(draw):
    imgs = {v: draw(polynomials(SOURCE, max_terms=2)) for v in CHART.variables}
    return ChartMap(SOURCE, CHART, imgs)


@given(chart_maps(), st.integers(0, 1).flatmap(forms))
def test_pullback_commutes_with_d(phi, w):
    assert (pullback(phi, w.d()) - pullback(phi, w).d()).is_zero()


@given(chart_maps(), forms(1), forms(1))
def test_pullback_commutes_with_wedge(phi, a, b):
    assert (pullback(phi, a.wedge(b)) - pullback(phi, a).wedge(pullback(phi, b))).is_zero()


def _mul(rows, x):
    return [sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in rows]


@given(matrices())
def test_solver_certificates(data):
    rows, b = data
    res = exact_linear_solve(Matrix(rows), b)
    if isinstance(res, Inconsistent):
        y = res.certificate
        cols = list(zip(*rows))
        assert all(sum(a * c for a, c in zip(y, col)) == 0 for col in cols)
        assert sum(a * c for a, c in zip(y, b)) != 0
    else:
        assert _mul(rows, res.solution) == b
        if isinstance(res, Affine):
            for k in res.kernel:
                assert any(k) and not any(_mul(rows, k))
            assert rank(Matrix(rows)) + len(res.kernel) == len(rows[0])
            assert rank(Matrix(list(res.kernel))) == len(res.kernel)
        else:
            assert isinstance(res, Unique)
