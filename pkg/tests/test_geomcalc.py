from fractions import Fraction

import pytest

from g2twistor.geomcalc import (
    ChartMap, DiffForm, No, SymTensor, VectorField, Yes, lie_bracket, parse_form,
    parse_tensor, parse_vector, proportional_mod, pullback, span_growth, weyl_tensor,
)
from g2twistor.symcore import Chart, ExpressionSyntaxError, parse_scalar

C5 = Chart(("x", "y", "p", "q", "z"), "q")
C4 = Chart(("a", "b", "c", "e"))


def form(t):
    return parse_form(t, C5)


def test_wedge_is_graded():
    a, b = form("dx + q*dy"), form("x*dp")
    assert (a.wedge(b) + b.wedge(a)).is_zero()
    assert a.wedge(a).is_zero()


def test_standard_contact_form():
    lam = form("dz - p*dx - q*dy")
    dl = lam.d()
    assert not dl.wedge(dl).wedge(lam).is_zero()


def test_interior_and_lie():
    w = form("x*dy^dz")
    X = parse_vector("@x + y*@z", C5)
    assert w.interior(X) == form("-x*y*dy")
    assert w.lie(X) == form("dy^dz")


def test_symmetric_power_and_product():
    t = parse_tensor("dx^2", C5)
    assert parse_tensor("dx*dx", C5) == t
    assert parse_tensor("dx*dy", C5) == parse_tensor("dy*dx", C5)


def test_printing_round_trips():
    for text in ("q^(1/2)*dx^dy - dz^dp", "x*dp + dq/q"):
        f = form(text)
        assert form(str(f)) == f
    t = parse_tensor("q^(1/3)*dx*dy - 2*dz^2", C5)
    assert parse_tensor(str(t), C5) == t
    X = parse_vector("x*@y - q^(2/3)*@z", C5)
    assert parse_vector(str(X), C5) == X


def test_wedge_sign_error_message():
    with pytest.raises(ExpressionSyntaxError):
        form("dx*dy")


def test_hilbert_distribution_growth():
    D = [parse_vector("@x + p*@y + q*@p + q^2/2*@z", C5), parse_vector("@q", C5)]
    assert span_growth(D, 3) == [2, 3, 5]


def test_pullback_of_function_form():
    src = Chart(("s", "t"))
    phi = ChartMap(src, C5, {"x": parse_scalar("s*t", src), "y": 0, "p": 0, "q": 1, "z": 0})
    assert pullback(phi, form("dx")) == parse_form("t*ds + s*dt", src)


def test_proportional_mod_contact():
    lam = form("dz - q*dp")
    t1 = parse_tensor("dx*dy + (dz - q*dp)*dq", C5)
    t2 = parse_tensor("3*dx*dy", C5)
    res = proportional_mod(t1, t2, lam, "z")
    assert isinstance(res, Yes) and res.f == parse_scalar("1/3", C5)
    assert isinstance(proportional_mod(parse_tensor("dx^2", C5), t2, lam, "z"), No)


def test_bracket_antisymmetric():
    X = parse_vector("a*@b", C4)
    Y = parse_vector("c*@a + @e", C4)
    assert lie_bracket(X, Y) == -lie_bracket(Y, X)
    assert lie_bracket(X, Y) == parse_vector("-c*@b", C4)


def test_flat_metric_weyl_zero():
    g = parse_tensor("da^2 + db^2 - dc^2 - de^2", C4)
    assert weyl_tensor(g).weyl_is_zero()


def test_conformally_flat_metric():
    g = parse_tensor("(da^2 + db^2 + dc^2 + de^2)/(1 + a^2)^2", C4)
    assert weyl_tensor(g).weyl_is_zero()


def test_product_of_spheres_curvature_is_weyl():
    # S2 x H2 with equal radii is conformally flat; S2 x S2 is not
    plus = parse_tensor("(da^2 + db^2)/(1 + a^2 + b^2)^2 + (dc^2 + de^2)/(1 + c^2 + e^2)^2", C4)
    minus = parse_tensor("(da^2 + db^2)/(1 + a^2 + b^2)^2 + (dc^2 + de^2)/(1 - c^2 - e^2)^2", C4)
    W = weyl_tensor(plus)
    assert not W.weyl_is_zero()
    assert all(W.symmetry_report().values())
    assert weyl_tensor(minus).weyl_is_zero()
