from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2twistor import liealg, octonion
from g2twistor.octonion import (
    IP_SCALE, CROSS_SIGN, NotAPlane, NotCompatible, NotNull, SplitOct,
    calibrate, classify_null_plane, compatibility_check, multiply, norm, norm_gram,
)
from g2twistor.symcore import Matrix, signature_of_symmetric

E = [[int(i == k) for i in range(7)] for k in range(7)]
ints = st.integers(-4, 4).map(Fraction)
octs = st.builds(lambda r, im: SplitOct(r, tuple(im)), ints, st.lists(ints, min_size=7, max_size=7))


@given(octs, octs)
def test_norm_is_multiplicative(a, b):
    assert norm(multiply(a, b)) == norm(a) * norm(b)


@given(octs)
def test_conjugate_gives_norm(a):
    p = multiply(a, a.conj())
    assert p.re == norm(a) and not any(p.im)


def test_frozen_constants_are_calibrated():
    found = calibrate()
    assert (IP_SCALE, CROSS_SIGN) in found


def test_norm_signature():
    assert signature_of_symmetric(norm_gram()) == (4, 4, 0)


def test_compatibility_constant():
    assert compatibility_check(liealg.standard_threeform(), liealg.standard_form()).lam == -24


def test_compatibility_scales_with_phi():
    c = compatibility_check(liealg.standard_threeform().scaled(2), liealg.standard_form())
    assert c.lam == -24 * 8


def test_incompatible_form():
    H = liealg.standard_form()
    g = [list(r) for r in H.gram.rows]
    i = next(i for i in range(7) if g[i][i])
    g[i][i] *= 2
    with pytest.raises(NotCompatible):
        compatibility_check(liealg.standard_threeform(), liealg.BilinearForm(Matrix(g)))


def test_cross_product_is_H_dual_of_phi():
    geom = octonion.standard_geometry()
    phi = liealg.standard_threeform()
    for a in range(7):
        for b in range(7):
            c = geom.cross(E[a], E[b])
            assert all(geom.H_eval(c, E[k]) == phi(E[a], E[b], E[k]) for k in range(7))


class TestOrbits:
    def test_special(self):
        assert classify_null_plane(E[0], E[1]).tag == "Special"

    def test_generic_line(self):
        c = classify_null_plane(E[1], E[2])
        assert c.tag == "Generic" and octonion.same_line(c.line, E[0])

    def test_dependent(self):
        with pytest.raises(NotAPlane):
            classify_null_plane(E[1], E[1])

    def test_not_null(self):
        # H pairs e1 with e7
        with pytest.raises(NotNull):
            classify_null_plane(E[0], E[6])
        with pytest.raises(NotNull):
            classify_null_plane(E[3], E[0])

    @given(st.tuples(ints, ints, ints, ints).filter(lambda t: t[0] * t[3] != t[1] * t[2]), st.booleans())
    def test_basis_change_invariance(self, abcd, special):
        a, b, c, d = abcd
        v, w = (E[0], E[1]) if special else (E[1], E[2])
        v2 = [a * x + b * y for x, y in zip(v, w)]
        w2 = [c * x + d * y for x, y in zip(v, w)]
        got = classify_null_plane(v2, w2)
        assert got.tag == ("Special" if special else "Generic")
        if not special:
            assert octonion.same_line(got.line, E[0])
