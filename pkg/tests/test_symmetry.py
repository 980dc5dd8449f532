from fractions import Fraction

import pytest

from g2twistor.geomcalc import VectorField
from g2twistor.symcore import signature_of_symmetric
from g2twistor.twistor import (
    IncompatibleParameters, KindMismatch, NotASymmetry, NotClosed, bracket_closure_report,
    build_contact_data, calibrate_signs, catalog, metric_example, prolong_symmetry, verify_symmetry,
)
from g2twistor.twistor.model import BASE, TWISTOR, objects
from g2twistor.twistor.symmetry import SIGMA_A, SIGMA_B, constant_combination

K_CONF = Fraction(-2, 9)


def test_calibrated_signs_are_frozen():
    assert calibrate_signs(3) == (SIGMA_A, SIGMA_B) == (1, 1)


@pytest.mark.parametrize("k", [Fraction(3), Fraction(5, 2), Fraction(1, 2)])
def test_prolongation_reproduces_lifts(k):
    base = catalog("dist_k", k, verify=False)
    printed = objects("liecontact", k)
    for n, X in zip(base.names, base.generators):
        assert prolong_symmetry(X, k) == printed("Xt" + n[1:]), n


def test_half_skips_seventh():
    cat = catalog("liecontact_k", Fraction(1, 2))
    assert "Xt7" not in cat.names and "Xt7" in cat.skipped


def test_prolong_rejects_non_symmetry():
    X = VectorField.partial(BASE, "q")
    with pytest.raises(NotASymmetry):
        prolong_symmetry(X, 3)


def test_liecontact_k3():
    cat = catalog("liecontact_k", 3)
    rep = bracket_closure_report(cat)
    assert len(cat) == 7 and rep.closed and rep.dim == 7


def test_dist2_full():
    rep = bracket_closure_report(catalog("dist2_full", 2))
    assert rep.dim == 14 and rep.signature == (8, 6, 0)


def test_conformal_catalog_with_rational_root():
    cat = catalog("conf_k", K_CONF)
    assert cat.names[-2:] == ["X8", "X9"]
    assert bracket_closure_report(cat).closed


def test_conformal_catalog_irrational_root_skips():
    cat = catalog("conf_k", 3)
    assert set(cat.skipped) == {"X8", "X9"}


def test_conf_k_excludes_flat():
    with pytest.raises(IncompatibleParameters):
        catalog("conf_k", 2)


def test_kind_mismatch():
    X = VectorField.partial(TWISTOR, "z")
    with pytest.raises(KindMismatch):
        verify_symmetry(X, "conformal", build_contact_data(2))
    with pytest.raises(KindMismatch):
        verify_symmetry(X, "rotation", None)


def test_fail_certificate():
    res = verify_symmetry(VectorField.partial(BASE, "q"), "conformal", metric_example(3))
    assert not res.ok and "lie_derivative" in res.certificate


def test_closure_failure_is_reported():
    get = objects("symmetries", 2)
    gens = [get("X1"), get("X4")]
    with pytest.raises(NotClosed):
        bracket_closure_report(gens)
    assert not bracket_closure_report(gens, raise_on_failure=False).closed


def test_constant_combination():
    get = objects("symmetries", 2)
    a, b = get("X1"), get("X2")
    assert constant_combination(a * 3 - b, [a, b]) == (3, -1)


def test_subalgebra_signature_k2():
    cat = catalog("liecontact2_full", 2, verify=False)
    rep = bracket_closure_report(cat.generators[:14])
    assert signature_of_symmetric(rep.killing) == (8, 6, 0)


class TestPrintedVariants:
    """The transcriptions kept verbatim fail where the corrected ones pass."""

    def test_x8_printed(self):
        get = objects("symmetries", K_CONF, extra={"s": Fraction(25, 9)})
        g = metric_example(K_CONF)
        assert verify_symmetry(get("X8"), "conformal", g).ok
        assert not verify_symmetry(get("X8_printed"), "conformal", g).ok

    def test_x9_printed(self):
        get = objects("symmetries", K_CONF, extra={"s": Fraction(25, 9)})
        g = metric_example(K_CONF)
        assert verify_symmetry(get("X9"), "conformal", g).ok
        assert not verify_symmetry(get("X9_printed"), "conformal", g).ok

    @pytest.mark.parametrize("name", ["Yt7", "Zh4"])
    def test_liecontact_printed(self, name):
        get = objects("liecontact", 2)
        data = build_contact_data(2)
        assert verify_symmetry(get(name), "lie_contact", data).ok
        assert not verify_symmetry(get(name + "_printed"), "lie_contact", data).ok
