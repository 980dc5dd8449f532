from fractions import Fraction

import pytest

from g2twistor.geomcalc import proportional_mod, weyl_tensor
from g2twistor.symcore import parse_scalar
from g2twistor.twistor import build_contact_data, contact_volume, metric_example
from g2twistor.twistor.contact import tensor_ratio, to_twistor
from g2twistor.twistor.model import FLAT_K, TWISTOR, objects


@pytest.mark.parametrize("k", [Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-1), Fraction(5, 2)])
def test_contact_volume(k):
    lam = build_contact_data(k, check=False).lam
    assert contact_volume(lam) == parse_scalar("-6*w", TWISTOR)


def test_cross_checks_at_flat_k():
    rep = build_contact_data(2).report
    assert rep["metric_factor"] == parse_scalar("1/(4860*w^6)", TWISTOR)
    assert rep["rho_factor"] == 1
    assert rep["D_null"] and rep["metric_semibasic"]


def test_metric_example_is_conffl_up_to_sign():
    get = objects("metrics", 2)
    assert tensor_ratio(get("conffl"), metric_example(2)).constant_value() == -1


@pytest.mark.parametrize("k", FLAT_K)
def test_flat_cases_are_conformally_flat(k):
    assert weyl_tensor(metric_example(k)).weyl_is_zero()


def test_k3_not_conformally_flat():
    W = weyl_tensor(metric_example(3))
    assert not W.weyl_is_zero()
    assert all(W.symmetry_report().values())


def test_printed_upsilon_differs_from_coframe():
    data = build_contact_data(2)
    get = objects("liecontact", 2)
    good = proportional_mod(get("upsilon_flat"), data.upsilon, data.lam, "z")
    bad = proportional_mod(get("upsilon_flat_printed"), data.upsilon, data.lam, "z")
    assert good.__class__.__name__ == "Yes"
    assert bad.__class__.__name__ == "No"


def test_lift_of_base_metric_is_horizontal():
    g = to_twistor(metric_example(3))
    iv, iw = TWISTOR.index("v"), TWISTOR.index("w")
    assert all(iv not in key and iw not in key for key in g.terms)
