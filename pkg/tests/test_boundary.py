from fractions import Fraction

import pytest

from g2twistor.symcore import parse_scalar
from g2twistor.twistor import MatchFailed, boundary_reduction, bracket_closure_report, verify_symmetry
from g2twistor.twistor.boundary import (
    contact_volume_5, g2_contact_pair, g2_generators, printed_generators_pair,
)


@pytest.fixture(scope="module")
def report():
    return boundary_reduction(2)


def test_reduction_checks(report):
    assert all(report.checks.values())


def test_reduction_constants(report):
    assert report.constants["lambda"] == 1
    assert report.constants["upsilon"] == -9


def test_restricted_lambda(report):
    assert report.lambda0.coefficient("z") == parse_scalar("1", report.lambda0.chart)


def test_only_flat():
    with pytest.raises(MatchFailed):
        boundary_reduction(3)


def test_la1_is_contact():
    lam = g2_contact_pair().lam
    order = lam.chart.variables
    assert contact_volume_5(lam, order) == -6


def test_generators_form_g2():
    rep = bracket_closure_report(g2_generators())
    assert rep.dim == 14 and rep.signature == (8, 6, 0) and rep.center_dim == 0


def test_printed_generators_preserve_sheared_form():
    pair, printed = g2_contact_pair(), g2_generators(printed=True)
    assert all(verify_symmetry(X, "g2_contact", printed_generators_pair()).ok for X in printed)
    failing = [i for i, X in enumerate(printed, 1) if not verify_symmetry(X, "g2_contact", pair).ok]
    assert len(failing) >= 9
