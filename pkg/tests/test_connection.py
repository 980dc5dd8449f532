from fractions import Fraction

import pytest

from g2twistor.symcore import parse_scalar
from g2twistor.twistor import (
    CURVATURE, build_theta_coframe, cartan_connection, connection_curvature, eds_residual,
    solve_connection_forms,
)
from g2twistor.twistor.model import TWISTOR


@pytest.fixture(scope="module")
def flat():
    cf = build_theta_coframe(2)
    return cf, solve_connection_forms(cf)


def test_flat_solution(flat):
    _, sol = flat
    assert sol.residual_zero and sol.solution_dim == 0 and sol.stage1_kernel == 20
    assert sol.curvature.all_zero()


def test_residual_recomputed(flat):
    cf, sol = flat
    res = eds_residual(cf.theta, sol.forms.omega, sol.curvature.values)
    assert len(res) == 14 and all(r.is_zero() for r in res.values())


def test_cartan_connection_is_flat(flat):
    cf, sol = flat
    F = connection_curvature(cartan_connection(cf.theta, sol.forms.omega))
    assert all(x.is_zero() for row in F for x in row)


def test_printed_connection_rows_are_not_flat(flat):
    cf, sol = flat
    F = connection_curvature(cartan_connection(cf.theta, sol.forms.omega, printed=True))
    assert sum(not x.is_zero() for row in F for x in row) > 0


def test_k3_curvature():
    sol = solve_connection_forms(k=3)
    assert sol.residual_zero
    assert set(sol.curvature.nonzero()) == set(CURVATURE)
    assert sol.curvature.values["a1"] == parse_scalar("-4536*v^4*w^4/(25*q^8)", TWISTOR)


@pytest.mark.parametrize("k", [Fraction(-1), Fraction(1, 3)])
def test_other_flat_parameters(k):
    assert solve_connection_forms(k=k).curvature.all_zero()
