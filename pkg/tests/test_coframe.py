from fractions import Fraction

import pytest

from g2twistor.geomcalc import span_growth
from g2twistor.twistor import (
    DegenerateParameter, build_distribution, build_theta_coframe, s_characterization, s_growth,
)

KS = [Fraction(2), Fraction(3), Fraction(1, 2), Fraction(5, 2)]


@pytest.mark.parametrize("k", KS)
def test_distribution_is_235(k):
    assert span_growth(list(build_distribution(k)), 3) == [2, 3, 5]


@pytest.mark.parametrize("k", KS)
def test_prolonged_growth(k):
    assert s_growth(k) == [3, 5, 7]


@pytest.mark.parametrize("k", KS)
def test_structure_equations(k):
    checks = build_theta_coframe(k, check=False).self_checks()
    assert all(checks.values()), [n for n, ok in checks.items() if not ok]


def test_characterization_kernel_vertical():
    r = s_characterization(3)
    assert r["kernel_is_vertical"] and r["kernel_dim"] == 1


def test_degenerate():
    with pytest.raises(DegenerateParameter):
        build_distribution(0)
