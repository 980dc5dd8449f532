"""The boundary w = 0 of the flat twistor bundle and its G2-contact structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..geomcalc import ChartMap, DiffForm, SymTensor, VectorField, pullback, restrict
from ..symcore import Chart, RatExpr
from .contact import build_contact_data, form_ratio
from .errors import MatchFailed
from .model import BOUNDARY, TWISTOR, objects
from .symmetry import ContactPair, _solve_var


def _fixture(name):
    return objects("boundary")(name)


@lru_cache(maxsize=None)
def g2_contact_pair() -> ContactPair:
    """(la1, up1) on (x0, ..., x4)."""
    return ContactPair(_fixture("la1"), _fixture("up1"))


def printed_generators_pair() -> ContactPair:
    """The structure the printed generators G1..G14 preserve: la1 + 3 d(x2 x3), same tensor."""
    return ContactPair(_fixture("la1_printed_generators"), _fixture("up1"))


def _shear_pull(X: VectorField) -> VectorField:
    """F^*X for F(x) = (x0 - 3 x2 x3, x1, ..., x4), which takes la1 + 3 d(x2 x3) to la1."""
    chart = X.chart
    F = {"x0": RatExpr.var(chart, "x0") - RatExpr.var(chart, "x2") * RatExpr.var(chart, "x3") * 3}
    comps = [c.substitute(F, chart) for c in X.comps]
    x2, x3 = RatExpr.var(chart, "x2"), RatExpr.var(chart, "x3")
    # d(F^-1) with F^-1(y) = (y0 + 3 y2 y3, y1, ..., y4), at F(x): x2, x3 unchanged
    comps[0] = comps[0] + x3 * comps[2] * 3 + x2 * comps[3] * 3
    return VectorField(chart, comps)


def g2_generators(printed: bool = False):
    """G1..G14; by default moved by the shear so that they preserve (la1, up1)."""
    fx = objects("boundary")
    gens = [fx(f"G{i}") for i in range(1, 15)]
    return gens if printed else [_shear_pull(X) for X in gens]


def inclusion() -> ChartMap:
    """The hypersurface w = 0 of the twistor bundle."""
    return ChartMap(BOUNDARY, TWISTOR, {"w": 0})


def adapted_map() -> ChartMap:
    """(x0, ..., x5) -> (x, y, p, q, z, v), straightening the Cauchy characteristic to d/dx5."""
    fx = objects("boundary")
    names = ("x", "y", "p", "q", "z", "v")
    imgs = {n: fx(f"img_{n}") for n in names}
    src = imgs["x"].chart
    return ChartMap(src, BOUNDARY, imgs)


def projection(source: Chart, target: Chart) -> ChartMap:
    return ChartMap(source, target, {})


def _const_ratio(a, b):
    """Constant c with a = c b, for forms or (restricted) tensors, or None."""
    if b.is_zero():
        return None
    k0 = min(b.terms)
    if k0 not in a.terms:
        return None
    c = a.terms[k0] / b.terms[k0]
    if not c.is_constant():
        return None
    return c if (a - b * c).is_zero() else None


@dataclass
class BoundaryReport:
    lambda0: DiffForm
    upsilon0: SymTensor
    adapted_lambda0: DiffForm
    adapted_upsilon0: SymTensor
    checks: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)


def cauchy_report(lam0: DiffForm, ups0: SymTensor, X: VectorField) -> dict:
    out = {}
    out["annihilates_lambda"] = lam0.interior(X).is_zero()
    out["dlambda_mod_lambda"] = lam0.d().interior(X).wedge(lam0).is_zero()
    out["upsilon_invariant"] = restrict(ups0.lie(X), lam0, _solve_var(lam0)).is_zero()
    return out


def boundary_reduction(k=2) -> BoundaryReport:
    if Fraction(k) != 2:
        raise MatchFailed("the boundary reduction is carried out for the flat case k = 2 only")
    data = build_contact_data(2)
    iota = inclusion()
    lam0 = pullback(iota, data.lam)
    ups0 = pullback(iota, objects("liecontact", 2)("upsilon_flat"))
    checks = {}
    checks["iota_lambda"] = (lam0 - _fixture("lambda0_expected")).is_zero()
    checks.update(cauchy_report(lam0, ups0, _fixture("cauchy")))

    phi = adapted_map()
    lam_a = pullback(phi, lam0)
    ups_a = pullback(phi, ups0)
    pair = g2_contact_pair()
    la1, up1 = pair.lam, pair.upsilon
    pr = projection(phi.source, la1.chart)
    la1_up, up1_up = pullback(pr, la1), pullback(pr, up1)
    x5 = VectorField.partial(phi.source, "x5")
    checks["adapted_cauchy_is_d_x5"] = lam_a.interior(x5).is_zero()
    c_lam = _const_ratio(lam_a, la1_up)
    checks["adapted_lambda0_matches"] = c_lam is not None
    var = _solve_var(la1_up)
    c_ups = _const_ratio(restrict(ups_a, la1_up, var), restrict(up1_up, la1_up, var))
    checks["adapted_upsilon0_matches"] = c_ups is not None
    bad = [n for n, ok in checks.items() if not ok]
    if bad:
        raise MatchFailed(f"boundary reduction: {', '.join(bad)}")
    return BoundaryReport(lam0, ups0, lam_a, ups_a, checks, {"lambda": c_lam, "upsilon": c_ups})


def contact_volume_5(lam: DiffForm, order) -> RatExpr:
    dl = lam.d()
    return dl.wedge(dl).wedge(lam).top_coefficient(order)
