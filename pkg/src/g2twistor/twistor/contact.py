"""Lie contact data (lambda, rho, Upsilon, g) on the twistor bundle."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..geomcalc import ChartMap, DiffForm, SymTensor, VectorField, pullback
from ..symcore import RatExpr
from .coframe import build_distribution, build_theta_coframe, top_wedge
from .errors import CrossCheckFailed
from .model import BASE, TWISTOR, backend, objects


def form_ratio(a: DiffForm, b: DiffForm):
    """f with a = f b exactly, or None."""
    if b.is_zero():
        return RatExpr.zero(a.chart) if a.is_zero() else None
    k0 = min(b.terms)
    f = a.terms.get(k0, RatExpr.zero(a.chart)) / b.terms[k0]
    return f if (a - b * f).is_zero() else None


def tensor_ratio(a: SymTensor, b: SymTensor):
    if b.is_zero():
        return RatExpr.zero(a.chart) if a.is_zero() else None
    k0 = min(b.terms)
    f = a.terms.get(k0, RatExpr.zero(a.chart)) / b.terms[k0]
    return f if (a - b * f).is_zero() else None


def lift(X: VectorField, chart=TWISTOR) -> VectorField:
    """A field on (x,y,p,q,z) seen on a bigger chart with zero fibre components."""
    return VectorField.from_dict(chart, {n: c.to_chart(chart) for n, c in zip(X.chart.variables, X.comps)})


def to_twistor(T):
    """Pull a form or tensor on (x,y,p,q,z) back along the bundle projection."""
    return pullback(ChartMap(TWISTOR, T.chart, {}), T)


def contact_volume(lam: DiffForm) -> RatExpr:
    """Coefficient of dx^dy^dp^dq^dz^dv^dw in dl^dl^dl^l (chart order)."""
    dl = lam.d()
    return dl.wedge(dl).wedge(dl).wedge(lam).top_coefficient(TWISTOR.variables)


@dataclass
class LieContactData:
    k: object
    lam: DiffForm
    rho: DiffForm
    upsilon: SymTensor
    metric: SymTensor
    report: dict = field(default_factory=dict)


def metric_example(k) -> SymTensor:
    return objects("metrics", k)("metric_example")


@lru_cache(maxsize=None)
def _contact(k) -> LieContactData:
    get = objects("coframe", k)
    return LieContactData(backend(k).k, get("lambda"), get("rho"), get("upsilon"), get("g_theta"))


def build_contact_data(k, check: bool = True) -> LieContactData:
    cf = build_theta_coframe(k, check=check)
    data = _contact(cf.k)
    if check and not data.report:
        data.report = cross_checks(data, cf)
        bad = [n for n, v in data.report.items() if v is False or v is None]
        if bad:
            raise CrossCheckFailed(f"Lie contact data at k = {data.k}: {', '.join(bad)}")
    return data


def cross_checks(data: LieContactData, cf) -> dict:
    out = {}
    g = data.metric
    iv, iw = TWISTOR.index("v"), TWISTOR.index("w")
    out["metric_semibasic"] = all(iv not in key and iw not in key for key in g.terms)
    x1, x2 = (lift(X) for X in build_distribution(data.k))
    out["D_null"] = all(g.evaluate(a, b).is_zero() for a, b in ((x1, x1), (x1, x2), (x2, x2)))
    f = tensor_ratio(g, to_twistor(metric_example(data.k)))
    out["metric_proportional"] = f is not None
    out["metric_factor"] = f
    # rho = f dtheta0 on ker(lambda): compare after wedging with lambda
    r = form_ratio(data.rho.wedge(data.lam), cf.theta[0].d().wedge(data.lam))
    out["rho_matches_dtheta0"] = r is not None
    out["rho_factor"] = r
    out["contact_volume"] = contact_volume(data.lam)
    out["contact_volume_nonzero"] = not out["contact_volume"].is_zero()
    return out
