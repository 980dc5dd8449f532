"""The distribution D_k, its prolongation S and the rigid coframe on the twistor bundle."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce

from ..geomcalc import DiffForm, VectorField, span_growth
from ..symcore import Matrix, RatExpr, rank
from .errors import CrossCheckFailed, TranscriptionSelfCheckFailed
from .model import BASE, TWISTOR, PowerLawBackend, backend, objects


def build_distribution(k) -> tuple[VectorField, VectorField]:
    """Generators of D_h = span(d_x + p d_y + q d_p + h d_z, d_q); checks growth (2,3,5)."""
    b = backend(k)
    h = b.derivative(0, BASE)
    one = RatExpr.const(BASE, 1)
    x1 = VectorField.from_dict(BASE, {"x": one, "y": RatExpr.var(BASE, "p"), "p": RatExpr.var(BASE, "q"), "z": h})
    x2 = VectorField.partial(BASE, "q")
    g = span_growth([x1, x2], 3)
    if g != [2, 3, 5]:
        raise CrossCheckFailed(f"D_k at k = {b.k} has growth {g}, expected [2, 3, 5]")
    return x1, x2


def prolonged_distribution(k) -> tuple[VectorField, VectorField, VectorField]:
    """S = span(xi(v, w), d_v, d_w) on the twistor bundle."""
    get = objects("coframe", k)
    return get("xi"), get("xi_v"), get("xi_w")


def top_wedge(forms) -> DiffForm:
    return reduce(lambda a, b: a.wedge(b), forms)


@dataclass
class CoframeFamily:
    backend: PowerLawBackend
    theta: tuple
    checks: dict = field(default_factory=dict)

    @property
    def k(self):
        return self.backend.k

    @property
    def chart(self):
        return TWISTOR

    def self_checks(self) -> dict:
        """Named exact identities; each value is True when it holds."""
        th = self.theta
        out = {}
        top = top_wedge(th)
        out["top_wedge_nonzero"] = not top.is_zero()
        for a in range(7):
            out[f"integrable_{a}"] = th[a].d().wedge(top).is_zero()
        leaf = top_wedge(th[:5])
        for a in range(5):
            out[f"leaf_integrable_{a}"] = th[a].d().wedge(leaf).is_zero()
        iv, iw = TWISTOR.index("v"), TWISTOR.index("w")
        for a in range(5):
            out[f"semibasic_{a}"] = all(iv not in key and iw not in key for key in th[a].terms)
        lam = objects("coframe", self.k)("lambda")
        c = th[0].coefficient("z")
        out["theta0_rescaled_is_lambda"] = (not c.is_zero()) and (th[0] * c.inverse() - lam).is_zero()
        return out


@lru_cache(maxsize=None)
def _coframe(k) -> CoframeFamily:
    get = objects("coframe", k)
    return CoframeFamily(backend(k), tuple(get(f"theta{i}") for i in range(7)))


def build_theta_coframe(k, check: bool = True) -> CoframeFamily:
    cf = _coframe(backend(k).k)
    if check and not cf.checks:
        checks = cf.self_checks()
        failed = [n for n, ok in checks.items() if not ok]
        if failed:
            raise TranscriptionSelfCheckFailed(f"coframe at k = {cf.k}: {', '.join(failed)}")
        cf.checks = checks
    return cf


def in_span(fields, v: VectorField) -> bool:
    """Exact module membership: rank does not grow."""
    M = [list(f.comps) for f in fields]
    return rank(Matrix(M + [list(v.comps)])) == rank(Matrix(M))


def s_growth(k) -> list[int]:
    return span_growth(list(prolonged_distribution(k)), 3)


def s_characterization(k) -> dict:
    """Kernel of the bracket map L^2 S -> [S,S]/S.

    Returns the rank of the map and whether its kernel is spanned by d_v ^ d_w,
    i.e. the vertical bundle is the unique rank 2 subbundle on which brackets vanish mod S.
    """
    xi, xv, xw = prolonged_distribution(k)
    S = [xi, xv, xw]
    from ..geomcalc import lie_bracket

    pairs = {(0, 1): lie_bracket(xi, xv), (0, 2): lie_bracket(xi, xw), (1, 2): lie_bracket(xv, xw)}
    base = [list(f.comps) for f in S]
    r0 = rank(Matrix(base))
    images = {}
    for key, b in pairs.items():
        images[key] = rank(Matrix(base + [list(b.comps)])) - r0
    total = rank(Matrix(base + [list(b.comps) for b in pairs.values()])) - r0
    kernel_is_vertical = images[(1, 2)] == 0 and images[(0, 1)] == 1 and images[(0, 2)] == 1 and total == 2
    return {"map_rank": total, "kernel_dim": 3 - total, "kernel_is_vertical": kernel_is_vertical}
