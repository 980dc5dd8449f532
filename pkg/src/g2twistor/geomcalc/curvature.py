"""Levi-Civita curvature of a metric given as a symmetric 2-tensor, down to Weyl."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..symcore import Matrix, RatExpr, inverse
from .fields import SymTensor


class DegenerateMetric(ValueError):
    pass


@dataclass
class Curvature:
    n: int
    g: list
    ginv: list
    christoffel: dict  # (a, b, c) -> Gamma^a_{bc}
    riemann: dict  # (a, b, c, d) -> R_{abcd}, lowered
    ricci: list
    scalar: RatExpr
    schouten: list
    weyl: dict  # (a, b, c, d) -> W_{abcd}, nonzero entries only

    def weyl_is_zero(self) -> bool:
        return not self.weyl

    def W(self, a, b, c, d) -> RatExpr:
        return self.weyl.get((a, b, c, d), self.scalar * 0)

    def symmetry_report(self) -> dict:
        n = self.n
        W = self.W
        idx = range(n)
        antisym = all(
            (W(a, b, c, d) + W(b, a, c, d)).is_zero() and (W(a, b, c, d) + W(a, b, d, c)).is_zero()
            for a, b, c, d in product(idx, repeat=4)
        )
        pair = all((W(a, b, c, d) - W(c, d, a, b)).is_zero() for a, b, c, d in product(idx, repeat=4))
        bianchi = all(
            (W(a, b, c, d) + W(a, c, d, b) + W(a, d, b, c)).is_zero() for a, b, c, d in product(idx, repeat=4)
        )
        trace = True
        for b, d in product(idx, repeat=2):
            acc = self.scalar * 0
            for a, c in product(idx, repeat=2):
                gi = self.ginv[a][c]
                if not gi.is_zero():
                    w = W(a, b, c, d)
                    if not w.is_zero():
                        acc = acc + gi * w
            if not acc.is_zero():
                trace = False
                break
        return {"antisymmetry": antisym, "pair_symmetry": pair, "first_bianchi": bianchi, "trace_free": trace}


def weyl_tensor(metric: SymTensor) -> Curvature:
    chart = metric.chart
    n = chart.dim
    g = metric.metric_matrix()
    try:
        ginv = inverse(Matrix(g)).rows
    except ZeroDivisionError as exc:
        raise DegenerateMetric("metric has vanishing determinant") from exc
    zero = RatExpr.zero(chart)
    ginv = [[x if isinstance(x, RatExpr) else RatExpr.const(chart, x) for x in row] for row in ginv]
    names = chart.variables
    dg = [[[g[i][j].differentiate(names[k]) for k in range(n)] for j in range(n)] for i in range(n)]

    # Gamma_{c,ab} = (d_a g_bc + d_b g_ac - d_c g_ab) / 2, then raise c
    low = {}
    for a in range(n):
        for b in range(a, n):
            for c in range(n):
                v = (dg[b][c][a] + dg[a][c][b] - dg[a][b][c]) * Fraction(1, 2)
                low[(c, a, b)] = low[(c, b, a)] = v
    gamma = {}
    for a in range(n):
        for b in range(n):
            for c in range(b, n):
                acc = zero
                for e in range(n):
                    if not ginv[a][e].is_zero() and not low[(e, b, c)].is_zero():
                        acc = acc + ginv[a][e] * low[(e, b, c)]
                gamma[(a, b, c)] = gamma[(a, c, b)] = acc

    # R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
    up = {}
    for a, b in product(range(n), repeat=2):
        for c in range(n):
            for d in range(c + 1, n):
                v = gamma[(a, d, b)].differentiate(names[c]) - gamma[(a, c, b)].differentiate(names[d])
                for e in range(n):
                    x, y = gamma[(a, c, e)], gamma[(e, d, b)]
                    if not x.is_zero() and not y.is_zero():
                        v = v + x * y
                    x, y = gamma[(a, d, e)], gamma[(e, c, b)]
                    if not x.is_zero() and not y.is_zero():
                        v = v - x * y
                up[(a, b, c, d)] = v
                up[(a, b, d, c)] = -v
        for c in range(n):
            up[(a, b, c, c)] = zero
    R = {}
    for a, b, c, d in product(range(n), repeat=4):
        acc = zero
        for e in range(n):
            if not g[a][e].is_zero() and not up[(e, b, c, d)].is_zero():
                acc = acc + g[a][e] * up[(e, b, c, d)]
        R[(a, b, c, d)] = acc
    ric = [[sum((up[(a, b, a, d)] for a in range(n)), zero) for d in range(n)] for b in range(n)]
    scal = zero
    for b, d in product(range(n), repeat=2):
        if not ginv[b][d].is_zero() and not ric[b][d].is_zero():
            scal = scal + ginv[b][d] * ric[b][d]
    if n < 3:
        schouten = [[zero] * n for _ in range(n)]
        weyl = {}
    else:
        s = scal * Fraction(1, 2 * (n - 1))
        schouten = [[(ric[i][j] - s * g[i][j]) * Fraction(1, n - 2) for j in range(n)] for i in range(n)]
        P = schouten
        weyl = {}
        for a, b, c, d in product(range(n), repeat=4):
            kn = g[a][c] * P[b][d] + g[b][d] * P[a][c] - g[a][d] * P[b][c] - g[b][c] * P[a][d]
            w = R[(a, b, c, d)] - kn
            if not w.is_zero():
                weyl[(a, b, c, d)] = w
    return Curvature(n, g, ginv, gamma, R, ric, scal, schouten, weyl)
