"""Charts of the worked examples and the power-law backend h = q^k / (k(k-1))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

from ..symcore import Chart, RatExpr, exact_root
from .errors import DegenerateParameter, IncompatibleParameters
from .fixtures import load

BASE = Chart(("x", "y", "p", "q", "z"), "q")
TWISTOR = Chart(("x", "y", "p", "q", "z", "v", "w"), "q")
BOUNDARY = Chart(("x", "y", "p", "q", "z", "v"), "q")

# parameters where D_k is locally flat
FLAT_K = (Fraction(2), Fraction(2, 3), Fraction(1, 3), Fraction(-1))


def as_k(k) -> Fraction:
    k = Fraction(k)
    if k in (0, 1):
        raise DegenerateParameter(f"k = {k}: q^k/(k(k-1)) does not define a (2,3,5) distribution")
    return k


@dataclass(frozen=True)
class PowerLawBackend:
    k: Fraction

    def __post_init__(self):
        object.__setattr__(self, "k", as_k(self.k))

    def coefficient(self, n: int) -> Fraction:
        """h^(n) = coefficient(n) * q^(k - n)."""
        k = self.k
        return Fraction(prod((k - j for j in range(n)), start=Fraction(1))) / (k * (k - 1))

    def derivative(self, n: int, chart: Chart = BASE) -> RatExpr:
        c = self.coefficient(n)
        if c == 0:
            return RatExpr.zero(chart)
        return RatExpr.monomial(chart, c, {"q": self.k - n})

    def bindings(self, chart: Chart = BASE) -> dict:
        out = {"k": self.k, "h": self.derivative(0, chart)}
        for n in range(1, 6):
            out[f"h{n}"] = self.derivative(n, chart)
        return out


@lru_cache(maxsize=None)
def backend(k) -> PowerLawBackend:
    return PowerLawBackend(Fraction(k))


def conformal_root(k) -> Fraction | None:
    """sqrt(10k^2 - 10k + 5) if rational."""
    k = Fraction(k)
    return exact_root(10 * k * k - 10 * k + 5, 2)


def rational_conformal_ks(count: int = 6):
    """Parameters with a rational conformal root, from the rational parametrization
    through the point (k, root) = (2, 5): k = (10t - 10 - 2t^2) / (10 - t^2)."""
    out = []
    t = Fraction(0)
    seen = set(FLAT_K) | {Fraction(0), Fraction(1), Fraction(1, 2)}
    num = 1
    while len(out) < count:
        for cand in (Fraction(num, d) for d in range(1, 4)):
            for s in (cand, -cand):
                if 10 - s * s == 0:
                    continue
                k = (10 * s - 10 - 2 * s * s) / (10 - s * s)
                if k not in seen and conformal_root(k) is not None:
                    seen.add(k)
                    out.append(k)
        num += 1
    return sorted(out[:count], key=lambda x: (abs(x.numerator) + x.denominator, x))


def objects(fixture: str, k=None, chart: Chart | None = None, extra: dict | None = None):
    """Accessor for fixture objects with the backend bindings installed."""
    fx = load(fixture)

    def get(name):
        c = chart or fx.chart_of(name)
        bind = {}
        if k is not None:
            bind.update(backend(k).bindings(c))
        if extra:
            bind.update(extra)
        return fx.get(name, bind)

    return get


def require_conformal_root(k) -> Fraction:
    s = conformal_root(k)
    if s is None:
        raise IncompatibleParameters(f"sqrt(10k^2 - 10k + 5) is irrational at k = {k}")
    return s
