"""Split octonions rebuilt from the bilinear form H and the three-form Phi.

The cross product is the H-dual of Phi: H(x cross y, z) = Phi(x, y, z).  The
polarized norm on the imaginary part is <x, y> = IP_SCALE * H(x, y) and the
product of imaginary units is x*y = CROSS_SIGN * (x cross y) - <x, y> 1.  The two
constants are chosen by the composition law (see ``calibrate``) and frozen here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .liealg import N, BilinearForm, ThreeForm, standard_form, standard_threeform
from .symcore import Matrix, inverse, rank

F = Fraction

IP_SCALE = F(1, 2)
CROSS_SIGN = 1


class NotCompatible(ValueError):
    pass


class NotNull(ValueError):
    pass


class NotAPlane(ValueError):
    pass


def _zero_like(seq):
    for x in seq:
        if not isinstance(x, (int, Fraction)):
            return x * 0
    return F(0)


@dataclass(frozen=True)
class Geometry:
    H: BilinearForm
    phi: ThreeForm
    ip_scale: Fraction = IP_SCALE
    cross_sign: int = CROSS_SIGN

    def __post_init__(self):
        object.__setattr__(self, "_hinv", inverse(self.H.gram))
        object.__setattr__(self, "_t", self.phi.tensor())

    def H_eval(self, x, y):
        acc = _zero_like(list(x) + list(y))
        g = self.H.gram.rows
        for i in range(N):
            if not x[i]:
                continue
            for j in range(N):
                if g[i][j] and y[j]:
                    acc = acc + x[i] * g[i][j] * y[j]
        return acc

    def inner(self, x, y):
        return self.H_eval(x, y) * self.ip_scale

    def cross(self, x, y):
        t = self._t
        w = []
        zero = _zero_like(list(x) + list(y))
        for k in range(N):
            acc = zero
            for a in range(N):
                if not x[a]:
                    continue
                for b in range(N):
                    c = t[a][b][k]
                    if c and y[b]:
                        acc = acc + c * x[a] * y[b]
            w.append(acc)
        hinv = self._hinv.rows
        out = []
        for i in range(N):
            acc = zero
            for k in range(N):
                if hinv[i][k] and w[k]:
                    acc = acc + hinv[i][k] * w[k]
            out.append(acc)
        return tuple(out)


def standard_geometry() -> Geometry:
    return Geometry(standard_form(), standard_threeform())


@dataclass(frozen=True)
class SplitOct:
    re: object
    im: tuple

    @classmethod
    def real(cls, a) -> "SplitOct":
        return cls(a, tuple(F(0) for _ in range(N)))

    @classmethod
    def imaginary(cls, x) -> "SplitOct":
        return cls(F(0), tuple(x))

    def conj(self) -> "SplitOct":
        return SplitOct(self.re, tuple(-x for x in self.im))

    def __add__(self, other):
        return SplitOct(self.re + other.re, tuple(a + b for a, b in zip(self.im, other.im)))

    def __sub__(self, other):
        return SplitOct(self.re - other.re, tuple(a - b for a, b in zip(self.im, other.im)))

    def __eq__(self, other):
        return isinstance(other, SplitOct) and self.re == other.re and all(
            a == b for a, b in zip(self.im, other.im)
        )

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self):
        return not self.re and not any(self.im)


def multiply(a: SplitOct, b: SplitOct, geom: Geometry | None = None) -> SplitOct:
    geom = geom or standard_geometry()
    cr = geom.cross(a.im, b.im)
    re = a.re * b.re - geom.inner(a.im, b.im)
    im = tuple(a.re * y + b.re * x + geom.cross_sign * c for x, y, c in zip(a.im, b.im, cr))
    return SplitOct(re, im)


def norm(a: SplitOct, geom: Geometry | None = None):
    geom = geom or standard_geometry()
    return a.re * a.re + geom.inner(a.im, a.im)


def norm_gram(geom: Geometry | None = None) -> Matrix:
    """Gram matrix of the polarized norm on O' = R + V."""
    geom = geom or standard_geometry()
    g = [[F(0)] * (N + 1) for _ in range(N + 1)]
    g[0][0] = F(1)
    for i in range(N):
        for j in range(N):
            g[i + 1][j + 1] = geom.H.gram.rows[i][j] * geom.ip_scale
    return Matrix(g)


def calibrate(H: BilinearForm | None = None, phi: ThreeForm | None = None, trials: int = 12, seed: int = 0):
    """All (ip_scale, cross_sign) among small candidates for which N is multiplicative
    on random rational samples.  The frozen constants must be among them."""
    H = H or standard_form()
    phi = phi or standard_threeform()
    rng = random.Random(seed)
    scales = [F(1), F(-1), F(1, 2), F(-1, 2), F(2), F(-2)]
    found = []
    samples = []
    for _ in range(trials):
        a = SplitOct(F(rng.randint(-6, 6)), tuple(F(rng.randint(-6, 6)) for _ in range(N)))
        b = SplitOct(F(rng.randint(-6, 6)), tuple(F(rng.randint(-6, 6)) for _ in range(N)))
        samples.append((a, b))
    for s in scales:
        for sign in (1, -1):
            geom = Geometry(H, phi, s, sign)
            if all(norm(multiply(a, b, geom), geom) == norm(a, geom) * norm(b, geom) for a, b in samples):
                found.append((s, sign))
    return found


def cross(x, y, geom: Geometry | None = None):
    return (geom or standard_geometry()).cross(x, y)


# --- compatibility of Phi with H ---------------------------------------------


def _wedge(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            if set(ka) & set(kb):
                continue
            merged = ka + kb
            inversions = sum(1 for i in range(len(merged)) for j in range(i + 1, len(merged)) if merged[i] > merged[j])
            key = tuple(sorted(merged))
            out[key] = out.get(key, F(0)) + (-1) ** inversions * ca * cb
    return {k: v for k, v in out.items() if v}


def _insert(x, phi: ThreeForm) -> dict:
    t = phi.tensor()
    out = {}
    for j, k in combinations(range(N), 2):
        c = sum((x[i] * t[i][j][k] for i in range(N) if x[i]), F(0))
        if c:
            out[(j, k)] = c
    return out


@dataclass(frozen=True)
class Compatibility:
    lam: Fraction
    volume: dict  # the fixed volume element e^1 ^ ... ^ e^7 with coefficient


def compatibility_check(phi: ThreeForm, H: BilinearForm) -> Compatibility:
    """(X -| Phi) ^ (Y -| Phi) ^ Phi = lam H(X, Y) vol with vol = e^1 ^ ... ^ e^7."""
    phi3 = {tuple(i - 1 for i in k): c for k, c in phi.components}
    units = [tuple(F(int(i == k)) for i in range(N)) for k in range(N)]
    ins = [_insert(u, phi) for u in units]
    top = tuple(range(N))
    lam = None
    for i in range(N):
        for j in range(i, N):
            val = _wedge(_wedge(ins[i], ins[j]), phi3).get(top, F(0))
            h = H.gram.rows[i][j]
            if h == 0:
                if val != 0:
                    raise NotCompatible(f"B(e{i + 1}, e{j + 1}) = {val} but H vanishes there")
                continue
            r = val / h
            if lam is None:
                lam = r
            elif r != lam:
                raise NotCompatible(f"ratio {r} at (e{i + 1}, e{j + 1}) differs from {lam}")
    if lam is None or lam == 0:
        raise NotCompatible("the cubic bilinear form vanishes")
    return Compatibility(lam, {tuple(range(1, N + 1)): F(1)})


# --- null 2-planes ----------------------------------------------------------------


@dataclass(frozen=True)
class OrbitClass:
    tag: str  # "Special" or "Generic"
    line: tuple | None = None


def same_line(a, b) -> bool:
    return rank(Matrix([list(a), list(b)])) == 1


def classify_null_plane(v: Sequence, w: Sequence, geom: Geometry | None = None) -> OrbitClass:
    geom = geom or standard_geometry()
    v = tuple(F(x) for x in v)
    w = tuple(F(x) for x in w)
    if rank(Matrix([list(v), list(w)])) != 2:
        raise NotAPlane("v and w are linearly dependent")
    for a, b, name in ((v, v, "H(v,v)"), (w, w, "H(w,w)"), (v, w, "H(v,w)")):
        if geom.H_eval(a, b) != 0:
            raise NotNull(f"{name} = {geom.H_eval(a, b)}")
    line = geom.cross(v, w)
    if not any(line):
        return OrbitClass("Special")
    if geom.H_eval(line, line) != 0:
        raise AssertionError("cross product of a null plane is not null")
    return OrbitClass("Generic", line)
