"""Vector fields, differential forms and symmetric tensors on a chart."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..symcore import ChartMismatch, RatExpr
from ..symcore.chart import Chart


class NotEliminable(ValueError):
    pass


def _scalar(chart: Chart, c) -> RatExpr:
    if isinstance(c, RatExpr):
        if c.chart != chart:
            raise ChartMismatch(f"{c.chart} vs {chart}")
        return c
    return RatExpr.const(chart, c)


def _check(a, b):
    if a.chart != b.chart:
        raise ChartMismatch(f"{a.chart} vs {b.chart}")


def _accumulate(acc: dict, key, value: RatExpr):
    old = acc.get(key)
    acc[key] = value if old is None else old + value


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if not v.is_zero()}


def _term_text(c: RatExpr, basis: str, latex=False) -> tuple[str, str]:
    """(sign, body) for coefficient * basis."""
    sep = "\\," if latex else "*"
    if c.is_constant_rational():
        v = c.constant_value()
        a = abs(v)
        sign = "-" if v < 0 else "+"
        if a == 1:
            return sign, basis
        if latex and a.denominator != 1:
            return sign, f"\\tfrac{{{a.numerator}}}{{{a.denominator}}}{sep}{basis}"
        return sign, f"{a}{sep}{basis}"
    sign = "+"
    if len(c.num) == 1 and str(c).startswith("-"):
        sign, c = "-", -c
    s = c.to_latex() if latex else str(c)
    if len(c.num) > 1:
        s = f"\\left({s}\\right)" if latex else f"({s})"
    return sign, f"{s}{sep}{basis}"


def _join(parts):
    if not parts:
        return "0"
    out = ""
    for k, (sign, body) in enumerate(parts):
        if k == 0:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


# --- vector fields -----------------------------------------------------------------


class VectorField:
    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: Sequence):
        if len(comps) != chart.dim:
            raise ValueError("one component per chart variable")
        self.chart = chart
        self.comps = tuple(_scalar(chart, c) for c in comps)

    @classmethod
    def from_dict(cls, chart: Chart, comps: dict) -> "VectorField":
        z = RatExpr.zero(chart)
        return cls(chart, [comps.get(v, z) for v in chart.variables])

    @classmethod
    def partial(cls, chart: Chart, name: str) -> "VectorField":
        i = chart.index(name)
        return cls(chart, [1 if j == i else 0 for j in range(chart.dim)])

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, [0] * chart.dim)

    def __getitem__(self, name: str) -> RatExpr:
        return self.comps[self.chart.index(name)]

    def apply(self, f: RatExpr) -> RatExpr:
        """X(f)."""
        acc = RatExpr.zero(self.chart)
        for c, v in zip(self.comps, self.chart.variables):
            if not c.is_zero():
                df = f.differentiate(v)
                if not df.is_zero():
                    acc = acc + c * df
        return acc

    def __add__(self, other: "VectorField"):
        _check(self, other)
        return VectorField(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "VectorField"):
        _check(self, other)
        return VectorField(self.chart, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorField(self.chart, [-a for a in self.comps])

    def __mul__(self, f):
        f = _scalar(self.chart, f)
        return VectorField(self.chart, [f * a for a in self.comps])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.chart == other.chart and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def substitute_chart(self, mapping):
        return VectorField(self.chart, [mapping(c) for c in self.comps])

    def __str__(self):
        parts = []
        for c, v in zip(self.comps, self.chart.variables):
            if not c.is_zero():
                parts.append(_term_text(c, f"@{v}"))
        return _join(parts)

    def to_latex(self):
        parts = []
        for c, v in zip(self.comps, self.chart.variables):
            if not c.is_zero():
                parts.append(_term_text(c, f"\\partial_{{{v}}}", latex=True))
        return _join(parts)

    __repr__ = __str__


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _check(X, Y)
    return VectorField(X.chart, [X.apply(b) - Y.apply(a) for a, b in zip(X.comps, Y.comps)])


# --- differential forms --------------------------------------------------------


def _sort_sign(idx: Sequence[int]):
    """(sign, sorted tuple) or (0, None) if an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class DiffForm:
    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int, terms: dict | None = None):
        self.chart = chart
        self.degree = degree
        self.terms = _clean(terms or {})

    @classmethod
    def build(cls, chart: Chart, degree: int, items: Iterable) -> "DiffForm":
        acc: dict = {}
        for idx, c in items:
            sign, key = _sort_sign(idx)
            if sign == 0:
                continue
            c = _scalar(chart, c)
            if c.is_zero():
                continue
            _accumulate(acc, key, c if sign > 0 else -c)
        return cls(chart, degree, acc)

    @classmethod
    def function(cls, f: RatExpr) -> "DiffForm":
        return cls(f.chart, 0, {(): f})

    @classmethod
    def differential(cls, chart: Chart, name: str) -> "DiffForm":
        return cls(chart, 1, {(chart.index(name),): RatExpr.const(chart, 1)})

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "DiffForm":
        return cls(chart, degree, {})

    def coefficient(self, *names: str) -> RatExpr:
        sign, key = _sort_sign([self.chart.index(n) for n in names])
        if sign == 0:
            return RatExpr.zero(self.chart)
        c = self.terms.get(key, RatExpr.zero(self.chart))
        return c if sign > 0 else -c

    def __add__(self, other):
        if not isinstance(other, DiffForm):
            if self.degree == 0:
                other = DiffForm.function(_scalar(self.chart, other))
            else:
                return NotImplemented
        _check(self, other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"adding forms of degree {self.degree} and {other.degree}")
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(acc, k, v)
        return DiffForm(self.chart, max(self.degree, other.degree) if not self.terms or not other.terms else self.degree, acc)

    __radd__ = __add__

    def __neg__(self):
        return DiffForm(self.chart, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, f):
        if isinstance(f, DiffForm):
            if f.degree == 0 or self.degree == 0:
                return self.wedge(f)
            return NotImplemented
        f = _scalar(self.chart, f)
        if f.is_zero():
            return DiffForm.zero(self.chart, self.degree)
        return DiffForm(self.chart, self.degree, {k: f * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def wedge(self, other: "DiffForm") -> "DiffForm":
        _check(self, other)
        acc: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                sign, key = _sort_sign(ka + kb)
                if sign == 0:
                    continue
                prod = ca * cb
                _accumulate(acc, key, prod if sign > 0 else -prod)
        return DiffForm(self.chart, self.degree + other.degree, acc)

    __xor__ = wedge

    def d(self) -> "DiffForm":
        items = []
        for key, c in self.terms.items():
            for j, v in enumerate(self.chart.variables):
                if j in key:
                    continue
                dc = c.differentiate(v)
                if not dc.is_zero():
                    items.append(((j,) + key, dc))
        return DiffForm.build(self.chart, self.degree + 1, items)

    def interior(self, X: VectorField) -> "DiffForm":
        _check(self, X)
        if self.degree == 0:
            return DiffForm.zero(self.chart, 0)
        acc: dict = {}
        for key, c in self.terms.items():
            for pos, i in enumerate(key):
                xi = X.comps[i]
                if xi.is_zero():
                    continue
                val = xi * c
                if pos % 2:
                    val = -val
                _accumulate(acc, key[:pos] + key[pos + 1:], val)
        return DiffForm(self.chart, self.degree - 1, acc)

    def lie(self, X: VectorField) -> "DiffForm":
        if self.degree == 0:
            f = self.terms.get((), RatExpr.zero(self.chart))
            return DiffForm.function(X.apply(f))
        return self.interior(X).d() + self.d().interior(X)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            if self.degree == 0:
                try:
                    return (self - other).is_zero()
                except Exception:
                    return NotImplemented
            return NotImplemented
        return self.chart == other.chart and (self - other).is_zero() and (
            self.degree == other.degree or self.is_zero()
        )

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def map_coefficients(self, fn) -> "DiffForm":
        return DiffForm(self.chart, self.degree, {k: fn(v) for k, v in self.terms.items()})

    def basis_text(self, key, latex=False):
        names = [self.chart.variables[i] for i in key]
        if latex:
            return " \\wedge ".join(f"d{n}" for n in names)
        return "^".join(f"d{n}" for n in names)

    def __str__(self):
        if self.degree == 0:
            return str(self.terms.get((), 0))
        return _join([_term_text(c, self.basis_text(k)) for k, c in sorted(self.terms.items())])

    def to_latex(self):
        if self.degree == 0:
            c = self.terms.get(())
            return c.to_latex() if c is not None else "0"
        return _join([_term_text(c, self.basis_text(k, True), latex=True) for k, c in sorted(self.terms.items())])

    __repr__ = __str__

    def top_coefficient(self, order: Sequence[str]) -> RatExpr:
        """Coefficient against d(order[0])^...^d(order[-1]), sign made explicit."""
        return self.coefficient(*order)


# --- symmetric tensors ---------------------------------------------------------


class SymTensor:
    """Polynomial in commuting differentials; dx*dy = (dx(x)dy + dy(x)dx)/2."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int, terms: dict | None = None):
        self.chart = chart
        self.degree = degree
        self.terms = _clean(terms or {})

    @classmethod
    def build(cls, chart: Chart, degree: int, items: Iterable) -> "SymTensor":
        acc: dict = {}
        for idx, c in items:
            c = _scalar(chart, c)
            if not c.is_zero():
                _accumulate(acc, tuple(sorted(idx)), c)
        return cls(chart, degree, acc)

    @classmethod
    def function(cls, f: RatExpr) -> "SymTensor":
        return cls(f.chart, 0, {(): f})

    @classmethod
    def differential(cls, chart: Chart, name: str) -> "SymTensor":
        return cls(chart, 1, {(chart.index(name),): RatExpr.const(chart, 1)})

    @classmethod
    def from_form(cls, form: DiffForm) -> "SymTensor":
        if form.degree > 1:
            raise ValueError("only functions and 1-forms are symmetric tensors")
        return cls(form.chart, form.degree, dict(form.terms))

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "SymTensor":
        return cls(chart, degree, {})

    def coefficient(self, *names: str) -> RatExpr:
        key = tuple(sorted(self.chart.index(n) for n in names))
        return self.terms.get(key, RatExpr.zero(self.chart))

    def __add__(self, other):
        if not isinstance(other, SymTensor):
            if self.degree == 0:
                other = SymTensor.function(_scalar(self.chart, other))
            else:
                return NotImplemented
        _check(self, other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"adding tensors of degree {self.degree} and {other.degree}")
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(acc, k, v)
        deg = self.degree if self.terms else other.degree
        return SymTensor(self.chart, deg, acc)

    __radd__ = __add__

    def __neg__(self):
        return SymTensor(self.chart, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymTensor):
            return self.product(other)
        if isinstance(other, DiffForm):
            return self.product(SymTensor.from_form(other))
        f = _scalar(self.chart, other)
        if f.is_zero():
            return SymTensor.zero(self.chart, self.degree)
        return SymTensor(self.chart, self.degree, {k: f * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def product(self, other: "SymTensor") -> "SymTensor":
        _check(self, other)
        acc: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                _accumulate(acc, tuple(sorted(ka + kb)), ca * cb)
        return SymTensor(self.chart, self.degree + other.degree, acc)

    def __pow__(self, n: int) -> "SymTensor":
        n = int(n)
        if n < 0:
            raise ValueError("negative symmetric power")
        out = SymTensor.function(RatExpr.const(self.chart, 1))
        for _ in range(n):
            out = out.product(self)
        return out

    def lie(self, X: VectorField) -> "SymTensor":
        _check(self, X)
        dX = {}
        acc: dict = {}
        for key, c in self.terms.items():
            xc = X.apply(c)
            if not xc.is_zero():
                _accumulate(acc, key, xc)
            seen = {}
            for i in key:
                seen[i] = seen.get(i, 0) + 1
            for i, mult in seen.items():
                if i not in dX:
                    comp = X.comps[i]
                    dX[i] = {j: comp.differentiate(v) for j, v in enumerate(self.chart.variables)}
                rest = list(key)
                rest.remove(i)
                for j, dj in dX[i].items():
                    if dj.is_zero():
                        continue
                    _accumulate(acc, tuple(sorted(rest + [j])), c * dj * mult)
        return SymTensor(self.chart, self.degree, acc)

    def substitute_differential(self, name: str, form: DiffForm) -> "SymTensor":
        """Replace d(name) by a 1-form everywhere."""
        if form.degree != 1:
            raise ValueError("replacement must be a 1-form")
        i = self.chart.index(name)
        rep = SymTensor.from_form(form)
        powers = {0: SymTensor.function(RatExpr.const(self.chart, 1))}
        acc = SymTensor.zero(self.chart, self.degree)
        for key, c in self.terms.items():
            m = key.count(i)
            if m == 0:
                acc = acc + SymTensor(self.chart, self.degree, {key: c})
                continue
            if m not in powers:
                powers[m] = powers[m - 1].product(rep) if m - 1 in powers else rep ** m
            rest = tuple(k for k in key if k != i)
            base = SymTensor(self.chart, len(rest), {rest: c})
            acc = acc + base.product(powers[m])
        return acc

    def metric_matrix(self):
        """g_ij with Q = sum g_ij dx_i dx_j (so g_ij = c/2 off the diagonal)."""
        if self.degree != 2:
            raise ValueError("metric matrix needs a degree-2 tensor")
        n = self.chart.dim
        z = RatExpr.zero(self.chart)
        g = [[z] * n for _ in range(n)]
        for (i, j), c in self.terms.items():
            if i == j:
                g[i][i] = c
            else:
                g[i][j] = g[j][i] = c * Fraction(1, 2)
        return g

    def evaluate(self, *vectors: VectorField) -> RatExpr:
        """Full contraction T(X_1, ..., X_d) of the symmetric tensor."""
        from itertools import permutations
        from math import factorial

        if len(vectors) != self.degree:
            raise ValueError("need one vector per slot")
        acc = RatExpr.zero(self.chart)
        d = self.degree
        for key, c in self.terms.items():
            s = RatExpr.zero(self.chart)
            for perm in permutations(range(d)):
                term = RatExpr.const(self.chart, 1)
                for slot, vi in zip(key, perm):
                    x = vectors[vi].comps[slot]
                    if x.is_zero():
                        term = None
                        break
                    term = term * x
                if term is not None:
                    s = s + term
            if not s.is_zero():
                acc = acc + c * s
        return acc * Fraction(1, factorial(d))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, SymTensor):
            return NotImplemented
        return self.chart == other.chart and (self - other).is_zero()

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def map_coefficients(self, fn) -> "SymTensor":
        return SymTensor(self.chart, self.degree, {k: fn(v) for k, v in self.terms.items()})

    def basis_text(self, key, latex=False):
        out = []
        i = 0
        while i < len(key):
            j = i
            while j < len(key) and key[j] == key[i]:
                j += 1
            name = self.chart.variables[key[i]]
            m = j - i
            if latex:
                out.append(f"d{name}^{{{m}}}" if m > 1 else f"d{name}")
            else:
                out.append(f"d{name}^{m}" if m > 1 else f"d{name}")
            i = j
        return (" " if latex else "*").join(out)

    def __str__(self):
        if self.degree == 0:
            return str(self.terms.get((), 0))
        return _join([_term_text(c, self.basis_text(k)) for k, c in sorted(self.terms.items())])

    def to_latex(self):
        return _join([_term_text(c, self.basis_text(k, True), latex=True) for k, c in sorted(self.terms.items())])

    __repr__ = __str__
