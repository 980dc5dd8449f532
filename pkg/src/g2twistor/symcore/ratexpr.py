"""Exact rational functions over Q on a chart.

A value is stored as ``num/den`` with ``num, den`` polynomials in the chart
generators.  The slot of the fractional variable q holds ``t = q^(1/root)`` so
rational powers of q become integer powers of t.  Normal form: gcd cancelled,
leading coefficient of ``den`` equal to one, radicals reduced and absent from
``den``, and ``root`` minimal.  Structural equality is therefore semantic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

import flint

from .chart import Chart
from .errors import (
    ChartMismatch,
    DivisionByZero,
    FractionalExponentOnNonDistinguishedVariable,
    IllegalFractionalSubstitution,
    UnknownVariable,
)


def to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, flint.fmpz):
        return Fraction(int(c))
    return Fraction(c)


def to_fmpq(c) -> flint.fmpq:
    c = to_fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def exact_root(c: Fraction, n: int) -> Fraction | None:
    """Rational n-th root of c if it exists (real, so negative c needs odd n)."""
    c = to_fraction(c)
    if n == 1 or c == 0:
        return c
    sign = 1
    if c < 0:
        if n % 2 == 0:
            return None
        sign, c = -1, -c
    rn = flint.fmpz(c.numerator).root(n)
    rd = flint.fmpz(c.denominator).root(n)
    if rn**n != c.numerator or rd**n != c.denominator:
        return None
    return sign * Fraction(int(rn), int(rd))


def _exps(poly, i):
    return [int(m[i]) for m in poly.monoms()]


def _scale_exponent(poly, i, n, nvars):
    if n == 1:
        return poly
    factors = [1] * nvars
    factors[i] = n
    return poly.inflate(factors)


class RatExpr:
    __slots__ = ("chart", "num", "den", "root", "_hash")

    def __init__(self, chart: Chart, num, den, root: int):
        # Use RatExpr.make for anything that may not be normalized.
        self.chart = chart
        self.num = num
        self.den = den
        self.root = root
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def make(cls, chart: Chart, num, den=None, root: int = 1, cancel: bool = True) -> "RatExpr":
        ctx = chart.ctx
        if den is None:
            den = ctx.from_dict({(0,) * chart.nvars: 1})
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return cls.zero(chart)
        if chart.radicals:
            num = _reduce_radicals(chart, num)
            den = _reduce_radicals(chart, den)
            if den.is_zero():
                raise DivisionByZero("denominator vanishes modulo the radical relations")
            if num.is_zero():
                return cls.zero(chart)
            num, den = _rationalize(chart, num, den)
        if cancel and not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            inv = 1 / lc
            num = num * inv
            den = den * inv
        if root > 1:
            i = chart.frac_index
            g = root
            for poly in (num, den):
                for e in _exps(poly, i):
                    g = gcd(g, e)
                    if g == 1:
                        break
                if g == 1:
                    break
            if g > 1:
                factors = [1] * chart.nvars
                factors[i] = g
                num = num.deflate(factors)
                den = den.deflate(factors)
                root //= g
        return cls(chart, num, den, root)

    @classmethod
    def zero(cls, chart: Chart) -> "RatExpr":
        ctx = chart.ctx
        return cls(chart, ctx.from_dict({}), ctx.from_dict({(0,) * chart.nvars: 1}), 1)

    @classmethod
    def const(cls, chart: Chart, value) -> "RatExpr":
        value = to_fraction(value)
        ctx = chart.ctx
        if value == 0:
            return cls.zero(chart)
        return cls(
            chart,
            ctx.from_dict({(0,) * chart.nvars: to_fmpq(value)}),
            ctx.from_dict({(0,) * chart.nvars: 1}),
            1,
        )

    @classmethod
    def var(cls, chart: Chart, name: str) -> "RatExpr":
        i = chart.index(name)
        return cls(chart, chart.ctx.gens()[i], chart.ctx.from_dict({(0,) * chart.nvars: 1}), 1)

    @classmethod
    def monomial(cls, chart: Chart, coeff, exponents: dict[str, Fraction | int]) -> "RatExpr":
        """c * prod v^e; only the fractional variable may take non-integer e."""
        coeff = to_fraction(coeff)
        root = 1
        for v, e in exponents.items():
            e = Fraction(e)
            if e.denominator != 1 and v != chart.fractional:
                raise FractionalExponentOnNonDistinguishedVariable(v)
            root = lcm(root, e.denominator)
        num_exp = [0] * chart.nvars
        den_exp = [0] * chart.nvars
        for v, e in exponents.items():
            i = chart.index(v)
            e = Fraction(e) * root
            if e >= 0:
                num_exp[i] += int(e)
            else:
                den_exp[i] -= int(e)
        ctx = chart.ctx
        if coeff == 0:
            return cls.zero(chart)
        return cls.make(
            chart,
            ctx.from_dict({tuple(num_exp): to_fmpq(coeff)}),
            ctx.from_dict({tuple(den_exp): 1}),
            root,
        )

    @classmethod
    def radical(cls, chart: Chart, base: int, exponent: Fraction) -> "RatExpr":
        """base^exponent using an adjoined radical of the chart."""
        exponent = Fraction(exponent)
        whole, part = divmod(exponent.numerator, exponent.denominator)
        value = cls.const(chart, Fraction(base) ** whole)
        if part == 0:
            return value
        for r in chart.radicals:
            if r.base == base and r.degree % exponent.denominator == 0:
                j = chart.radical_index(r.base, r.degree)
                m = part * (r.degree // exponent.denominator)
                exp = [0] * chart.nvars
                exp[j] = m
                return value * cls.make(chart, chart.ctx.from_dict({tuple(exp): 1}))
        raise FractionalExponentOnNonDistinguishedVariable(
            f"{base}^({exponent}) needs an adjoined radical in the chart"
        )

    def _coerce(self, other) -> "RatExpr":
        if isinstance(other, RatExpr):
            if other.chart != self.chart:
                raise ChartMismatch(f"{self.chart} vs {other.chart}")
            return other
        if isinstance(other, (int, Rational, flint.fmpq, flint.fmpz)):
            return RatExpr.const(self.chart, other)
        return NotImplemented

    # lifting to a common root of q ---------------------------------------

    def lifted(self, root: int):
        """(num, den) with the fractional slot holding q^(1/root)."""
        if root == self.root:
            return self.num, self.den
        f = root // self.root
        if f * self.root != root:
            raise ValueError("root must be a multiple of the current root")
        i = self.chart.frac_index
        n = self.chart.nvars
        return _scale_exponent(self.num, i, f, n), _scale_exponent(self.den, i, f, n)

    def _align(self, other: "RatExpr"):
        if self.root == other.root:
            return self.num, self.den, other.num, other.den, self.root
        r = lcm(self.root, other.root)
        a, b = self.lifted(r)
        c, d = other.lifted(r)
        return a, b, c, d, r

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        an, ad, bn, bd, r = self._align(other)
        if ad == bd:
            return RatExpr.make(self.chart, an + bn, ad, r)
        if ad.is_one():
            return RatExpr.make(self.chart, an * bd + bn, bd, r)
        if bd.is_one():
            return RatExpr.make(self.chart, an + bn * ad, ad, r)
        g = ad.gcd(bd)
        ad_g = ad / g
        bd_g = bd / g
        return RatExpr.make(self.chart, an * bd_g + bn * ad_g, ad * bd_g, r)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return RatExpr(self.chart, -self.num, self.den, self.root)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatExpr.zero(self.chart)
        if other.is_constant_rational():
            c = other.num.leading_coefficient()
            if c == 1:
                return self
            return RatExpr(self.chart, self.num * c, self.den, self.root)
        if self.is_constant_rational():
            return other * self
        an, ad, bn, bd, r = self._align(other)
        return RatExpr.make(self.chart, an * bn, ad * bd, r)

    __rmul__ = __mul__

    def inverse(self) -> "RatExpr":
        if self.is_zero():
            raise DivisionByZero("division by zero expression")
        return RatExpr.make(self.chart, self.den, self.num, self.root)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent):
        e = Fraction(exponent)
        if e.denominator == 1:
            n = e.numerator
            if n == 0:
                return RatExpr.const(self.chart, 1)
            if n < 0:
                return self.inverse() ** (-n)
            if self.chart.radicals:
                out = RatExpr.const(self.chart, 1)
                base = self
                while n:
                    if n & 1:
                        out = out * base
                    n >>= 1
                    if n:
                        base = base * base
                return out
            return RatExpr.make(self.chart, self.num**n, self.den**n, self.root, cancel=False)
        return self.rational_power(e)

    def rational_power(self, e: Fraction) -> "RatExpr":
        """(c * q^a)^e for a monomial; anything else is rejected."""
        e = Fraction(e)
        if self.is_zero():
            if e > 0:
                return self
            raise DivisionByZero("zero to a non-positive power")
        if len(self.num) != 1 or len(self.den) != 1:
            raise FractionalExponentOnNonDistinguishedVariable(
                f"rational power of a non-monomial expression: ({self})^({e})"
            )
        (nm, nc), = self.num.terms()
        (dm, dc), = self.den.terms()
        c = to_fraction(nc) / to_fraction(dc)
        root_c = exact_root(c ** e.numerator, e.denominator)
        if root_c is None:
            raise FractionalExponentOnNonDistinguishedVariable(
                f"{c}^({e}) is not rational"
            )
        exps: dict[str, Fraction] = {}
        fi = self.chart.frac_index
        for i, name in enumerate(self.chart.variables):
            a = int(nm[i]) - int(dm[i])
            if a == 0:
                continue
            a = Fraction(a, self.root if i == fi else 1)
            if i != fi and (a * e).denominator != 1:
                raise FractionalExponentOnNonDistinguishedVariable(name)
            exps[name] = a * e
        for j in range(len(self.chart.variables), self.chart.nvars):
            if nm[j] or dm[j]:
                raise FractionalExponentOnNonDistinguishedVariable("radical base")
        return RatExpr.monomial(self.chart, root_c, exps)

    # predicates --------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant_rational(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_constant(self) -> bool:
        """True when no chart variable occurs (radicals allowed)."""
        nv = len(self.chart.variables)
        for poly in (self.num, self.den):
            for m in poly.monoms():
                if any(m[:nv]):
                    return False
        return True

    def constant_value(self) -> Fraction:
        if not self.is_constant_rational():
            raise ValueError(f"not a rational constant: {self}")
        if self.is_zero():
            return Fraction(0)
        return to_fraction(self.num.leading_coefficient()) / to_fraction(self.den.leading_coefficient())

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def free_variables(self) -> set[str]:
        out = set()
        for poly in (self.num, self.den):
            for m in poly.monoms():
                for i, name in enumerate(self.chart.variables):
                    if m[i]:
                        out.add(name)
        return out

    def __eq__(self, other):
        if isinstance(other, RatExpr):
            if other.chart != self.chart:
                return False
        else:
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
            if other is NotImplemented:
                return other
        return self.root == other.root and self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.is_constant_rational():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.root, self.num.str(), self.den.str()))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # calculus ------------------------------------------------------------------

    def differentiate(self, name: str) -> "RatExpr":
        i = self.chart.index(name)
        n, d = self.num, self.den
        dn = n.derivative(i)
        dd = d.derivative(i)
        if dd.is_zero():
            if dn.is_zero():
                return RatExpr.zero(self.chart)
            num, den = dn, d
        else:
            num, den = dn * d - n * dd, d * d
        if i == self.chart.frac_index and self.root > 1:
            # d/dq = (1/D) t^(1-D) d/dt with t = q^(1/D)
            exp = [0] * self.chart.nvars
            exp[i] = self.root - 1
            den = den * self.chart.ctx.from_dict({tuple(exp): self.root})
        return RatExpr.make(self.chart, num, den, self.root)

    def substitute(self, assignment: dict, target: Chart | None = None) -> "RatExpr":
        """Simultaneous substitution; unassigned variables map to themselves in target."""
        target = target or self.chart
        images = []
        for i, name in enumerate(self.chart.variables):
            if name in assignment:
                img = assignment[name]
                img = img if isinstance(img, RatExpr) else RatExpr.const(target, img)
                if img.chart != target:
                    raise ChartMismatch(f"image of {name} not on target chart")
            elif name in target.variables:
                img = RatExpr.var(target, name)
            else:
                if not any(m[i] for p in (self.num, self.den) for m in p.monoms()):
                    img = RatExpr.zero(target)
                else:
                    raise UnknownVariable(f"{name} has no image on chart {target}")
            if i == self.chart.frac_index and self.root > 1:
                try:
                    img = img.rational_power(Fraction(1, self.root))
                except FractionalExponentOnNonDistinguishedVariable as exc:
                    raise IllegalFractionalSubstitution(
                        f"cannot substitute {img} into fractional {name}: {exc}"
                    ) from None
            images.append(img)
        for r in self.chart.radicals:
            j = target.radical_index(r.base, r.degree)
            used = any(
                m[len(self.chart.variables) + self.chart.radicals.index(r)]
                for p in (self.num, self.den)
                for m in p.monoms()
            )
            if j is None:
                if used:
                    raise UnknownVariable(f"radical {r} not adjoined on target chart")
                images.append(RatExpr.zero(target))
                continue
            exp = [0] * target.nvars
            exp[j] = 1
            images.append(RatExpr.make(target, target.ctx.from_dict({tuple(exp): 1})))
        root = 1
        for img in images:
            root = lcm(root, img.root)
        if all(img.den.is_one() for img in images):
            polys = [img.lifted(root)[0] for img in images]
            num = self.num.compose(*polys, ctx=target.ctx)
            den = self.den.compose(*polys, ctx=target.ctx)
            if den.is_zero():
                raise DivisionByZero(f"denominator of {self} vanishes after substitution")
            return RatExpr.make(target, num, den, root)
        num = _evaluate_poly(self.num, images, target)
        den = _evaluate_poly(self.den, images, target)
        if den.is_zero():
            raise DivisionByZero(f"denominator of {self} vanishes after substitution")
        return num / den

    def evaluate(self, point: dict) -> Fraction:
        """Exact value at a rational point (q-powers must have rational roots)."""
        const_chart = Chart((), None, self.chart.radicals)
        assignment = {v: RatExpr.const(const_chart, point[v]) for v in self.free_variables()}
        value = self.substitute(assignment, const_chart)
        return value.constant_value()

    def to_chart(self, target: Chart) -> "RatExpr":
        """Re-express on a chart containing all occurring variables."""
        if target == self.chart:
            return self
        return self.substitute({}, target)

    # printing ---------------------------------------------------------------

    def _monomial_factors(self, m, latex=False):
        out = []
        fi = self.chart.frac_index
        for i, name in enumerate(self.chart.variables):
            e = int(m[i])
            if not e:
                continue
            ex = Fraction(e, self.root) if i == fi else Fraction(e)
            if ex == 1:
                out.append(name)
            elif latex:
                out.append(f"{name}^{{{ex}}}")
            elif ex.denominator == 1:
                out.append(f"{name}^{ex}")
            else:
                out.append(f"{name}^({ex})")
        for j, r in enumerate(self.chart.radicals):
            e = int(m[len(self.chart.variables) + j])
            if e:
                out.append(r.power_latex(e) if latex else r.power_text(e))
        return out

    def _poly_terms(self, poly, latex=False):
        terms = []
        for m, c in poly.terms():
            c = to_fraction(c)
            factors = self._monomial_factors(m, latex)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if latex:
                body = " ".join(factors)
                if a.denominator != 1:
                    coeff = f"\\tfrac{{{a.numerator}}}{{{a.denominator}}}"
                    body = f"{coeff} {body}".strip()
                elif a != 1 or not factors:
                    body = f"{a.numerator} {body}".strip()
            else:
                if not factors:
                    body = str(a)
                else:
                    body = "*".join(factors)
                    if a.numerator != 1:
                        body = f"{a.numerator}*{body}"
                    if a.denominator != 1:
                        body = f"{body}/{a.denominator}"
            terms.append((sign, body))
        return terms

    @staticmethod
    def _join(terms, sep=" "):
        s = ""
        for k, (sign, body) in enumerate(terms):
            if k == 0:
                s = body if sign == "+" else f"-{body}"
            else:
                s += f" {sign} {body}"
        return s

    def __str__(self):
        if self.is_zero():
            return "0"
        nt = self._poly_terms(self.num)
        ns = self._join(nt)
        if self.den.is_one():
            return ns
        dt = self._poly_terms(self.den)
        ds = self._join(dt)
        if len(nt) > 1:
            ns = f"({ns})"
        if len(dt) > 1 or "*" in ds or "/" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def to_latex(self) -> str:
        if self.is_zero():
            return "0"
        ns = self._join(self._poly_terms(self.num, latex=True))
        if self.den.is_one():
            return ns
        ds = self._join(self._poly_terms(self.den, latex=True))
        return f"\\frac{{{ns}}}{{{ds}}}"

    def __repr__(self):
        return f"RatExpr({self})"


def _evaluate_poly(poly, images, target):
    out = RatExpr.zero(target)
    cache: dict[tuple[int, int], RatExpr] = {}
    for m, c in poly.terms():
        term = RatExpr.const(target, to_fraction(c))
        for i, e in enumerate(m):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = images[i] ** e
                term = term * cache[key]
        out = out + term
    return out


def _reduce_radicals(chart: Chart, poly):
    nv = len(chart.variables)
    needs = False
    for m in poly.monoms():
        for j, r in enumerate(chart.radicals):
            if m[nv + j] >= r.degree:
                needs = True
                break
        if needs:
            break
    if not needs:
        return poly
    acc: dict[tuple, Fraction] = {}
    for m, c in poly.terms():
        m = [int(a) for a in m]
        c = to_fraction(c)
        for j, r in enumerate(chart.radicals):
            q, rem = divmod(m[nv + j], r.degree)
            if q:
                c *= Fraction(r.base) ** q
                m[nv + j] = rem
        key = tuple(m)
        acc[key] = acc.get(key, 0) + c
    return chart.ctx.from_dict({k: to_fmpq(v) for k, v in acc.items() if v != 0})


def _split_radical(chart: Chart, poly, idx: int, degree: int):
    """Coefficients d_0..d_{degree-1} of poly in the radical generator idx."""
    parts: list[dict] = [dict() for _ in range(degree)]
    for m, c in poly.terms():
        e = int(m[idx])
        key = list(m)
        key[idx] = 0
        parts[e][tuple(key)] = c
    ctx = chart.ctx
    return [ctx.from_dict(p) for p in parts]


def _det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _rationalize(chart: Chart, num, den):
    """Move every radical from the denominator to the numerator."""
    nv = len(chart.variables)
    ctx = chart.ctx
    for j, r in enumerate(chart.radicals):
        idx = nv + j
        if not any(m[idx] for m in den.monoms()):
            continue
        n = r.degree
        d = _split_radical(chart, den, idx, n)
        base = ctx.from_dict({(0,) * chart.nvars: r.base})
        # column k holds the coefficients of den * r^k
        M = [[None] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                M[i][k] = d[i - k] if i >= k else base * d[i - k + n]
        det = _det(M)
        cof = []
        for i in range(n):
            minor = [row[:i] + row[i + 1:] for row in M[1:]]
            c = _det(minor) if n > 1 else ctx.from_dict({(0,) * chart.nvars: 1})
            cof.append(-c if i % 2 else c)
        exp = [0] * chart.nvars
        mult = ctx.from_dict({})
        for i, c in enumerate(cof):
            exp[idx] = i
            mult = mult + c * ctx.from_dict({tuple(exp): 1})
        num = _reduce_radicals(chart, num * mult)
        den = _reduce_radicals(chart, det)
    return num, den
