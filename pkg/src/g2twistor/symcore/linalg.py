"""Exact linear algebra over Q and over the rational-function field.

Elimination is fraction-free (Bareiss) on ``[A | I]``: over the integers when
A is constant, over flint polynomials otherwise.  The identity block records
the row operations T with T A = E, so the right-hand side never enters the
elimination; solving many systems with one matrix costs one elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import NotSymmetric, ShapeMismatch
from .ratexpr import RatExpr


class Matrix:
    """Immutable rectangular matrix of Fractions or RatExprs."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(_as_entry(x) for x in r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        return cls([[Fraction(0)] * n for _ in range(m)])

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix(list(zip(*self.rows))) if self.rows else Matrix([])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc if not isinstance(acc, int) else Fraction(acc))
            out.append(row)
        return Matrix(out)

    def apply(self, vec: Sequence):
        if len(vec) != self.ncols:
            raise ShapeMismatch(f"{self.shape} applied to vector of length {len(vec)}")
        out = []
        for r in self.rows:
            acc = Fraction(0)
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash(self.rows)

    def trace(self):
        acc = Fraction(0)
        for i in range(min(self.shape)):
            acc = acc + self.rows[i][i]
        return acc

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def __repr__(self):
        return "Matrix(" + "; ".join(" ".join(str(x) for x in r) for r in self.rows) + ")"


def _as_entry(x):
    if isinstance(x, RatExpr):
        return x
    return Fraction(x)


# --- fraction-free elimination ---------------------------------------------


@dataclass(frozen=True)
class Unique:
    solution: tuple


@dataclass(frozen=True)
class Affine:
    solution: tuple
    kernel: tuple


@dataclass(frozen=True)
class Inconsistent:
    certificate: tuple


class _IntDomain:
    """Clearing domain Z for constant matrices."""

    def __init__(self):
        self.zero = 0
        self.one = 1

    def clear_row(self, row):
        fr = [x.constant_value() if isinstance(x, RatExpr) else Fraction(x) for x in row]
        L = 1
        for x in fr:
            L = lcm(L, x.denominator)
        return [int(x * L) for x in fr], L

    @staticmethod
    def exact_div(a, b):
        q, r = divmod(a, b)
        assert r == 0, "Bareiss division not exact"
        return q

    @staticmethod
    def to_field(a):
        return Fraction(a)


class _PolyDomain:
    """Clearing domain Q[generators] for rational-function matrices."""

    def __init__(self, chart, root):
        self.chart = chart
        self.root = root
        ctx = chart.ctx
        self.zero = ctx.from_dict({})
        self.one = ctx.from_dict({(0,) * chart.nvars: 1})

    def clear_row(self, row):
        parts = []
        for x in row:
            if isinstance(x, RatExpr):
                parts.append(x.lifted(self.root))
            else:
                parts.append((self.one * _fmpq(x), self.one))
        L = self.one
        for _, d in parts:
            if not d.is_one():
                L = L * (d / L.gcd(d))
        return [n * (L / d) for n, d in parts], L

    @staticmethod
    def exact_div(a, b):
        return a / b

    def to_field(self, a):
        return RatExpr.make(self.chart, a, None, self.root)


def _fmpq(x):
    import flint

    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _domain_for(rows):
    chart = None
    root = 1
    for r in rows:
        for x in r:
            if isinstance(x, RatExpr) and not x.is_constant_rational():
                if chart is None:
                    chart = x.chart
                root = lcm(root, x.root)
    if chart is None:
        return _IntDomain()
    if chart.radicals and any(
        isinstance(x, RatExpr) and not x.is_zero() and _has_radical(x) for r in rows for x in r
    ):
        raise NotImplementedError("elimination with adjoined radicals in the matrix")
    return _PolyDomain(chart, root)


def _has_radical(x: RatExpr) -> bool:
    nv = len(x.chart.variables)
    return any(any(m[nv:]) for m in x.num.monoms())


@dataclass
class Elimination:
    """Result of Bareiss on [A | I]: T A = E with E in echelon form."""

    E: list
    T: list
    pivots: list
    domain: object
    nrows: int
    ncols: int

    @property
    def rank(self):
        return len(self.pivots)


def bareiss(A: Matrix, track: bool = True) -> Elimination:
    m, n = A.shape
    dom = _domain_for(A.rows)
    rows = []
    for i, r in enumerate(A.rows):
        cleared, L = dom.clear_row(r)
        if track:
            ident = [dom.zero] * m
            ident[i] = L
            cleared = cleared + ident
        rows.append(cleared)
    width = n + (m if track else 0)
    prev = dom.one
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, width):
                val = piv * row[j]
                if f and prow[j]:
                    val = val - f * prow[j]
                row[j] = dom.exact_div(val, prev) if val else val
            row[c] = dom.zero
        prev = piv
        pivots.append(c)
        r += 1
    E = [row[:n] for row in rows]
    T = [row[n:] for row in rows] if track else None
    return Elimination(E, T, pivots, dom, m, n)


def rank(A: Matrix) -> int:
    if A.nrows == 0 or A.ncols == 0:
        return 0
    return bareiss(A, track=False).rank


def _apply_T(el: Elimination, b):
    out = []
    for row in el.T:
        acc = None
        for t, x in zip(row, b):
            if t and x:
                term = el.domain.to_field(t) * x
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else Fraction(0))
    return out


def _back_substitute(el: Elimination, rhs, free_col=None):
    n = el.ncols
    x = [Fraction(0)] * n
    if free_col is not None:
        x[free_col] = Fraction(1)
    to_field = el.domain.to_field
    for i in range(el.rank - 1, -1, -1):
        c = el.pivots[i]
        acc = rhs[i] if rhs is not None else Fraction(0)
        row = el.E[i]
        for j in range(c + 1, n):
            if row[j] and x[j]:
                acc = acc - to_field(row[j]) * x[j]
        x[c] = acc / to_field(row[c]) if acc else Fraction(0)
    return tuple(x)


def solve_with(el: Elimination, b):
    if len(b) != el.nrows:
        raise ShapeMismatch(f"matrix has {el.nrows} rows, right-hand side {len(b)}")
    b = [_as_entry(x) for x in b]
    c = _apply_T(el, b)
    for i in range(el.rank, el.nrows):
        if c[i]:
            return Inconsistent(tuple(el.domain.to_field(t) for t in el.T[i]))
    x = _back_substitute(el, c)
    free = [j for j in range(el.ncols) if j not in set(el.pivots)]
    if not free:
        return Unique(x)
    kernel = tuple(_back_substitute(el, None, f) for f in free)
    return Affine(x, kernel)


def exact_linear_solve(A: Matrix, b: Sequence):
    if not isinstance(A, Matrix):
        A = Matrix(A)
    if len(b) != A.nrows:
        raise ShapeMismatch(f"matrix has {A.nrows} rows, right-hand side {len(b)}")
    if A.ncols == 0:
        if any(b):
            return Inconsistent(tuple(Fraction(int(i == next(k for k, y in enumerate(b) if y))) for i in range(len(b))))
        return Unique(())
    return solve_with(bareiss(A), b)


def kernel_basis(A: Matrix):
    res = exact_linear_solve(A, [Fraction(0)] * A.nrows)
    return res.kernel if isinstance(res, Affine) else ()


def inverse(A: Matrix) -> Matrix:
    n = A.nrows
    if n != A.ncols:
        raise ShapeMismatch("inverse of a non-square matrix")
    el = bareiss(A)
    if el.rank != n:
        raise ZeroDivisionError("singular matrix")
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        res = solve_with(el, e)
        cols.append(res.solution)
    return Matrix(list(zip(*cols)))


def signature_of_symmetric(S: Matrix):
    """Inertia (p, n, z) by symmetric pivoting with 2x2 blocks."""
    if not isinstance(S, Matrix):
        S = Matrix(S)
    if S.nrows != S.ncols:
        raise NotSymmetric("matrix is not square")
    a = []
    for r in S.rows:
        row = []
        for x in r:
            if isinstance(x, RatExpr):
                if not x.is_constant_rational():
                    raise ValueError("signature needs constant entries")
                x = x.constant_value()
            row.append(Fraction(x))
        a.append(row)
    n = len(a)
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) differs from ({j},{i})")
    pos = neg = zero = 0
    idx = list(range(n))
    while idx:
        k = next((i for i in idx if a[i][i] != 0), None)
        if k is not None:
            d = a[k][k]
            if d > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in idx if i != k]
            for i in rest:
                if a[i][k]:
                    f = a[i][k] / d
                    for j in rest:
                        if a[k][j]:
                            a[i][j] -= f * a[k][j]
            idx = rest
            continue
        i0 = idx[0]
        j0 = next((j for j in idx[1:] if a[i0][j] != 0), None)
        if j0 is None:
            zero += 1
            idx = idx[1:]
            continue
        # block [[0, b], [b, 0]] has one positive and one negative eigenvalue
        b = a[i0][j0]
        pos += 1
        neg += 1
        rest = [i for i in idx if i not in (i0, j0)]
        for i in rest:
            for j in rest:
                corr = (a[i][i0] * a[j0][j] + a[i][j0] * a[i0][j]) / b
                if corr:
                    a[i][j] -= corr
        idx = rest
    return pos, neg, zero
