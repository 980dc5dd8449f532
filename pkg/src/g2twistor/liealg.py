"""Matrix models of so(3,4) and split g2, gradings, Killing forms and the Kostant codifferential.

Everything is exact over Q.  Vectors of V are indexed 0..6 internally; the
three-form keeps the 1-based index triples used when writing it down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .symcore import Affine, Inconsistent, Matrix, bareiss, kernel_basis, rank, solve_with
from .symcore.linalg import Elimination

F = Fraction
N = 7


class InvariantViolation(AssertionError):
    pass


class DependentInput(ValueError):
    pass


class GradingViolation(ValueError):
    def __init__(self, i, j, message=""):
        super().__init__(message or f"bracket of basis elements {i}, {j} leaves the expected degree")
        self.pair = (i, j)


class NonDualBases(ValueError):
    pass


# --- forms on V ------------------------------------------------------------


@dataclass(frozen=True)
class BilinearForm:
    gram: Matrix

    def __call__(self, x: Sequence, y: Sequence):
        acc = F(0)
        for i in range(N):
            if not x[i]:
                continue
            for j in range(N):
                g = self.gram.rows[i][j]
                if g and y[j]:
                    acc = acc + x[i] * g * y[j]
        return acc


def _perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class ThreeForm:
    """Components on increasing 1-based triples (i, j, k)."""

    components: tuple

    @classmethod
    def from_dict(cls, comps: dict) -> "ThreeForm":
        items = []
        for key, c in comps.items():
            if c == 0:
                continue
            if len(set(key)) != 3 or not all(1 <= a <= N for a in key):
                raise ValueError(f"bad index triple {key}")
            order = sorted(range(3), key=lambda t: key[t])
            sign = _perm_sign(order)
            items.append((tuple(key[t] for t in order), sign * F(c)))
        merged: dict = {}
        for k, c in items:
            merged[k] = merged.get(k, F(0)) + c
        return cls(tuple(sorted((k, c) for k, c in merged.items() if c != 0)))

    def as_dict(self) -> dict:
        return dict(self.components)

    def tensor(self):
        t = [[[F(0)] * N for _ in range(N)] for _ in range(N)]
        for (i, j, k), c in self.components:
            idx = (i - 1, j - 1, k - 1)
            for p in permutations(range(3)):
                a, b, d = (idx[p[0]], idx[p[1]], idx[p[2]])
                t[a][b][d] = _perm_sign(p) * c
        return t

    def __call__(self, x, y, z):
        t = self._tensor_cache()
        acc = F(0)
        for a in range(N):
            if not x[a]:
                continue
            for b in range(N):
                if not y[b]:
                    continue
                for d in range(N):
                    c = t[a][b][d]
                    if c and z[d]:
                        acc = acc + c * x[a] * y[b] * z[d]
        return acc

    def _tensor_cache(self):
        cache = self.__dict__.get("_t")
        if cache is None:
            cache = self.tensor()
            object.__setattr__(self, "_t", cache)
        return cache

    def insert(self, x):
        """x into the first slot: a 2-form as a 7x7 antisymmetric matrix."""
        t = self._tensor_cache()
        return [[sum((x[a] * t[a][b][d] for a in range(N) if x[a]), F(0)) for d in range(N)] for b in range(N)]

    def scaled(self, s) -> "ThreeForm":
        return ThreeForm(tuple((k, c * s) for k, c in self.components if c * s != 0))

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "ThreeForm") -> "ThreeForm":
        d = self.as_dict()
        for k, c in other.components:
            d[k] = d.get(k, F(0)) + c
        return ThreeForm.from_dict(d)

    def __eq__(self, other):
        return isinstance(other, ThreeForm) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for (i, j, k), c in self.components:
            parts.append(f"{c}*e{i}{j}{k}")
        return " + ".join(parts)


TRIPLES = tuple(combinations(range(1, N + 1), 3))


# --- algebra elements and bases ------------------------------------------


@dataclass(frozen=True)
class MatAlgElem:
    matrix: Matrix
    label: str = ""

    def bracket(self, other: "MatAlgElem") -> "MatAlgElem":
        A, B = self.matrix, other.matrix
        return MatAlgElem(A @ B - B @ A)

    def __add__(self, other):
        return MatAlgElem(self.matrix + other.matrix)

    def __sub__(self, other):
        return MatAlgElem(self.matrix - other.matrix)

    def scale(self, c):
        return MatAlgElem(self.matrix.scale(F(c)), self.label)

    def is_zero(self):
        return self.matrix.is_zero()

    def flat(self):
        return tuple(x for r in self.matrix.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, MatAlgElem) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


def combination(elements: Sequence[MatAlgElem], coeffs: Sequence) -> MatAlgElem:
    rows = [[F(0)] * N for _ in range(N)]
    for e, c in zip(elements, coeffs):
        if not c:
            continue
        for i, r in enumerate(e.matrix.rows):
            for j, x in enumerate(r):
                if x:
                    rows[i][j] += c * x
    return MatAlgElem(Matrix(rows))


class Span:
    """Coordinates of matrices with respect to a fixed independent list."""

    def __init__(self, elements: Sequence[MatAlgElem]):
        self.elements = tuple(elements)
        cols = [e.flat() for e in self.elements]
        self.A = Matrix(list(zip(*cols))) if cols else Matrix([[]] * (N * N))
        self._el: Elimination | None = bareiss(self.A) if cols else None

    @property
    def dim(self):
        return self._el.rank if self._el else 0

    def coords(self, x: MatAlgElem):
        """Coordinates of x, or None when x is outside the span."""
        if self._el is None:
            return () if x.is_zero() else None
        res = solve_with(self._el, x.flat())
        if isinstance(res, Inconsistent):
            return None
        return tuple(F(c) for c in res.solution)

    def contains(self, x: MatAlgElem) -> bool:
        return self.coords(x) is not None


@dataclass
class AlgebraBasis:
    elements: tuple
    structure_constants: tuple  # c[i][j][k]: [e_i, e_j] = sum_k c[i][j][k] e_k
    killing: Matrix
    span: Span = field(repr=False)

    @property
    def dim(self):
        return len(self.elements)

    def coords(self, x: MatAlgElem):
        c = self.span.coords(x)
        if c is None:
            raise ValueError("element not in the algebra")
        return c

    def element(self, coeffs) -> MatAlgElem:
        return combination(self.elements, coeffs)

    def bracket_coords(self, a, b):
        """Bracket of two coordinate vectors via structure constants."""
        n = self.dim
        out = [F(0)] * n
        c = self.structure_constants
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n):
                if not b[j]:
                    continue
                f = a[i] * b[j]
                for k, v in enumerate(c[i][j]):
                    if v:
                        out[k] += f * v
        return tuple(out)

    def ad(self, i) -> Matrix:
        n = self.dim
        c = self.structure_constants
        return Matrix([[c[i][j][k] for j in range(n)] for k in range(n)])

    def killing_form(self, a, b):
        acc = F(0)
        K = self.killing.rows
        for i in range(self.dim):
            if a[i]:
                for j in range(self.dim):
                    if b[j] and K[i][j]:
                        acc += a[i] * K[i][j] * b[j]
        return acc

    def labels(self):
        return [e.label for e in self.elements]


def _structure(elements: Sequence[MatAlgElem], span: Span | None = None):
    span = span or Span(elements)
    n = len(elements)
    c = [[None] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = (F(0),) * n
        for j in range(i + 1, n):
            br = elements[i].bracket(elements[j])
            co = span.coords(br)
            if co is None:
                return None, (i, j, br)
            c[i][j] = co
            c[j][i] = tuple(-x for x in co)
    return tuple(tuple(r) for r in c), span


def killing_from_structure(c) -> Matrix:
    n = len(c)
    # ad_i has entries (ad_i)[k][j] = c[i][j][k]; tr(ad_i ad_j) = sum_{k,l} c[i][l][k] c[j][k][l]
    K = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = F(0)
            for k in range(n):
                for l_ in range(n):
                    a = c[i][l_][k]
                    if a:
                        b = c[j][k][l_]
                        if b:
                            acc += a * b
            K[i][j] = K[j][i] = acc
    return Matrix(K)


@dataclass(frozen=True)
class Closed:
    basis: AlgebraBasis


@dataclass(frozen=True)
class NotClosed:
    pair: tuple
    residual: MatAlgElem


def algebra_closure(elements: Sequence[MatAlgElem]):
    elements = tuple(elements)
    span = Span(elements)
    if span.dim != len(elements):
        raise DependentInput(f"{len(elements)} elements span only {span.dim} dimensions")
    c, extra = _structure(elements, span)
    if c is None:
        i, j, br = extra
        return NotClosed((i, j), br)
    return Closed(AlgebraBasis(elements, c, killing_from_structure(c), span))


def make_basis(elements: Sequence[MatAlgElem]) -> AlgebraBasis:
    res = algebra_closure(elements)
    if isinstance(res, NotClosed):
        raise InvariantViolation(f"not closed under bracket at pair {res.pair}")
    return res.basis


# --- the explicit models ----------------------------------------------------

# (row, col, parameter, coefficient); 1-based rows and columns as printed
_SO34_ENTRIES = [
    (1, 1, 7, 1), (1, 2, 3, -1), (1, 3, 6, -1), (1, 4, 11, 1), (1, 5, 16, -1), (1, 6, 19, 1),
    (2, 1, 17, -1), (2, 2, 10, 1), (2, 3, 9, 1), (2, 4, 15, 1), (2, 5, 20, -1), (2, 7, 19, -1),
    (3, 1, 14, -1), (3, 2, 8, 1), (3, 3, 13, 1), (3, 4, 18, 1), (3, 6, 20, 1), (3, 7, 16, 1),
    (4, 1, 12, 1), (4, 2, 5, 1), (4, 3, 2, 1), (4, 5, 18, -1), (4, 6, 15, -1), (4, 7, 11, -1),
    (5, 1, 4, -1), (5, 2, 0, -1), (5, 4, 2, -1), (5, 5, 13, -1), (5, 6, 9, -1), (5, 7, 6, 1),
    (6, 1, 1, 1), (6, 3, 0, 1), (6, 4, 5, -1), (6, 5, 8, -1), (6, 6, 10, -1), (6, 7, 3, 1),
    (7, 2, 1, -1), (7, 3, 4, 1), (7, 4, 12, -1), (7, 5, 14, 1), (7, 6, 17, 1), (7, 7, 7, -1),
]

G2_PARAMS = ("b0", "b1", "b2", "b3", "b4", "b5", "b6", "q1", "q2", "q3", "q4", "q5", "q6", "q7")

_G2_ENTRIES = [
    (1, 1, "q1", -1), (1, 1, "q4", -1), (1, 2, "b6", -2), (1, 3, "b5", -12), (1, 4, "q5", -2),
    (1, 5, "q6", 1), (1, 6, "q7", -6),
    (2, 1, "b3", F(-1, 2)), (2, 2, "q4", -1), (2, 3, "q2", 6), (2, 4, "b5", -6), (2, 5, "q5", F(1, 2)),
    (2, 7, "q7", 6),
    (3, 1, "b4", F(-1, 12)), (3, 2, "q3", F(1, 3)), (3, 3, "q1", -1), (3, 4, "b6", 1),
    (3, 6, "q5", F(-1, 2)), (3, 7, "q6", -1),
    (4, 1, "b0", F(1, 3)), (4, 2, "b4", F(-1, 3)), (4, 3, "b3", 2), (4, 5, "b6", -1), (4, 6, "b5", 6),
    (4, 7, "q5", 2),
    (5, 1, "b1", -1), (5, 2, "b0", F(-2, 3)), (5, 4, "b3", -2), (5, 5, "q1", 1), (5, 6, "q2", -6),
    (5, 7, "b5", 12),
    (6, 1, "b2", F(1, 6)), (6, 3, "b0", F(2, 3)), (6, 4, "b4", F(1, 3)), (6, 5, "q3", F(-1, 3)),
    (6, 6, "q4", 1), (6, 7, "b6", 2),
    (7, 2, "b2", F(-1, 6)), (7, 3, "b1", 1), (7, 4, "b0", F(-1, 3)), (7, 5, "b4", F(1, 12)),
    (7, 6, "b3", F(1, 2)), (7, 7, "q1", 1), (7, 7, "q4", 1),
]

# H = -2 e1e7 - 2 e2e6 - 2 e3e5 - e4e4 with e^i e^j = e^i(x)e^j + e^j(x)e^i; this is
# the reading under which the printed so(3,4) matrices are H-skew.
H_GRAM = {(1, 7): -2, (2, 6): -2, (3, 5): -2, (4, 4): -2}
PHI_COMPONENTS = {(1, 4, 7): 2, (1, 5, 6): 1, (2, 3, 7): 8, (2, 4, 6): -2, (3, 4, 5): -2}


def _elem_from_entries(entries, param) -> MatAlgElem:
    rows = [[F(0)] * N for _ in range(N)]
    for r, c, p, v in entries:
        if p == param:
            rows[r - 1][c - 1] += F(v)
    return MatAlgElem(Matrix(rows), label=f"a{param}" if isinstance(param, int) else param)


def standard_form() -> BilinearForm:
    g = [[F(0)] * N for _ in range(N)]
    for (i, j), v in H_GRAM.items():
        g[i - 1][j - 1] = g[j - 1][i - 1] = F(v)
    return BilinearForm(Matrix(g))


def standard_threeform() -> ThreeForm:
    return ThreeForm.from_dict(PHI_COMPONENTS)


def so34_elements():
    return [_elem_from_entries(_SO34_ENTRIES, a) for a in range(21)]


def g2_elements():
    return [_elem_from_entries(_G2_ENTRIES, p) for p in G2_PARAMS]


def is_orthogonal(A: Matrix, H: BilinearForm) -> bool:
    return (A.T @ H.gram + H.gram @ A).is_zero()


def act_on_threeform(A: MatAlgElem | Matrix, phi: ThreeForm) -> ThreeForm:
    """(rho(A)Phi)(X,Y,Z) = -Phi(AX,Y,Z) - Phi(X,AY,Z) - Phi(X,Y,AZ)."""
    M = A.matrix if isinstance(A, MatAlgElem) else A
    t = phi._tensor_cache()
    a = M.rows
    out = {}
    for (i, j, k) in TRIPLES:
        i0, j0, k0 = i - 1, j - 1, k - 1
        acc = F(0)
        for l_ in range(N):
            if a[l_][i0]:
                acc -= a[l_][i0] * t[l_][j0][k0]
            if a[l_][j0]:
                acc -= a[l_][j0] * t[i0][l_][k0]
            if a[l_][k0]:
                acc -= a[l_][k0] * t[i0][j0][l_]
        if acc:
            out[(i, j, k)] = acc
    return ThreeForm.from_dict(out)


def _threeform_vector(phi: ThreeForm):
    d = phi.as_dict()
    return tuple(d.get(t, F(0)) for t in TRIPLES)


def stabilizer_of_threeform(phi: ThreeForm, ambient: AlgebraBasis) -> AlgebraBasis:
    cols = [_threeform_vector(act_on_threeform(e, phi)) for e in ambient.elements]
    A = Matrix(list(zip(*cols)))
    ker = kernel_basis(A)
    elements = []
    for v in ker:
        e = ambient.element(v)
        elements.append(MatAlgElem(e.matrix, label="stab"))
    return make_basis(elements)


@dataclass(frozen=True)
class Models:
    H: BilinearForm
    phi: ThreeForm
    so34: AlgebraBasis
    g2: AlgebraBasis
    inclusion: tuple  # coordinates of each g2 element in the so34 basis


def build_models() -> Models:
    H = standard_form()
    phi = standard_threeform()
    so_el = so34_elements()
    for e in so_el:
        if not is_orthogonal(e.matrix, H):
            raise InvariantViolation(f"{e.label} is not H-skew")
    so34 = make_basis(so_el)
    g2_el = g2_elements()
    for e in g2_el:
        if not act_on_threeform(e, phi).is_zero():
            raise InvariantViolation(f"{e.label} does not preserve the three-form")
    g2 = make_basis(g2_el)
    inclusion = []
    for e in g2_el:
        c = so34.span.coords(e)
        if c is None:
            raise InvariantViolation(f"{e.label} is not in so(3,4)")
        inclusion.append(c)
    if rank(Matrix(inclusion)) != 14:
        raise InvariantViolation("g2 basis is not 14-dimensional inside so(3,4)")
    return Models(H, phi, so34, g2, tuple(inclusion))


# --- gradings ------------------------------------------------------------------

G2_VECTOR_DEGREES = (2, 1, 1, 0, -1, -1, -2)
SO_VECTOR_DEGREES_E12 = (1, 1, 0, 0, 0, -1, -1)  # null plane span(e1, e2)
SO_VECTOR_DEGREES_E23 = (0, 1, 1, 0, -1, -1, 0)  # null plane span(e2, e3)


@dataclass(frozen=True)
class GradingSpec:
    degrees: tuple

    def filtration(self, i):
        return tuple(k for k, d in enumerate(self.degrees) if d >= i)

    def component(self, i):
        return tuple(k for k, d in enumerate(self.degrees) if d == i)


@dataclass(frozen=True)
class VerifiedGrading:
    spec: GradingSpec
    dims: dict  # degree -> dimension
    ladder: dict  # i -> indices of g^i
    p: tuple
    p_plus: tuple

    @property
    def depth(self):
        return max(abs(d) for d in self.dims)


def degrees_from_vector_grading(basis: AlgebraBasis, vdeg: Sequence[int]) -> GradingSpec:
    out = []
    for e in basis.elements:
        ds = {vdeg[r] - vdeg[c] for r, row in enumerate(e.matrix.rows) for c, x in enumerate(row) if x}
        if len(ds) != 1:
            raise GradingViolation(-1, -1, f"element {e.label} is not homogeneous: degrees {sorted(ds)}")
        out.append(ds.pop())
    return GradingSpec(tuple(out))


def grading_split(basis: AlgebraBasis, spec: GradingSpec) -> VerifiedGrading:
    deg = spec.degrees
    if len(deg) != basis.dim:
        raise ValueError("grading needs one degree per basis element")
    c = basis.structure_constants
    for i in range(basis.dim):
        for j in range(i + 1, basis.dim):
            target = deg[i] + deg[j]
            for k, v in enumerate(c[i][j]):
                if v and deg[k] != target:
                    raise GradingViolation(i, j, f"[{i},{j}] has a component of degree {deg[k]}, expected {target}")
    dims: dict = {}
    for d in deg:
        dims[d] = dims.get(d, 0) + 1
    lo, hi = min(deg), max(deg)
    ladder = {i: spec.filtration(i) for i in range(lo, hi + 1)}
    return VerifiedGrading(spec, dict(sorted(dims.items())), ladder, spec.filtration(0), spec.filtration(1))


# --- Kostant codifferential ---------------------------------------------------


@dataclass(frozen=True)
class Cochain:
    """Element of Lambda^deg p_+ (x) g over the Z-basis.

    Keys are increasing tuples of Z-indices, values coordinate vectors in g.
    """

    degree: int
    terms: tuple  # ((key, vector), ...)

    @classmethod
    def build(cls, degree, items) -> "Cochain":
        acc: dict = {}
        for key, vec in items:
            key = tuple(key)
            if len(set(key)) != len(key):
                continue
            order = sorted(range(len(key)), key=lambda t: key[t])
            sign = _perm_sign(order)
            skey = tuple(key[t] for t in order)
            old = acc.get(skey)
            v = tuple(sign * x for x in vec)
            acc[skey] = v if old is None else tuple(a + b for a, b in zip(old, v))
        return cls(degree, tuple(sorted((k, v) for k, v in acc.items() if any(v))))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        return Cochain.build(self.degree, self.terms + other.terms)

    def scale(self, c):
        return Cochain.build(self.degree, [(k, tuple(c * x for x in v)) for k, v in self.terms])


@dataclass
class DualBases:
    algebra: AlgebraBasis
    pairing: Matrix  # symmetric form used for the duality
    X: tuple  # coordinate vectors projecting to a basis of g/p
    Z: tuple  # dual coordinate vectors in p_+
    z_span: object = field(repr=False, default=None)

    def z_coords(self, v):
        """Expand a p_+ element (coords in g) in the Z-basis."""
        res = solve_with(self.z_span, v)
        if isinstance(res, Inconsistent):
            raise ValueError("element is not in p_+")
        return tuple(F(x) for x in res.solution)


def _form(M: Matrix, a, b):
    acc = F(0)
    for i, ai in enumerate(a):
        if ai:
            row = M.rows[i]
            for j, bj in enumerate(b):
                if bj and row[j]:
                    acc += ai * row[j] * bj
    return acc


def dual_bases(algebra: AlgebraBasis, grading: VerifiedGrading, X: Sequence, pairing: Matrix | None = None) -> DualBases:
    """Z_j in p_+ with pairing(X_i, Z_j) = delta_ij, solved exactly."""
    pairing = pairing or algebra.killing
    n = algebra.dim
    plus = grading.p_plus
    X = [tuple(F(x) for x in v) for v in X]
    if len(X) != len(plus):
        raise NonDualBases(f"need {len(plus)} elements for g/p, got {len(X)}")
    # unknown Z_j = sum_{k in plus} z_k e_k ; rows i: pairing(X_i, e_k)
    A = Matrix([[_form(pairing, X[i], _unit(n, k)) for k in plus] for i in range(len(X))])
    el = bareiss(A)
    if el.rank != len(plus):
        raise NonDualBases("pairing between g/p and p_+ is degenerate for this choice")
    Z = []
    for j in range(len(X)):
        res = solve_with(el, [F(int(i == j)) for i in range(len(X))])
        z = [F(0)] * n
        for k, v in zip(plus, res.solution):
            z[k] = F(v)
        Z.append(tuple(z))
    zmat = Matrix(list(zip(*Z)))
    db = DualBases(algebra, pairing, tuple(X), tuple(Z), bareiss(zmat))
    for i in range(len(X)):
        for j in range(len(X)):
            if _form(pairing, X[i], Z[j]) != (1 if i == j else 0):
                raise NonDualBases(f"pairing(X{i + 1}, Z{j + 1}) is not delta")
    return db


def _unit(n, k):
    return tuple(F(int(i == k)) for i in range(n))


def codifferential(phi: Cochain, db: DualBases) -> Cochain:
    """Kostant codifferential on decomposable terms:
    Z0^Z1 (x) A -> Z0 (x) [Z1,A] - Z1 (x) [Z0,A] - [Z0,Z1] (x) A, and Z (x) A -> -[Z,A]."""
    alg = db.algebra
    if phi.degree == 2:
        items = []
        for (a, b), A in phi.terms:
            Za, Zb = db.Z[a], db.Z[b]
            items.append(((a,), alg.bracket_coords(Zb, A)))
            items.append(((b,), tuple(-x for x in alg.bracket_coords(Za, A))))
            zz = db.z_coords(alg.bracket_coords(Za, Zb))
            for c, coef in enumerate(zz):
                if coef:
                    items.append(((c,), tuple(-coef * x for x in A)))
        return Cochain.build(1, items)
    if phi.degree == 1:
        acc = [F(0)] * alg.dim
        for (a,), A in phi.terms:
            for k, v in enumerate(alg.bracket_coords(db.Z[a], A)):
                acc[k] -= v
        return Cochain.build(0, [((), tuple(acc))])
    raise ValueError("codifferential defined on degrees 1 and 2")


def _project_minus(db: DualBases, v):
    """Coordinates of v modulo p in the X-basis (X_i are dual to Z_i)."""
    return tuple(_form(db.pairing, v, z) for z in db.Z)


def evaluate_cochain(phi: Cochain, db: DualBases, *args):
    """phi as a multilinear map on g/p: (Z_a ^ Z_b)(X, Y) = <Z_a,X><Z_b,Y> - <Z_a,Y><Z_b,X>."""
    alg = db.algebra
    vals = [_project_minus(db, x) for x in args]
    acc = [F(0)] * alg.dim
    for key, A in phi.terms:
        if phi.degree == 2:
            a, b = key
            f = vals[0][a] * vals[1][b] - vals[1][a] * vals[0][b]
        else:
            f = vals[0][key[0]]
        if f:
            for k, x in enumerate(A):
                if x:
                    acc[k] += f * x
    return tuple(acc)


def codifferential_by_basis(phi: Cochain, db: DualBases) -> Cochain:
    """d*phi(X) = 2 sum_i [phi(X_i, X), Z_i] + sum_i phi(X_i, [Z_i, X]) as a cochain."""
    alg = db.algebra
    items = []
    for j, Xj in enumerate(db.X):
        acc = [F(0)] * alg.dim
        for i, Xi in enumerate(db.X):
            v = evaluate_cochain(phi, db, Xi, Xj)
            if any(v):
                for k, x in enumerate(alg.bracket_coords(v, db.Z[i])):
                    acc[k] += 2 * x
            w = evaluate_cochain(phi, db, Xi, alg.bracket_coords(db.Z[i], Xj))
            for k, x in enumerate(w):
                acc[k] += x
        # a 1-cochain c satisfies c(X_j) = value, and (Z_j (x) A)(X_j) = A
        items.append(((j,), tuple(acc)))
    return Cochain.build(1, items)


def decomposable(db: DualBases, a: int, b: int, A) -> Cochain:
    return Cochain.build(2, [((a, b), tuple(F(x) for x in A))])


def jacobi_holds(basis: AlgebraBasis) -> bool:
    n = basis.dim
    units = [_unit(n, k) for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bij = basis.bracket_coords(units[i], units[j])
            for k in range(j + 1, n):
                t1 = basis.bracket_coords(bij, units[k])
                t2 = basis.bracket_coords(basis.bracket_coords(units[j], units[k]), units[i])
                t3 = basis.bracket_coords(basis.bracket_coords(units[k], units[i]), units[j])
                if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                    return False
    return True


def killing_is_invariant(basis: AlgebraBasis) -> bool:
    n = basis.dim
    units = [_unit(n, k) for k in range(n)]
    for x in range(n):
        for y in range(n):
            xy = basis.bracket_coords(units[x], units[y])
            for z in range(n):
                xz = basis.bracket_coords(units[x], units[z])
                if basis.killing_form(xy, units[z]) + basis.killing_form(units[y], xz) != 0:
                    return False
    return True


def restricted_killing_ratio(models: Models) -> Fraction:
    """Constant c with K_so34(i(x), i(y)) = c K_g2(x, y); raises if not proportional."""
    inc = models.inclusion
    so, g2 = models.so34, models.g2
    ratio = None
    for i in range(14):
        for j in range(i, 14):
            a = so.killing_form(inc[i], inc[j])
            b = g2.killing.rows[i][j]
            if b == 0:
                if a != 0:
                    raise InvariantViolation("restricted Killing form is not proportional")
                continue
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                raise InvariantViolation("restricted Killing form is not proportional")
    return ratio


# --- normality checks ------------------------------------------------------


def embed(models: Models, x):
    """g2 coordinates -> so(3,4) coordinates."""
    out = [F(0)] * models.so34.dim
    for c, row in zip(x, models.inclusion):
        if c:
            for k, v in enumerate(row):
                if v:
                    out[k] += c * v
    return tuple(out)


@dataclass
class NormalityData:
    g2_grading: VerifiedGrading
    so_grading: VerifiedGrading
    db: DualBases  # g2: X_1..X_5, Z_1..Z_5
    db_tilde: DualBases  # so(3,4): X_1..X_7, Z~_1..Z~_7
    x_labels: tuple
    A_space: tuple  # g2 coordinates of a basis of {A in g_0 : [Z_1,A] = [Z_4,A] = 0}
    A3_space: tuple  # same with [Z_3, A] = 0 added


def _commutant(alg: AlgebraBasis, within: Sequence[int], Zs) -> tuple:
    n = alg.dim
    rows = []
    for Z in Zs:
        cols = [alg.bracket_coords(Z, _unit(n, k)) for k in within]
        rows += [list(r) for r in zip(*cols)]
    out = []
    for v in kernel_basis(Matrix(rows)):
        a = [F(0)] * n
        for k, c in zip(within, v):
            a[k] = F(c)
        out.append(tuple(a))
    return tuple(out)


def normality_setup(models: Models | None = None, x_order: Sequence[str] | None = None) -> NormalityData:
    """Bases for the codifferential checks.

    X_1, X_2 in g_-1, X_3 in g_-2, X_4, X_5 in g_-3 are parameter basis elements of
    the g2 model (default order b3, b4, b0, b1, b2), supplemented by X_6, X_7 in g_1
    (b5, b6).  Duality uses the so(3,4) Killing form throughout.  If the default
    order gives no nonzero A, the orders inside g_-1 and g_-3 are searched.
    """
    models = models or build_models()
    g2, so = models.g2, models.so34
    gs = grading_split(g2, degrees_from_vector_grading(g2, G2_VECTOR_DEGREES))
    ss = grading_split(so, degrees_from_vector_grading(so, SO_VECTOR_DEGREES_E23))
    pairing = g2.killing.scale(restricted_killing_ratio(models))
    labels = g2.labels()
    g0 = gs.spec.component(0)
    orders = [tuple(x_order)] if x_order else []
    m1, m3 = gs.spec.component(-1), gs.spec.component(-3)
    m2 = gs.spec.component(-2)
    for a in (m1, m1[::-1]):
        for b in (m3, m3[::-1]):
            orders.append(tuple(labels[k] for k in (a[0], a[1], m2[0], b[0], b[1])))
    for order in orders:
        X = [_unit(14, labels.index(name)) for name in order]
        db = dual_bases(g2, gs, X, pairing)
        A_space = _commutant(g2, g0, (db.Z[0], db.Z[3]))
        if A_space:
            break
    A3_space = _commutant(g2, g0, (db.Z[0], db.Z[2], db.Z[3]))
    g1 = gs.spec.component(1)
    Xt = [embed(models, x) for x in X] + [embed(models, _unit(14, k)) for k in g1]
    db_t = dual_bases(so, ss, Xt)
    return NormalityData(gs, ss, db, db_t, order + tuple(labels[k] for k in g1), A_space, A3_space)


def normality_report(data: NormalityData, models: Models | None = None) -> dict:
    models = models or build_models()
    g2, so = models.g2, models.so34
    db, dbt = data.db, data.db_tilde
    out: dict = {"x_basis": list(data.x_labels), "dim_A": len(data.A_space), "dim_A3": len(data.A3_space)}
    phi1_ok = phi1t_ok = True
    for A in data.A_space:
        phi1 = decomposable(db, 0, 3, A)
        phi1_ok &= codifferential(phi1, db).is_zero()
        phi1t = decomposable(dbt, 0, 3, embed(models, A))
        phi1t_ok &= codifferential(phi1t, dbt).is_zero()
    out["phi1_in_kernel"] = bool(data.A_space) and phi1_ok
    out["phi1_tilde_in_kernel"] = bool(data.A_space) and phi1t_ok
    phi2_ok = phi2t_ok = True
    for A in data.A3_space:
        phi2 = decomposable(db, 2, 3, A) + decomposable(db, 0, 3, db.Z[0])
        phi2_ok &= codifferential(phi2, db).is_zero()
        phi2t = decomposable(dbt, 2, 3, embed(models, A)) + decomposable(dbt, 0, 3, embed(models, db.Z[0]))
        phi2t_ok &= codifferential(phi2t, dbt).is_zero()
    out["phi2_in_kernel"] = bool(data.A3_space) and phi2_ok
    out["phi2_tilde_in_kernel"] = bool(data.A3_space) and phi2t_ok
    zt = dbt.Z
    out["Z4_tilde_equals_Z4"] = zt[3] == embed(models, db.Z[3])
    out["Z5_tilde_equals_Z5"] = zt[4] == embed(models, db.Z[4])
    out["Z1_commutes_with_Z1_tilde"] = not any(so.bracket_coords(embed(models, db.Z[0]), zt[0]))
    out["A_commutes_with_Z_tilde"] = all(
        not any(so.bracket_coords(zt[i], embed(models, A))) for A in data.A3_space for i in (0, 2, 3)
    )
    return out


def codifferential_square_zero(db: DualBases) -> bool:
    """d* o d* = 0 on the spanning set Z_a ^ Z_b (x) e_k."""
    n = db.algebra.dim
    m = len(db.Z)
    for a in range(m):
        for b in range(a + 1, m):
            for k in range(n):
                phi = decomposable(db, a, b, _unit(n, k))
                if not codifferential(codifferential(phi, db), db).is_zero():
                    return False
    return True


def basis_formula_ratio(db: DualBases):
    """Compare the basis formula with the decomposable formula on Z_a ^ Z_b (x) e_k.

    Returns the common ratio if the two agree up to one constant, else None."""
    n = db.algebra.dim
    m = len(db.Z)
    ratio = None
    for a in range(m):
        for b in range(a + 1, m):
            for k in range(n):
                phi = decomposable(db, a, b, _unit(n, k))
                u = dict(codifferential(phi, db).terms)
                v = dict(codifferential_by_basis(phi, db).terms)
                for key in set(u) | set(v):
                    x = u.get(key, (F(0),) * n)
                    y = v.get(key, (F(0),) * n)
                    for xi, yi in zip(x, y):
                        if xi == 0 and yi == 0:
                            continue
                        if xi == 0 or yi == 0:
                            return None
                        r = yi / xi
                        if ratio is None:
                            ratio = r
                        elif r != ratio:
                            return None
    return ratio
