"""Infinitesimal symmetries: verification, prolongation, catalogs and bracket closure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

from ..geomcalc import DiffForm, SymTensor, VectorField, Yes, lie_bracket, proportional_mod
from ..liealg import killing_from_structure
from ..symcore import Affine, Matrix, RatExpr, SymcoreError, Unique, exact_linear_solve, kernel_basis, rank, signature_of_symmetric
from .contact import build_contact_data, lift, metric_example, tensor_ratio
from .errors import (
    DegenerateParameter,
    FixtureError,
    IncompatibleParameters,
    KindMismatch,
    NotASymmetry,
    NotClosed,
    SignCalibrationFailed,
    VerificationFailed,
)
from .model import BASE, FLAT_K, TWISTOR, as_k, backend, conformal_root, objects

KINDS = ("distribution", "conformal", "lie_contact", "g2_contact")


@dataclass(frozen=True)
class Pass:
    report: dict

    ok = True


@dataclass(frozen=True)
class Fail:
    certificate: dict

    ok = False


@dataclass(frozen=True)
class ContactPair:
    """A contact form with a symmetric tensor, defined on its kernel."""

    lam: DiffForm
    upsilon: SymTensor

    @property
    def chart(self):
        return self.lam.chart


def _solve_var(lam: DiffForm) -> str:
    names = lam.chart.variables
    consts = [n for n in names if lam.coefficient(n).is_constant() and not lam.coefficient(n).is_zero()]
    if consts:
        return consts[0]
    for n in names:
        if not lam.coefficient(n).is_zero():
            return n
    raise KindMismatch("zero contact form")


def verify_symmetry(X: VectorField, kind: str, data):
    if kind not in KINDS:
        raise KindMismatch(f"unknown symmetry kind {kind!r}")
    if kind == "distribution":
        if not (isinstance(data, (tuple, list)) and data and all(isinstance(g, VectorField) for g in data)):
            raise KindMismatch("distribution symmetries need the generating vector fields")
        if any(g.chart != X.chart for g in data):
            raise KindMismatch("field and distribution live on different charts")
        cols = [list(g.comps) for g in data]
        A = Matrix([list(r) for r in zip(*cols)])
        coeffs = []
        for i, g in enumerate(data):
            res = exact_linear_solve(A, list(lie_bracket(X, g).comps))
            if not isinstance(res, (Unique, Affine)):
                return Fail({"generator": i, "bracket": str(lie_bracket(X, g))})
            coeffs.append([str(c) for c in res.solution])
        return Pass({"coefficients": coeffs})
    if kind == "conformal":
        if not isinstance(data, SymTensor) or data.degree != 2:
            raise KindMismatch("conformal symmetries need a metric")
        if data.chart != X.chart:
            raise KindMismatch("field and metric live on different charts")
        LX = data.lie(X)
        phi = tensor_ratio(LX, data)
        if phi is None:
            k0 = min(data.terms)
            return Fail({"lie_derivative": str(LX), "reference_monomial": data.basis_text(k0)})
        return Pass({"phi": str(phi)})
    if hasattr(data, "lam") and hasattr(data, "upsilon"):
        lam, ups = data.lam, data.upsilon
    else:
        raise KindMismatch(f"{kind} symmetries need a contact form and a tensor")
    if lam.chart != X.chart:
        raise KindMismatch("field and contact data live on different charts")
    if (kind == "g2_contact") != (ups.degree == 4 and X.chart.dim == 5):
        raise KindMismatch(f"{kind} data has the wrong shape")
    contact = lam.lie(X).wedge(lam)
    if not contact.is_zero():
        return Fail({"contact": str(contact)})
    res = proportional_mod(ups.lie(X), ups, lam, _solve_var(lam))
    if not isinstance(res, Yes):
        return Fail({"tensor": res.describe(X.chart)})
    return Pass({"f": str(res.f)})


# -- prolongation ------------------------------------------------------------

# Signs of the fibre terms in the lifting equation, fixed by calibrate_signs()
# against the printed lifts of X5 and X7 and frozen here.
SIGMA_A = 1
SIGMA_B = 1


def _lifting_system(X: VectorField, k, signs):
    get = objects("coframe", k)
    xi = get("xi")
    Xl = lift(X) if X.chart != TWISTOR else X
    br = lie_bracket(Xl, xi)
    dv = VectorField(TWISTOR, [c.differentiate("v") for c in xi.comps])
    dw = VectorField(TWISTOR, [c.differentiate("w") for c in xi.comps])
    rows = range(5)
    A = Matrix([[signs[0] * dv.comps[i], signs[1] * dw.comps[i], -xi.comps[i]] for i in rows])
    b = [-br.comps[i] for i in rows]
    return Xl, A, b


def _prolong(X: VectorField, k, signs) -> VectorField:
    Xl, A, b = _lifting_system(X, k, signs)
    res = exact_linear_solve(A, b)
    if not isinstance(res, Unique):
        raise NotASymmetry(f"the lifting equation has no unique solution for {X}")
    a, bb, _mu = res.solution
    a = a if isinstance(a, RatExpr) else RatExpr.const(TWISTOR, a)
    bb = bb if isinstance(bb, RatExpr) else RatExpr.const(TWISTOR, bb)
    return Xl + VectorField.partial(TWISTOR, "v") * a + VectorField.partial(TWISTOR, "w") * bb


def calibrate_signs(k=3) -> tuple[int, int]:
    """The unique sign pair for which the lifts of X5 and X7 are the printed ones."""
    base = objects("symmetries", k)
    printed = objects("liecontact", k)
    good = []
    for signs in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        try:
            if all(_prolong(base(f"X{i}"), k, signs) == printed(f"Xt{i}") for i in (5, 7)):
                good.append(signs)
        except NotASymmetry:
            continue
    if len(good) != 1:
        raise SignCalibrationFailed(f"sign pairs matching the printed lifts: {good}")
    return good[0]


def prolong_symmetry(X: VectorField, k, check: bool = True) -> VectorField:
    """Lift a symmetry of D_k to the twistor bundle."""
    if X.chart.variables != BASE.variables:
        raise KindMismatch("prolongation takes a field on (x,y,p,q,z)")
    if check:
        res = verify_symmetry(X, "distribution", list(_distribution(k)))
        if not res.ok:
            raise NotASymmetry(f"{X} is not a symmetry of D_k")
    Xt = _prolong(X, k, (SIGMA_A, SIGMA_B))
    if check:
        res = verify_symmetry(Xt, "lie_contact", build_contact_data(k))
        if not res.ok:
            raise NotASymmetry(f"the lift of {X} does not preserve the Lie contact structure")
    return Xt


@lru_cache(maxsize=None)
def _distribution(k):
    from .coframe import build_distribution

    return build_distribution(k)


# -- catalogs ----------------------------------------------------------------

CATALOGS = ("dist_k", "conf_k", "dist2_full", "conf2_full", "liecontact_k", "liecontact2_full", "g2contact_flat")


@dataclass
class SymmetryCatalog:
    name: str
    k: Fraction | None
    names: list
    generators: list
    reports: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.generators)


def _need_flat(name, k):
    if k is None or Fraction(k) != 2:
        raise IncompatibleParameters(f"{name} exists only for k = 2")
    return Fraction(2)


def _catalog_spec(name: str, k):
    """(fixture, names, kind, data, chart-fixed k, skipped)."""
    skipped = {}
    if name == "dist_k":
        k = as_k(k)
        names = [f"X{i}" for i in range(1, 8)]
        if 2 * k - 1 == 0:
            names.remove("X7")
            skipped["X7"] = "the formula divides by 2k - 1 at k = 1/2"
        return "symmetries", names, "distribution", list(_distribution(k)), k, {}, skipped
    if name == "conf_k":
        k = as_k(k)
        if k in FLAT_K:
            raise IncompatibleParameters(f"conf_k excludes the flat cases, k = {k}")
        names = [f"X{i}" for i in range(1, 8)]
        if 2 * k - 1 == 0:
            names.remove("X7")
            skipped["X7"] = "the formula divides by 2k - 1 at k = 1/2"
        s = conformal_root(k)
        extra = {}
        if s is None:
            for n in ("X8", "X9"):
                skipped[n] = f"sqrt(10k^2 - 10k + 5) is irrational at k = {k}"
        else:
            names += ["X8", "X9"]
            extra["s"] = s
        return "symmetries", names, "conformal", metric_example(k), k, extra, skipped
    if name == "dist2_full":
        k = _need_flat(name, k)
        names = [f"X{i}" for i in range(1, 8)] + [f"Y{i}" for i in range(1, 8)]
        return "symmetries", names, "distribution", list(_distribution(k)), k, {}, skipped
    if name == "conf2_full":
        k = _need_flat(name, k)
        names = [f"{c}{i}" for c in "XYZ" for i in range(1, 8)]
        return "symmetries", names, "conformal", objects("metrics", k)("conffl"), k, {}, skipped
    if name == "liecontact_k":
        k = as_k(k)
        names = [f"Xt{i}" for i in range(1, 8)]
        if 2 * k - 1 == 0:
            names.remove("Xt7")
            skipped["Xt7"] = "the formula divides by 2k - 1 at k = 1/2"
        return "liecontact", names, "lie_contact", build_contact_data(k), k, {}, skipped
    if name == "liecontact2_full":
        k = _need_flat(name, k)
        names = [f"{c}{i}" for c in ("Xt", "Yt", "Zh") for i in range(1, 8)]
        return "liecontact", names, "lie_contact", build_contact_data(k), k, {}, skipped
    if name == "g2contact_flat":
        from .boundary import g2_contact_pair

        names = [f"G{i}" for i in range(1, 15)]
        return None, names, "g2_contact", g2_contact_pair(), None, {}, skipped
    raise IncompatibleParameters(f"unknown catalog {name!r}; expected one of {', '.join(CATALOGS)}")


def catalog(name: str, k=None, verify: bool = True) -> SymmetryCatalog:
    fixture, names, kind, data, k, extra, skipped = _catalog_spec(name, k)
    if fixture is None:
        from .boundary import g2_generators

        gens = g2_generators()
    else:
        get = objects(fixture, k, extra=extra)
        gens = [get(n) for n in names]
    cat = SymmetryCatalog(name, k, names, gens, skipped=skipped)
    if verify:
        for n, X in zip(names, gens):
            res = verify_symmetry(X, kind, data)
            if not res.ok:
                raise VerificationFailed(f"{n} fails {kind} verification in {name}: {res.certificate}")
            cat.reports[n] = res.report
    return cat


# -- bracket closure ---------------------------------------------------------


def _coefficient_rows(fields):
    """Each field as a vector over Q: coefficients of the numerators after
    bringing every component to a common denominator."""
    n = fields[0].chart.dim
    columns = []  # per component: list of dicts monomial -> coeff
    rows = [[] for _ in fields]
    for i in range(n):
        comps = [f.comps[i] for f in fields]
        root = lcm(*(c.root for c in comps))
        lifted = [c.lifted(root) for c in comps]
        L = None
        for num, den in lifted:
            if num.is_zero():
                continue
            L = den if L is None else L * den / L.gcd(den)
        if L is None:
            continue
        nums = [(num * (L / den)).to_dict() if not num.is_zero() else {} for num, den in lifted]
        monos = sorted(set().union(*nums))
        for r, d in zip(rows, nums):
            r.extend(Fraction(int(d[m].p), int(d[m].q)) if m in d else Fraction(0) for m in monos)
        columns.append(monos)
    return rows


def constant_combination(target: VectorField, basis):
    """Constants c with target = sum c_j basis_j, or None."""
    rows = _coefficient_rows(list(basis) + [target])
    *brows, trow = rows
    if not trow:
        return tuple(Fraction(0) for _ in basis)
    A = Matrix([list(r) for r in zip(*brows)])
    res = exact_linear_solve(A, trow)
    if isinstance(res, (Unique, Affine)):
        c = tuple(Fraction(x) for x in res.solution)
        return c
    return None


@dataclass
class ClosureReport:
    dim: int
    closed: bool
    structure: list  # c[i][j][k]
    killing: Matrix
    signature: tuple
    center_dim: int
    derived_dim: int = 0

    def as_dict(self):
        return {"dim": self.dim, "closed": self.closed, "killing_signature": list(self.signature),
                "center_dim": self.center_dim}


def bracket_closure_report(cat, raise_on_failure: bool = True) -> ClosureReport:
    gens = list(cat.generators if hasattr(cat, "generators") else cat)
    n = len(gens)
    rows = _coefficient_rows(gens)
    dim = rank(Matrix(rows))
    if dim != n:
        raise IncompatibleParameters(f"the {n} generators span only {dim} dimensions")
    zero = [Fraction(0)] * n
    c = [[list(zero) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            B = lie_bracket(gens[i], gens[j])
            coeffs = constant_combination(B, gens)
            if coeffs is None:
                if raise_on_failure:
                    raise NotClosed((i, j), str(B))
                return ClosureReport(n, False, c, Matrix([zero] * n), (0, 0, n), -1)
            # exact check of the combination
            combo = VectorField.zero(B.chart)
            for a, g in zip(coeffs, gens):
                if a:
                    combo = combo + g * a
            if combo != B:
                if raise_on_failure:
                    raise NotClosed((i, j), str(B - combo))
                return ClosureReport(n, False, c, Matrix([zero] * n), (0, 0, n), -1)
            c[i][j] = list(coeffs)
            c[j][i] = [-a for a in coeffs]
    K = killing_from_structure(c)
    sig = signature_of_symmetric(K)
    # center: z with sum_i z_i c[i][j][k] = 0 for all j, k
    ad = Matrix([[c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)])
    center = len(kernel_basis(ad))
    derived = rank(Matrix([c[i][j] for i in range(n) for j in range(i + 1, n)])) if n > 1 else 0
    return ClosureReport(n, True, c, K, tuple(sig), center, derived)
