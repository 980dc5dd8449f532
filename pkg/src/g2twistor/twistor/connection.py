"""Connection forms and curvature coefficients from the structure equations.

The unknowns are the 49 coefficients W[i][j] of Om_i = sum_j W[i][j] theta^j and the
24 curvature functions.  Both sides of every structure equation are expanded in the
theta-cobasis.  The theta-equations are linear with constant coefficients in the
unknowns, so they are solved first; their kernel parameters t enter the Om-equations
linearly, and the components in which derivatives of t would appear are set aside and
only used in the final residual check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from ..geomcalc import DiffForm, VectorField
from ..geomcalc.literal import LiteralEvaluator
from ..symcore import Affine, Chart, Inconsistent, Matrix, RatExpr, Unique, exact_linear_solve, inverse, parse_ast
from .coframe import CoframeFamily, build_theta_coframe
from .errors import AmbiguousCurvature, InconsistentEDS, VerificationFailed
from .fixtures import load

CURVATURE = (
    "a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "c1", "c2", "c3",
    "e1", "e2", "f", "q1", "q2", "p1", "p2", "p3", "h1", "h2", "h3", "h4",
)
THETAS = tuple(f"theta{i}" for i in range(7))
OMEGAS = tuple(f"Om{i}" for i in range(1, 8))
EQUATIONS = THETAS + OMEGAS
PAIRS = tuple(combinations(range(7), 2))
W_NAMES = tuple(f"W{i}_{j}" for i in range(1, 8) for j in range(7))
UNKNOWNS = W_NAMES + CURVATURE


@dataclass
class ConnectionForms:
    omega: tuple  # Om1..Om7 as DiffForms
    coefficients: list  # W[i][j], i = 0..6 for Om1..Om7


@dataclass
class CurvatureCoefficients:
    values: dict

    def all_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def nonzero(self):
        return [n for n in CURVATURE if not self.values[n].is_zero()]


@dataclass
class ConnectionSolution:
    forms: ConnectionForms
    curvature: CurvatureCoefficients
    stage1_kernel: int
    solution_dim: int
    residual_zero: bool
    report: dict = field(default_factory=dict)


# -- the abstract theta-algebra ------------------------------------------------

@lru_cache(maxsize=None)
def _abstract():
    """Right-hand sides as 2-forms in d(t0..t6) with polynomial coefficients in the unknowns."""
    chart = Chart(tuple(f"t{i}" for i in range(7)) + UNKNOWNS)
    bind = {f"theta{i}": DiffForm.differential(chart, f"t{i}") for i in range(7)}
    for i in range(1, 8):
        om = DiffForm.zero(chart, 1)
        for j in range(7):
            om = om + DiffForm.differential(chart, f"t{j}") * RatExpr.var(chart, f"W{i}_{j}")
        bind[f"Om{i}"] = om
    fx = load("eds")
    rhs = {}
    for name in EQUATIONS:
        rhs[name] = LiteralEvaluator(chart, bind, "form")(parse_ast(fx.entry(f"d_{name}").text))
    return chart, rhs


def _poly_terms(expr: RatExpr):
    """{exponent tuple over UNKNOWNS: Fraction} of a polynomial in the unknowns."""
    out = {}
    for m, c in expr.num.to_dict().items():
        out[tuple(int(e) for e in m[7:])] = Fraction(int(c.p), int(c.q))
    return out


@lru_cache(maxsize=None)
def _rhs_table():
    """rhs[eq][(a, b)] as {monomial: coefficient}."""
    _chart, rhs = _abstract()
    table = {}
    for name, form in rhs.items():
        table[name] = {}
        for key, c in form.terms.items():
            table[name][key] = _poly_terms(c)
    return table


# -- frame calculus on the section ----------------------------------------------

class Frame:
    def __init__(self, theta):
        self.theta = theta
        self.chart = theta[0].chart
        n = self.chart.dim
        zero = RatExpr.zero(self.chart)
        rows = [[th.terms.get((a,), zero) for a in range(n)] for th in theta]
        E = inverse(Matrix(rows)).rows  # E[a][j]: component a of the dual vector e_j
        self.E = [[x if isinstance(x, RatExpr) else RatExpr.const(self.chart, x) for x in r] for r in E]
        self.vectors = [VectorField(self.chart, [self.E[a][j] for a in range(n)]) for j in range(n)]

    def components(self, beta: DiffForm) -> dict:
        """beta(e_a, e_b) for a < b."""
        out = {}
        E = self.E
        for a, b in PAIRS:
            acc = RatExpr.zero(self.chart)
            for (c, d), v in beta.terms.items():
                m = E[c][a] * E[d][b] - E[d][a] * E[c][b]
                if not m.is_zero():
                    acc = acc + v * m
            if not acc.is_zero():
                out[(a, b)] = acc
        return out

    def derive(self, f: RatExpr, j: int) -> RatExpr:
        return self.vectors[j].apply(f)

    def form(self, coeffs) -> DiffForm:
        out = DiffForm.zero(self.chart, 1)
        for c, th in zip(coeffs, self.theta):
            if not c.is_zero():
                out = out + th * c
        return out


def _as_expr(chart, x):
    return x if isinstance(x, RatExpr) else RatExpr.const(chart, x)


def _eval_poly(terms: dict, values: dict, chart) -> RatExpr:
    """Evaluate {monomial: c} with values[index] -> RatExpr."""
    acc = RatExpr.zero(chart)
    for m, c in terms.items():
        t = RatExpr.const(chart, c)
        for i, e in enumerate(m):
            if e:
                t = t * values[i] ** e
        acc = acc + t
    return acc


def solve_connection_forms(cf: CoframeFamily | None = None, k=None) -> ConnectionSolution:
    if cf is None:
        cf = build_theta_coframe(k)
    frame = Frame(cf.theta)
    chart = frame.chart
    table = _rhs_table()
    nU = len(UNKNOWNS)
    uindex = {n: i for i, n in enumerate(UNKNOWNS)}
    dtheta = [frame.components(th.d()) for th in cf.theta]
    zero = RatExpr.zero(chart)

    # stage 1: theta-equations, linear with constant coefficients
    rows, rhs, labels = [], [], []
    for A, name in enumerate(THETAS):
        for key in PAIRS:
            terms = table[name].get(key, {})
            row = [Fraction(0)] * nU
            const = Fraction(0)
            for m, c in terms.items():
                deg = sum(m)
                if deg == 0:
                    const += c
                elif deg == 1:
                    row[m.index(1)] += c
                else:
                    raise InconsistentEDS(f"d{name} is not linear in the unknowns")
            rows.append(row)
            rhs.append(dtheta[A].get(key, zero) - const)
            labels.append((name, key))
    res = exact_linear_solve(Matrix(rows), rhs)
    if isinstance(res, Inconsistent):
        bad = [labels[i] for i, c in enumerate(res.certificate) if c]
        raise InconsistentEDS("theta-equations are inconsistent", bad)
    part = [_as_expr(chart, x) for x in res.solution]
    params = [tuple(Fraction(x) for x in v) for v in res.kernel] if isinstance(res, Affine) else []
    stage1_kernel = len(params)

    # stage 2: Om-equations.  Parameters are fixed in rounds: a row is usable once no
    # still-unknown parameter enters it through a derivative.
    cur = list(part)
    unknown = list(range(len(params)))
    rounds = 0
    stage2_rows = 0
    kern2 = []
    while unknown:
        rounds += 1
        srows, srhs, slabels = _om_rows(frame, table, cur, params, unknown, uindex)
        stage2_rows = len(srows)
        if not srows:
            break
        sol2 = exact_linear_solve(Matrix(srows), srhs)
        if isinstance(sol2, Inconsistent):
            bad = [slabels[i] for i, c in enumerate(sol2.certificate) if c]
            raise InconsistentEDS("structure equations for the Om have no solution", bad)
        kern2 = list(sol2.kernel) if isinstance(sol2, Affine) else []
        fixed = [j for j in range(len(unknown)) if all(not kv[j] for kv in kern2)]
        if not fixed:
            break
        for j in fixed:
            t = _as_expr(chart, sol2.solution[j])
            v = params[unknown[j]]
            if not t.is_zero():
                for u in range(nU):
                    if v[u]:
                        cur[u] = cur[u] + t * v[u]
        unknown = [p for j, p in enumerate(unknown) if j not in fixed]
    for p in unknown:
        touched = sorted(UNKNOWNS[u] for u in range(nU) if params[p][u] and UNKNOWNS[u] in CURVATURE)
        if touched:
            raise AmbiguousCurvature(f"curvature coefficients depend on free parameters: {touched}")
    full = cur
    W = [[full[uindex[f"W{i}_{j}"]] for j in range(7)] for i in range(1, 8)]
    omega = tuple(frame.form(row) for row in W)
    curv = CurvatureCoefficients({n: full[uindex[n]] for n in CURVATURE})
    residual = eds_residual(cf.theta, omega, curv.values)
    if not all(r.is_zero() for r in residual.values()):
        bad = [n for n, r in residual.items() if not r.is_zero()]
        raise VerificationFailed(f"the solved forms leave a nonzero residual in d{', d'.join(bad)}")
    return ConnectionSolution(
        ConnectionForms(omega, W), curv, stage1_kernel, len(unknown), True,
        {"stage1_rows": len(rows), "stage2_rounds": rounds, "parameters": stage1_kernel},
    )


def _om_rows(frame, table, cur, params, unknown, uindex):
    """Linear rows in the unknown parameters from the Om-equations at the point cur."""
    chart = frame.chart
    zero = RatExpr.zero(chart)
    srows, srhs, slabels = [], [], []
    for i, name in enumerate(OMEGAS):
        Wi = [cur[uindex[f"W{i + 1}_{j}"]] for j in range(7)]
        dOm = frame.components(frame.form(Wi).d())
        moving = {}
        for p in unknown:
            comps = [params[p][uindex[f"W{i + 1}_{j}"]] for j in range(7)]
            if any(comps):
                moving[p] = comps
        dmov = {p: frame.components(frame.form([RatExpr.const(chart, c) for c in comps]).d()) for p, comps in moving.items()}
        for key in PAIRS:
            a, b = key
            if any(comps[a] or comps[b] for comps in moving.values()):
                continue  # involves e_a(t) or e_b(t) of an unknown t
            terms = table[name].get(key, {})
            base = _eval_poly(terms, cur, chart)
            coeffs = []
            for p in unknown:
                v = params[p]
                lin = zero
                for m, c in terms.items():
                    for idx, e in enumerate(m):
                        if e and v[idx]:
                            mm = list(m)
                            mm[idx] -= 1
                            lin = lin + _eval_poly({tuple(mm): c * e}, cur, chart) * v[idx]
                    if sum(m) == 2:
                        idx = [j for j, e in enumerate(m) for _ in range(e)]
                        for q in unknown:
                            if v[idx[0]] * params[q][idx[1]] or v[idx[1]] * params[q][idx[0]]:
                                raise AmbiguousCurvature(f"d{name} is quadratic in the free parameters")
                coeffs.append(lin - dmov[p].get(key, zero) if p in dmov else lin)
            srows.append(coeffs)
            srhs.append(dOm.get(key, zero) - base)
            slabels.append((name, key))
    return srows, srhs, slabels


def _bindings(theta, omega, curvature):
    b = {f"theta{i}": th for i, th in enumerate(theta)}
    b.update({f"Om{i + 1}": om for i, om in enumerate(omega)})
    b.update(curvature)
    return b


def eds_residual(theta, omega, curvature) -> dict:
    """d(form) - rhs for all 14 equations, computed in coordinates."""
    chart = theta[0].chart
    fx = load("eds")
    ev = LiteralEvaluator(chart, _bindings(theta, omega, curvature), "form")
    forms = dict(zip(THETAS, theta)) | dict(zip(OMEGAS, omega))
    return {name: forms[name].d() - ev(parse_ast(fx.entry(f"d_{name}").text)) for name in EQUATIONS}


def cartan_connection(theta, omega, printed: bool = False):
    """The 7x7 matrix of 1-forms assembled from the coframe.

    With ``printed`` the two rows whose Om3 entries were corrected are taken as printed.
    """
    chart = theta[0].chart
    fx = load("eds")
    ev = LiteralEvaluator(chart, _bindings(theta, omega, {}), "form")
    out = []
    for r in range(7):
        row = []
        name = f"carcon_printed_r{r}" if printed and f"carcon_printed_r{r}" in fx.entries else f"carcon_r{r}"
        for cell in fx.entry(name).text.split("|"):
            v = ev(parse_ast(cell.strip()))
            row.append(v if isinstance(v, DiffForm) else DiffForm.zero(chart, 1))
        out.append(row)
    return out


def connection_curvature(omega_matrix):
    """d(omega) + omega ^ omega, entrywise."""
    n = len(omega_matrix)
    chart = omega_matrix[0][0].chart
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = omega_matrix[i][j].d()
            for l_ in range(n):
                a, b = omega_matrix[i][l_], omega_matrix[l_][j]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a.wedge(b)
            row.append(acc)
        out.append(row)
    return out
