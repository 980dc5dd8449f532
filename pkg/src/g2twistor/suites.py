"""Named check suites for the batch runner.

A suite is a function of a RunConfig that yields (check_id, thunk) pairs.  Each
thunk returns ``(ok, witness)`` or raises; the runner times it and turns the
outcome into a CheckReport.  A thunk may also raise Skip with a reason.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import liealg, octonion
from .geomcalc import DiffForm, SymTensor, VectorField, weyl_tensor
from .symcore import Chart, Matrix, RatExpr, signature_of_symmetric


class ConfigError(ValueError):
    pass


class Skip(Exception):
    pass


@dataclass
class RunConfig:
    suites: list
    k: Fraction | None = None
    points: list | None = None
    output: Path | None = None
    timeout: float | None = None


@dataclass
class CheckReport:
    check_id: str
    status: str  # pass | fail | skipped
    witness: object = None
    duration_ms: int = 0
    reason: str | None = None

    def as_dict(self):
        d = {"check_id": self.check_id, "status": self.status, "duration_ms": self.duration_ms}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        return d


def canonical(obj):
    """JSON-ready value with expressions in canonical printed form."""
    if isinstance(obj, (RatExpr, DiffForm, SymTensor, VectorField)):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, Matrix):
        return [[canonical(x) for x in row] for row in obj.rows]
    return str(obj)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


# -- octonion / algebra / orbit ---------------------------------------------------

def _octonion_suite(cfg):
    def composition():
        ch = Chart(tuple(f"a{i}" for i in range(8)) + tuple(f"b{i}" for i in range(8)))
        X = octonion.SplitOct(RatExpr.var(ch, "a0"), tuple(RatExpr.var(ch, f"a{i}") for i in range(1, 8)))
        Y = octonion.SplitOct(RatExpr.var(ch, "b0"), tuple(RatExpr.var(ch, f"b{i}") for i in range(1, 8)))
        r = octonion.norm(octonion.multiply(X, Y)) - octonion.norm(X) * octonion.norm(Y)
        return r.is_zero(), {"residual": r}

    def signature():
        s = signature_of_symmetric(octonion.norm_gram())
        return tuple(s) == (4, 4, 0), {"signature": s}

    def compatibility():
        c = octonion.compatibility_check(liealg.standard_threeform(), liealg.standard_form())
        return c.lam == -24, {"lambda": c.lam, "volume": {"".join(map(str, k)): v for k, v in c.volume.items()}}

    yield "octonion.composition_identity", composition
    yield "octonion.norm_signature", signature
    yield "octonion.compatibility", compatibility
    yield from _classify_checks("octonion")


def _unit(i):
    return [1 if j == i else 0 for j in range(7)]


def _scaled_line(line):
    lead = next(x for x in line if x)
    return tuple(Fraction(x) / lead for x in line)


def _classify_checks(prefix):
    def special():
        c = octonion.classify_null_plane(_unit(0), _unit(1))
        return c.tag == "Special", {"tag": c.tag}

    def generic():
        c = octonion.classify_null_plane(_unit(1), _unit(2))
        line = _scaled_line(c.line) if c.line else None
        return c.tag == "Generic" and line == tuple(_unit(0)), {"tag": c.tag, "line": line}

    yield f"{prefix}.classify_e1_e2", special
    yield f"{prefix}.classify_e2_e3", generic


def _algebra_suite(cfg):
    models = liealg.build_models()

    def stabilizer():
        st = liealg.stabilizer_of_threeform(models.phi, models.so34)
        same = st.dim == 14 and all(models.g2.span.contains(e) for e in st.span.elements) \
            and all(st.span.contains(e) for e in models.g2.span.elements)
        return same, {"dim": st.dim}

    def jacobi():
        return liealg.jacobi_holds(models.g2) and liealg.jacobi_holds(models.so34), None

    def killing(which, expected):
        def run():
            s = signature_of_symmetric(getattr(models, which).killing)
            return tuple(s) == expected, {"signature": s}
        return run

    data = liealg.normality_setup(models)

    def codiff():
        a = liealg.codifferential_square_zero(data.db)
        b = liealg.codifferential_square_zero(data.db_tilde)
        return a and b, {"g2": a, "so34": b}

    def kernel():
        rep = liealg.normality_report(data, models)
        keys = ("phi1_in_kernel", "phi1_tilde_in_kernel", "phi2_in_kernel", "phi2_tilde_in_kernel")
        return all(rep[k] for k in keys), rep

    yield "algebra.stabilizer_is_g2", stabilizer
    yield "algebra.jacobi", jacobi
    yield "algebra.killing_g2", killing("g2", (8, 6, 0))
    yield "algebra.killing_so34", killing("so34", (12, 9, 0))
    yield "algebra.codifferential_squared", codiff
    yield "algebra.normality_kernel", kernel


def _orbit_suite(cfg):
    yield from _classify_checks("orbit")

    def randomized():
        rng = random.Random(20240607)
        planes = [(_unit(0), _unit(1), "Special", None), (_unit(1), _unit(2), "Generic", tuple(_unit(0)))]
        bad = []
        for trial in range(100):
            v, w, tag, line = planes[trial % 2]
            while True:
                a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4))
                if a * d - b * c:
                    break
            v2 = [a * x + b * y for x, y in zip(v, w)]
            w2 = [c * x + d * y for x, y in zip(v, w)]
            got = octonion.classify_null_plane(v2, w2)
            gl = _scaled_line(got.line) if got.line else None
            if got.tag != tag or gl != line:
                bad.append(trial)
        return not bad, {"trials": 100, "mismatches": bad}

    yield "orbit.randomized_basis_changes", randomized


# -- twistor suites ---------------------------------------------------------------

DEFAULT_KS = (Fraction(2), Fraction(3), Fraction(1, 2))


def _ks(cfg, default=DEFAULT_KS):
    return (cfg.k,) if cfg.k is not None else default


def _tag(k):
    return f"k={k}"


def _point_checks(cfg, name, k, expr_of):
    if not cfg.points:
        return

    def run():
        expr = expr_of()
        values = {}
        for i, p in enumerate(cfg.points):
            values[str(i)] = expr.evaluate({v: p[v] for v in expr.free_variables()})
        return all(values.values()), {"values": values}

    yield f"{name}[{_tag(k)}]", run


def _coframe_suite(cfg):
    from .twistor import build_contact_data, build_distribution, build_theta_coframe, s_characterization, s_growth
    from .geomcalc import span_growth

    for k in _ks(cfg):
        t = _tag(k)

        def growth(k=k):
            g = span_growth(list(build_distribution(k)), 3)
            return list(g) == [2, 3, 5], {"growth": g}

        def sgrowth(k=k):
            g = s_growth(k)
            return list(g) == [3, 5, 7], {"growth": g}

        def scharac(k=k):
            r = s_characterization(k)
            return r["kernel_is_vertical"], r

        def selfchecks(k=k):
            r = build_theta_coframe(k, check=False).self_checks()
            return all(r.values()), r

        def metric(k=k):
            rep = build_contact_data(k).report
            keys = ("metric_semibasic", "D_null", "metric_proportional")
            return all(rep[x] for x in keys), {x: rep[x] for x in keys + ("metric_factor",)}

        yield f"coframe.distribution_growth[{t}]", growth
        yield f"coframe.s_growth[{t}]", sgrowth
        yield f"coframe.s_characterization[{t}]", scharac
        yield f"coframe.structure_equations[{t}]", selfchecks
        yield f"coframe.metric[{t}]", metric
        yield from _point_checks(
            cfg, "coframe.top_wedge_at_points", k,
            lambda k=k: _top(build_theta_coframe(k, check=False).theta),
        )


def _top(theta):
    from .twistor import top_wedge
    from .twistor.model import TWISTOR

    return top_wedge(theta).top_coefficient(TWISTOR.variables)


def _contact_suite(cfg):
    from .twistor import build_contact_data, contact_volume
    from .twistor.model import TWISTOR

    for k in _ks(cfg):
        def volume(k=k):
            lam = build_contact_data(k, check=False).lam
            vol = contact_volume(lam)
            expected = RatExpr.var(TWISTOR, "w") * -6
            return vol == expected, {"lambda": lam, "volume": vol}

        yield f"contact.volume[{_tag(k)}]", volume
        yield from _point_checks(
            cfg, "contact.volume_at_points", k,
            lambda k=k: contact_volume(build_contact_data(k, check=False).lam),
        )


def _verify_each(prefix, cat, kind, data):
    from .twistor import verify_symmetry

    for n, X in zip(cat.names, cat.generators):
        def run(X=X):
            res = verify_symmetry(X, kind, data)
            return res.ok, None if res.ok else {"certificate": res.certificate}

        yield f"{prefix}.{n}", run
    for n, why in cat.skipped.items():
        def skipped(why=why):
            raise Skip(why)

        yield f"{prefix}.{n}", skipped


def _closure(prefix, gens, dim, signature=None):
    from .twistor import bracket_closure_report

    def run():
        rep = bracket_closure_report(gens, raise_on_failure=False)
        ok = rep.closed and rep.dim == dim and (signature is None or tuple(rep.signature) == signature)
        return ok, rep.as_dict()

    return f"{prefix}.closure", run


def _liecontact_suite(cfg):
    from .twistor import build_contact_data, catalog, prolong_symmetry
    from .twistor.model import objects

    k = cfg.k if cfg.k is not None else Fraction(3)
    name = "liecontact2_full" if k == 2 else "liecontact_k"
    cat = catalog(name, k, verify=False)
    p = f"liecontact[{_tag(k)}]"
    yield from _verify_each(p, cat, "lie_contact", build_contact_data(k))
    if k == 2:
        yield _closure(p, cat.generators, 21, (12, 9, 0))
        yield _closure(p + ".xt_yt", cat.generators[:14], 14, (8, 6, 0))
    else:
        yield _closure(p, cat.generators, len(cat.generators))
    base = catalog("dist_k", k, verify=False)
    printed = objects("liecontact", k)
    for n, X in zip(base.names, base.generators):
        def lift(n=n, X=X):
            Xt = prolong_symmetry(X, k)
            want = printed("Xt" + n[1:])
            return Xt == want, None if Xt == want else {"computed": Xt, "printed": want}

        yield f"{p}.prolong_{n}", lift
    for n, why in base.skipped.items():
        def skipped(why=why):
            raise Skip(why)

        yield f"{p}.prolong_{n}", skipped


def _boundary_suite(cfg):
    from .twistor import boundary_reduction, catalog
    from .twistor.boundary import g2_contact_pair

    def reduction():
        rep = boundary_reduction(2)
        return all(rep.checks.values()), {"checks": rep.checks, "constants": rep.constants,
                                         "lambda0": rep.lambda0}

    yield "boundary.reduction", reduction
    cat = catalog("g2contact_flat", verify=False)
    yield from _verify_each("boundary.g2contact", cat, "g2_contact", g2_contact_pair())
    yield _closure("boundary.g2contact", cat.generators, 14, (8, 6, 0))


def _conformal_suite(cfg):
    from .twistor import catalog, conformal_root, metric_example
    from .twistor.model import objects
    from .twistor.model import FLAT_K

    def weyl(k, flat):
        def run():
            g = objects("metrics", 2)("conffl") if k == 2 else metric_example(k)
            W = weyl_tensor(g)
            ok = W.weyl_is_zero() if flat else (not W.weyl_is_zero() and all(W.symmetry_report().values()))
            return ok, {"nonzero_entries": len(W.weyl), "symmetries": W.symmetry_report()}
        return run

    ks = _ks(cfg, (Fraction(2), Fraction(3)))
    for k in ks:
        flat = k in FLAT_K
        yield f"conformal.weyl_{'zero' if flat else 'nonzero'}[{_tag(k)}]", weyl(k, flat)
    if cfg.k is None:
        ks = (Fraction(2), Fraction(-2, 9))
    for k in ks:
        if k == 2:
            cat = catalog("conf2_full", k, verify=False)
            data = objects("metrics", 2)("conffl")
            yield from _verify_each("conformal[k=2]", cat, "conformal", data)
            yield _closure("conformal[k=2]", cat.generators, 21, (12, 9, 0))
        elif k not in FLAT_K:
            cat = catalog("conf_k", k, verify=False)
            p = f"conformal[{_tag(k)}]"
            yield from _verify_each(p, cat, "conformal", metric_example(k))
            if conformal_root(k) is not None:
                yield _closure(p, cat.generators, len(cat.generators))


def _connection_suite(cfg):
    from .twistor import build_theta_coframe, cartan_connection, connection_curvature, solve_connection_forms
    from .twistor.model import FLAT_K

    k = cfg.k if cfg.k is not None else Fraction(2)
    state = {}

    def solve():
        cf = build_theta_coframe(k)
        sol = solve_connection_forms(cf)
        state["cf"], state["sol"] = cf, sol
        return sol.residual_zero, {"stage1_kernel": sol.stage1_kernel, "solution_dim": sol.solution_dim,
                                   **sol.report}

    def curvature():
        sol = state.get("sol")
        if sol is None:
            raise Skip("no connection solution")
        cur = sol.curvature
        flat = k in FLAT_K
        ok = cur.all_zero() if flat else bool(cur.nonzero())
        return ok, {"nonzero": cur.nonzero(), "values": {n: v for n, v in cur.values.items() if not v.is_zero()}}

    def carcon():
        sol = state.get("sol")
        if sol is None:
            raise Skip("no connection solution")
        M = cartan_connection(state["cf"].theta, sol.forms.omega)
        F = connection_curvature(M)
        bad = [f"{i},{j}" for i, row in enumerate(F) for j, x in enumerate(row) if not x.is_zero()]
        return not bad, {"nonzero_entries": bad}

    yield f"connection.solve[{_tag(k)}]", solve
    yield f"connection.curvature[{_tag(k)}]", curvature
    if k == 2:
        yield f"connection.cartan_flat[{_tag(k)}]", carcon


SUITES = {
    "octonion": _octonion_suite,
    "algebra": _algebra_suite,
    "orbit": _orbit_suite,
    "coframe": _coframe_suite,
    "contact": _contact_suite,
    "liecontact": _liecontact_suite,
    "boundary": _boundary_suite,
    "conformal": _conformal_suite,
    "connection": _connection_suite,
}
