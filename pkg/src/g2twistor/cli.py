"""Command line front-end: ``g2twistor run | classify | export``.

Exit codes: 0 all checks passed, 1 some check failed, 2 bad configuration,
3 unreadable fixtures.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import octonion
from .suites import SUITES, CheckReport, ConfigError, RunConfig, Skip, canonical, parse_rational
from .twistor.errors import DegenerateParameter, FixtureError, IncompatibleParameters, UnknownObject

SCHEMA = "g2twistor/1"
POINT_VARS = ("x", "y", "p", "q", "z", "v", "w")


def run_suite(name: str, cfg: RunConfig) -> list[dict]:
    reports = []
    try:
        checks = list(SUITES[name](cfg))
    except (DegenerateParameter, IncompatibleParameters) as exc:
        raise ConfigError(f"suite {name}: {exc}") from exc
    for check_id, thunk in checks:
        t0 = time.perf_counter()
        try:
            ok, witness = thunk()
            rep = CheckReport(check_id, "pass" if ok else "fail", canonical(witness))
            if not ok and rep.witness is None:
                rep.witness = {"result": False}
        except Skip as exc:
            rep = CheckReport(check_id, "skipped", reason=str(exc))
        except FixtureError:
            raise
        except Exception as exc:  # a check that raises has failed; keep the reason
            rep = CheckReport(check_id, "fail", {"error": type(exc).__name__, "message": str(exc)})
        rep.duration_ms = int((time.perf_counter() - t0) * 1000)
        reports.append(rep.as_dict())
    return reports


def _suite_entry(name, cfg, reports):
    return {"suite": name, "checks": reports}


def _skipped_suite(name, reason):
    return [CheckReport(name, "skipped", reason=reason).as_dict()]


def run(cfg: RunConfig) -> tuple[int, dict]:
    for s in cfg.suites:
        if s not in SUITES:
            raise ConfigError(f"unknown suite {s!r}; expected one of {', '.join(SUITES)}")
    if cfg.k is not None:
        from .twistor.model import as_k

        try:
            as_k(cfg.k)
        except DegenerateParameter as exc:
            raise ConfigError(str(exc)) from exc
    results = {}
    if cfg.timeout is None and len(cfg.suites) == 1:
        results[cfg.suites[0]] = run_suite(cfg.suites[0], cfg)
    else:
        # one worker per suite; report order is by declaration
        ctx = multiprocessing.get_context("spawn")
        with ctx.Pool(processes=min(len(cfg.suites), multiprocessing.cpu_count())) as pool:
            pending = {s: pool.apply_async(run_suite, (s, cfg)) for s in cfg.suites}
            start = time.monotonic()
            for s, fut in pending.items():
                wait = None if cfg.timeout is None else max(0.0, start + cfg.timeout - time.monotonic())
                try:
                    results[s] = fut.get(wait)
                except multiprocessing.TimeoutError:
                    results[s] = _skipped_suite(s, f"timeout after {cfg.timeout} s")
            pool.terminate()
    suites = [_suite_entry(s, cfg, results[s]) for s in cfg.suites]
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for s in suites:
        for c in s["checks"]:
            counts[c["status"]] += 1
    report = {
        "schema": SCHEMA,
        "config": {"suites": list(cfg.suites), "k": None if cfg.k is None else str(cfg.k),
                   "points": cfg.points and [{v: str(x) for v, x in p.items()} for p in cfg.points]},
        "suites": suites,
        "summary": counts,
    }
    return (1 if counts["fail"] else 0), report


def load_points(path: str) -> list[dict]:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read points file {path}: {exc}") from exc
    if not isinstance(raw, list):
        raise ConfigError("points file must hold a list of objects")
    points = []
    for i, p in enumerate(raw):
        if not isinstance(p, dict):
            raise ConfigError(f"point {i} is not an object")
        missing = [v for v in POINT_VARS if v not in p]
        if missing:
            raise ConfigError(f"point {i} lacks {', '.join(missing)}")
        pt = {v: parse_rational(str(x)) for v, x in p.items()}
        if pt["q"] <= 0:
            raise ConfigError(f"point {i}: q must be positive")
        if pt["w"] == 0:
            raise ConfigError(f"point {i}: w must be nonzero")
        points.append(pt)
    return points


# -- classify / export ------------------------------------------------------------

def _vector(text: str):
    parts = [p for p in text.split(",")]
    if len(parts) != 7:
        raise ConfigError(f"expected 7 comma-separated rationals, got {len(parts)}")
    return [parse_rational(p) for p in parts]


def classify(v: str, w: str) -> str:
    c = octonion.classify_null_plane(_vector(v), _vector(w))
    if c.tag == "Special":
        return "Special"
    lead = next(x for x in c.line if x)
    return "Generic " + ",".join(str(Fraction(x) / lead) for x in c.line)


def _export_object(name: str, k):
    from .twistor import build_contact_data, build_theta_coframe
    from .twistor.model import objects
    from .twistor.boundary import g2_contact_pair

    if name == "lambda0":
        return g2_contact_pair().lam
    if name == "upsilon0":
        return g2_contact_pair().upsilon
    k = Fraction(2) if k is None else k
    if name in ("lambda", "rho", "upsilon", "metric"):
        data = build_contact_data(k, check=False)
        return getattr(data, "lam" if name == "lambda" else name)
    if name.startswith("theta") and name[5:].isdigit() and int(name[5:]) < 7:
        return build_theta_coframe(k, check=False).theta[int(name[5:])]
    if ":" in name:
        fixture, entry = name.split(":", 1)
        return objects(fixture, k)(entry)
    raise UnknownObject(f"unknown object {name!r}")


def export(name: str, k=None, fmt: str = "canonical") -> str:
    obj = _export_object(name, k)
    return obj.to_latex() if fmt == "latex" else str(obj)


# -- argument handling ----------------------------------------------------------

def _parser():
    ap = argparse.ArgumentParser(prog="g2twistor", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run check suites and print a JSON report")
    r.add_argument("--suite", action="append", required=True, help=f"one of {', '.join(SUITES)} or 'all'")
    r.add_argument("--k", help="the parameter k (a rational)")
    r.add_argument("--out", help="also write the report here")
    r.add_argument("--points", help="JSON list of chart points for pointwise checks")
    r.add_argument("--timeout", type=float, help="seconds per suite before it is reported skipped")
    c = sub.add_parser("classify", help="orbit type of the null plane span(v, w)")
    c.add_argument("v")
    c.add_argument("w")
    e = sub.add_parser("export", help="print a named object")
    e.add_argument("name")
    e.add_argument("--k")
    e.add_argument("--format", choices=("canonical", "latex"), default="canonical")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            suites = list(SUITES) if "all" in args.suite else args.suite
            cfg = RunConfig(
                suites=suites,
                k=None if args.k is None else parse_rational(args.k),
                points=load_points(args.points) if args.points else None,
                output=Path(args.out) if args.out else None,
                timeout=args.timeout,
            )
            code, report = run(cfg)
            text = json.dumps(report, indent=2, sort_keys=True)
            if cfg.output:
                cfg.output.write_text(text + "\n")
            print(text)
            return code
        if args.command == "classify":
            print(classify(args.v, args.w))
            return 0
        if args.command == "export":
            k = None if args.k is None else parse_rational(args.k)
            print(export(args.name, k, args.format))
            return 0
    except (ConfigError, DegenerateParameter, IncompatibleParameters, UnknownObject) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (octonion.NotNull, octonion.NotAPlane) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FixtureError as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return 3
    return 2


if __name__ == "__main__":
    sys.exit(main())
