#!/usr/bin/env python3
"""Run every check suite at a list of parameters and write one JSON report per k."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from g2twistor.cli import run
from g2twistor.suites import RunConfig


@dataclass
class Config:
    ks: list = field(default_factory=lambda: ["2", "3", "1/2"])
    suites: list = field(default_factory=lambda: ["coframe", "contact", "liecontact", "conformal", "connection"])
    out_dir: Path = Path("reports")
    timeout: float | None = 600.0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", action="append", help="repeatable; default 2, 3, 1/2")
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    ap.add_argument("--timeout", type=float, default=600.0)
    args = ap.parse_args()
    cfg = Config(out_dir=args.out_dir, timeout=args.timeout)
    if args.k:
        cfg.ks = args.k
    cfg.out_dir.mkdir(parents=True, exist_ok=True)

    # the k-independent suites once
    code, rep = run(RunConfig(["octonion", "algebra", "orbit", "boundary"], timeout=cfg.timeout))
    (cfg.out_dir / "fixed.json").write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    print(f"fixed suites: {rep['summary']}")
    worst = code
    for k in cfg.ks:
        code, rep = run(RunConfig(list(cfg.suites), k=Fraction(k), timeout=cfg.timeout))
        name = "k_" + k.replace("/", "_over_").replace("-", "m")
        (cfg.out_dir / f"{name}.json").write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")
        print(f"k = {k}: {rep['summary']}")
        worst = max(worst, code)
    raise SystemExit(worst)


if __name__ == "__main__":
    main()
