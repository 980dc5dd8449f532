#!/usr/bin/env python3
"""Solve the structure equations over a range of k and tabulate the curvature.

For each k prints which of the 24 curvature coefficients vanish and, with
--show, their values.  Flat parameters should give an all-zero row.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from fractions import Fraction

from g2twistor.twistor import CURVATURE, DegenerateParameter, solve_connection_forms


@dataclass
class ScanConfig:
    ks: list = field(default_factory=lambda: ["2", "2/3", "1/3", "-1", "3", "1/2", "5/2", "-2/9"])
    show: bool = False


def scan(cfg: ScanConfig):
    for text in cfg.ks:
        k = Fraction(text)
        t0 = time.perf_counter()
        try:
            sol = solve_connection_forms(k=k)
        except DegenerateParameter as exc:
            print(f"k = {k}: {exc}")
            continue
        nz = sol.curvature.nonzero()
        dt = time.perf_counter() - t0
        mark = "".join("*" if n in nz else "." for n in CURVATURE)
        print(f"k = {str(k):>5}  {mark}  {len(nz):2d}/24 nonzero  ({dt:.1f}s)")
        if cfg.show:
            for n in nz:
                print(f"    {n} = {sol.curvature.values[n]}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ks", nargs="*")
    ap.add_argument("--show", action="store_true")
    a = ap.parse_args()
    cfg = ScanConfig(show=a.show)
    if a.ks:
        cfg.ks = a.ks
    print("columns: " + " ".join(CURVATURE))
    scan(cfg)
