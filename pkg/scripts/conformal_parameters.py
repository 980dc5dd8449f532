#!/usr/bin/env python3
"""Parameters k where sqrt(10k^2 - 10k + 5) is rational, and the conformal
symmetry algebra of D_k at each of them."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from g2twistor.twistor import bracket_closure_report, catalog, conformal_root, rational_conformal_ks


@dataclass
class Config:
    count: int = 4


def main(cfg: Config):
    for k in rational_conformal_ks(cfg.count):
        cat = catalog("conf_k", k)
        rep = bracket_closure_report(cat)
        print(f"k = {str(k):>8}  s = {str(conformal_root(k)):>8}  generators {len(cat)}  "
              f"closed {rep.closed}  killing {rep.signature}  center {rep.center_dim}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=Config.count)
    main(Config(ap.parse_args().count))
