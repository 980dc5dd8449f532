#!/usr/bin/env python3
"""Show, object by object, that each verbatim transcription fails its check
and the corrected reading passes."""

from fractions import Fraction

from g2twistor.geomcalc import proportional_mod
from g2twistor.twistor import (
    build_contact_data, build_theta_coframe, cartan_connection, connection_curvature,
    metric_example, solve_connection_forms, verify_symmetry,
)
from g2twistor.twistor.boundary import g2_contact_pair, g2_generators
from g2twistor.twistor.model import objects

K = Fraction(-2, 9)


def row(name, printed_ok, fixed_ok):
    print(f"{name:<22} printed: {'pass' if printed_ok else 'FAIL':<5} corrected: {'pass' if fixed_ok else 'FAIL'}")


def main():
    sym = objects("symmetries", K, extra={"s": Fraction(25, 9)})
    g = metric_example(K)
    for n in ("X8", "X9"):
        row(f"{n} (k = {K})", verify_symmetry(sym(f"{n}_printed"), "conformal", g).ok,
            verify_symmetry(sym(n), "conformal", g).ok)
    lc = objects("liecontact", 2)
    data = build_contact_data(2)
    for n in ("Yt7", "Zh4"):
        row(n, verify_symmetry(lc(f"{n}_printed"), "lie_contact", data).ok,
            verify_symmetry(lc(n), "lie_contact", data).ok)
    ok = lambda t: type(proportional_mod(t, data.upsilon, data.lam, "z")).__name__ == "Yes"
    row("upsilon (k = 2)", ok(lc("upsilon_flat_printed")), ok(lc("upsilon_flat")))
    pair = g2_contact_pair()
    row("G1..G14 vs la1", all(verify_symmetry(X, "g2_contact", pair).ok for X in g2_generators(printed=True)),
        all(verify_symmetry(X, "g2_contact", pair).ok for X in g2_generators()))
    cf = build_theta_coframe(2)
    om = solve_connection_forms(cf).forms.omega
    flat = lambda M: all(x.is_zero() for r in connection_curvature(M) for x in r)
    row("Cartan connection", flat(cartan_connection(cf.theta, om, printed=True)), flat(cartan_connection(cf.theta, om)))


if __name__ == "__main__":
    main()
