"""Proportionality of symmetric tensors modulo a contact-type 1-form."""

from __future__ import annotations

from dataclasses import dataclass

from ..symcore import RatExpr
from .fields import DiffForm, NotEliminable, SymTensor


@dataclass(frozen=True)
class Yes:
    f: RatExpr


@dataclass(frozen=True)
class No:
    certificate: tuple  # (key, ratio-or-None, key, ratio-or-None) of disagreeing monomials

    def describe(self, chart) -> str:
        k1, r1, k2, r2 = self.certificate
        name = lambda k: "*".join(f"d{chart.variables[i]}" for i in k) or "1"
        return f"{name(k1)}: {r1}  vs  {name(k2)}: {r2}"


def restrict(T: SymTensor, lam: DiffForm, solve_var: str) -> SymTensor:
    """T on ker(lam): replace d(solve_var) by d(solve_var) - lam / c."""
    c = lam.coefficient(solve_var)
    if c.is_zero():
        raise NotEliminable(f"lambda has no d{solve_var} component")
    inv = c.inverse()
    rest = DiffForm(lam.chart, 1, {k: -(v * inv) for k, v in lam.terms.items() if k != (lam.chart.index(solve_var),)})
    return T.substitute_differential(solve_var, rest)


def proportional_mod(T1: SymTensor, T2: SymTensor, lam: DiffForm, solve_var: str):
    """Is T1 = f T2 + lam . tau for some function f and tensor tau?"""
    if lam.degree != 1:
        raise ValueError("lambda must be a 1-form")
    R1 = restrict(T1, lam, solve_var)
    R2 = restrict(T2, lam, solve_var)
    zero = RatExpr.zero(T1.chart)
    if R1.is_zero():
        return Yes(zero)
    if R2.is_zero():
        k = min(R1.terms)
        return No((k, None, k, None))
    k0 = min(R2.terms)
    f = R1.terms.get(k0, zero) / R2.terms[k0]
    keys = sorted(set(R1.terms) | set(R2.terms))
    for k in keys:
        a = R1.terms.get(k, zero)
        b = R2.terms.get(k, zero)
        if a != f * b:
            ratio = a / b if not b.is_zero() else None
            return No((k0, f, k, ratio))
    return Yes(f)
