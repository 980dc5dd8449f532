"""Ranks of iterated bracket spans (weak derived flag)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..symcore import Matrix, rank
from .fields import VectorField, lie_bracket


def _rank(fields: Sequence[VectorField], point: dict | None = None) -> int:
    if not fields:
        return 0
    if point is None:
        return rank(Matrix([list(X.comps) for X in fields]))
    return rank(Matrix([[c.evaluate(point) for c in X.comps] for X in fields]))


def _independent_extend(basis: list, candidates: Sequence[VectorField]) -> list:
    out = list(basis)
    r = _rank(out)
    dim = candidates[0].chart.dim if candidates else 0
    for v in candidates:
        if r == dim:
            break
        if v.is_zero():
            continue
        trial = out + [v]
        rt = _rank(trial)
        if rt > r:
            out, r = trial, rt
    return out


def span_growth(generators: Sequence[VectorField], depth: int) -> list[int]:
    """Generic ranks of D, D + [D, D], D + [D, D] + [D, [D, D]], ... (depth entries).

    Each step brackets the generators with the newest independent fields; the
    resulting vectors span the same module as all iterated brackets.
    """
    gens = list(generators)
    if not gens:
        return [0] * depth
    basis = _independent_extend([], gens)
    ranks = [len(basis)]
    newest = list(basis)
    for _ in range(depth - 1):
        cands = [lie_bracket(g, v) for g in gens for v in newest]
        grown = _independent_extend(basis, cands)
        newest = grown[len(basis):]
        basis = grown
        ranks.append(len(basis))
    return ranks


def span_growth_at(generators: Sequence[VectorField], depth: int, point: dict) -> list[int]:
    """Ranks of the same flag evaluated at a rational point.

    Uses all iterated brackets rather than a generic basis, so drops at special
    points are seen.
    """
    point = {k: Fraction(v) for k, v in point.items()}
    gens = list(generators)
    level = list(gens)
    allv = list(gens)
    ranks = [_rank(allv, point)]
    for _ in range(depth - 1):
        level = [lie_bracket(g, v) for g in gens for v in level]
        level = [v for v in level if not v.is_zero()]
        allv = allv + level
        ranks.append(_rank(allv, point))
    return ranks
