"""Exterior and symmetric calculus on coordinate charts."""

from ..symcore import ChartMismatch
from .curvature import Curvature, DegenerateMetric, weyl_tensor
from .fields import DiffForm, NotEliminable, SymTensor, VectorField, lie_bracket
from .growth import span_growth, span_growth_at
from .literal import parse_form, parse_tensor, parse_vector
from .maps import ChartMap, SubstitutionError, pullback
from .proportional import No, Yes, proportional_mod, restrict


def exterior_derivative(w: DiffForm) -> DiffForm:
    return w.d()


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    return a.wedge(b)


def interior_product(X: VectorField, w: DiffForm) -> DiffForm:
    return w.interior(X)


def lie_derivative(X: VectorField, T):
    return T.lie(X)


__all__ = [
    "ChartMap", "ChartMismatch", "Curvature", "DegenerateMetric", "DiffForm", "No",
    "NotEliminable", "SubstitutionError", "SymTensor", "VectorField", "Yes",
    "exterior_derivative", "interior_product", "lie_bracket", "lie_derivative",
    "parse_form", "parse_tensor", "parse_vector", "proportional_mod", "pullback",
    "restrict", "span_growth", "span_growth_at", "wedge", "weyl_tensor",
]
