"""Maps between charts and pullbacks of forms and symmetric tensors."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..symcore import (
    ChartMismatch,
    DivisionByZero,
    IllegalFractionalSubstitution,
    RatExpr,
    SymcoreError,
    UnknownVariable,
)
from ..symcore.chart import Chart
from .fields import DiffForm, SymTensor


class SubstitutionError(SymcoreError):
    pass


@dataclass(frozen=True, eq=False)
class ChartMap:
    """phi: source -> target, given by the target coordinates as functions on source."""

    source: Chart
    target: Chart
    assignment: dict
    _dimages: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        fixed = {}
        for name, img in self.assignment.items():
            if name not in self.target.variables:
                raise UnknownVariable(f"{name} is not a target coordinate")
            if not isinstance(img, RatExpr):
                img = RatExpr.const(self.source, img)
            elif img.chart != self.source:
                img = img.to_chart(self.source)
            fixed[name] = img
        for name in self.target.variables:
            if name not in fixed:
                if name not in self.source.variables:
                    raise SubstitutionError(f"target coordinate {name} has no image")
                fixed[name] = RatExpr.var(self.source, name)
        object.__setattr__(self, "assignment", fixed)

    @classmethod
    def identity(cls, chart: Chart) -> "ChartMap":
        return cls(chart, chart, {})

    def scalar(self, f: RatExpr) -> RatExpr:
        if f.chart != self.target:
            raise ChartMismatch(f"{f.chart} is not the target {self.target}")
        try:
            return f.substitute(self.assignment, self.source)
        except (IllegalFractionalSubstitution, UnknownVariable, DivisionByZero) as exc:
            raise SubstitutionError(str(exc)) from exc

    def differential(self, name: str) -> DiffForm:
        """phi^* d(name) as a 1-form on the source."""
        if name not in self._dimages:
            self._dimages[name] = DiffForm.function(self.assignment[name]).d()
        return self._dimages[name]

    def compose(self, inner: "ChartMap") -> "ChartMap":
        """self o inner."""
        if inner.target != self.source:
            raise ChartMismatch("maps do not compose")
        return ChartMap(inner.source, self.target, {k: inner.scalar(v) for k, v in self.assignment.items()})

    def __matmul__(self, inner: "ChartMap") -> "ChartMap":
        return self.compose(inner)


def _pull_form(phi: ChartMap, w: DiffForm) -> DiffForm:
    out = DiffForm.zero(phi.source, w.degree)
    for key, c in w.terms.items():
        term = DiffForm.function(phi.scalar(c))
        for i in key:
            term = term.wedge(phi.differential(phi.target.variables[i]))
            if term.is_zero():
                break
        out = out + term
    return DiffForm(phi.source, w.degree, out.terms)


def _pull_tensor(phi: ChartMap, t: SymTensor) -> SymTensor:
    out = SymTensor.zero(phi.source, t.degree)
    for key, c in t.terms.items():
        term = SymTensor.function(phi.scalar(c))
        for i in key:
            term = term.product(SymTensor.from_form(phi.differential(phi.target.variables[i])))
            if term.is_zero():
                break
        out = out + term
    return SymTensor(phi.source, t.degree, out.terms)


def pullback(phi: ChartMap, T):
    if T.chart != phi.target:
        raise ChartMismatch(f"{T.chart} is not the target {phi.target}")
    if isinstance(T, DiffForm):
        return _pull_form(phi, T)
    if isinstance(T, SymTensor):
        return _pull_tensor(phi, T)
    if isinstance(T, RatExpr):
        return phi.scalar(T)
    raise TypeError(f"cannot pull back {type(T).__name__}")
