"""Literal syntax for forms, symmetric tensors and vector fields.

The scalar grammar gains ``d<var>`` (a differential), ``@<var>`` (a coordinate
vector field), ``^`` between forms (wedge) and ``*`` between tensors (symmetric
product).  An integer exponent on a tensor is a symmetric power.
"""

from __future__ import annotations

from fractions import Fraction

from ..symcore import ExpressionSyntaxError, RatExpr, UnboundParameter
from ..symcore.chart import Chart
from ..symcore.parser import BinOp, Name, Neg, Num, Partial, Pow, eval_parameter, parse_ast, scalar_power
from .fields import DiffForm, SymTensor, VectorField


class LiteralEvaluator:
    def __init__(self, chart: Chart, bindings: dict | None = None, mode: str = "form"):
        self.chart = chart
        # kept by reference so that lazy scopes (fixtures) resolve on demand
        self.bindings = bindings if bindings is not None else {}
        self.mode = mode

    def _lift(self, x):
        if isinstance(x, RatExpr) and x.chart != self.chart:
            return x.to_chart(self.chart)
        if isinstance(x, (int, Fraction)):
            return RatExpr.const(self.chart, x)
        return x

    def name(self, node: Name):
        n = node.name
        if n in self.bindings:
            v = self._lift(self.bindings[n])
            if self.mode == "tensor" and isinstance(v, DiffForm) and v.degree <= 1:
                v = SymTensor.from_form(v)
            return v
        if n in self.chart.variables:
            return RatExpr.var(self.chart, n)
        if n.startswith("d") and n[1:] in self.chart.variables:
            if self.mode == "tensor":
                return SymTensor.differential(self.chart, n[1:])
            return DiffForm.differential(self.chart, n[1:])
        raise UnboundParameter(n)

    def __call__(self, node):
        if isinstance(node, Num):
            return RatExpr.const(self.chart, node.value)
        if isinstance(node, Name):
            return self.name(node)
        if isinstance(node, Partial):
            return VectorField.partial(self.chart, node.name)
        if isinstance(node, Neg):
            return -self(node.arg)
        if isinstance(node, BinOp):
            a, b = self(node.left), self(node.right)
            try:
                return self._binop(node.op, a, b)
            except (TypeError, ValueError) as exc:
                raise ExpressionSyntaxError(str(exc), node.pos) from None
        if isinstance(node, Pow):
            base = self(node.base)
            if isinstance(base, RatExpr):
                e = eval_parameter(node.exponent, self.bindings)
                return scalar_power(base, e, self.chart, node.base, self.bindings)
            if isinstance(base, DiffForm):
                other = self(node.exponent)
                if isinstance(other, RatExpr):
                    other = DiffForm.function(other)
                return base.wedge(other)
            if isinstance(base, SymTensor):
                e = eval_parameter(node.exponent, self.bindings)
                if e.denominator != 1 or e < 0:
                    raise ExpressionSyntaxError("symmetric power needs a natural exponent", node.pos)
                return base ** int(e)
            raise ExpressionSyntaxError("power of a vector field", node.pos)
        raise TypeError(node)

    def _binop(self, op, a, b):
        if op in "+-":
            if isinstance(a, RatExpr) and not isinstance(b, RatExpr):
                a = self._promote(a, b)
            if isinstance(b, RatExpr) and not isinstance(a, RatExpr):
                b = self._promote(b, a)
            return a + b if op == "+" else a - b
        if op == "*":
            if isinstance(a, RatExpr) or isinstance(b, RatExpr):
                return b * a if isinstance(a, RatExpr) and not isinstance(b, RatExpr) else a * b
            if isinstance(a, SymTensor) and isinstance(b, SymTensor):
                return a.product(b)
            if isinstance(a, DiffForm) and isinstance(b, DiffForm) and (a.degree == 0 or b.degree == 0):
                return a.wedge(b)
            raise TypeError("'*' is the symmetric product; use '^' for the wedge")
        if op == "/":
            if not isinstance(b, RatExpr):
                raise TypeError("division by a non-scalar")
            return a * b.inverse() if not isinstance(a, RatExpr) else a / b
        raise TypeError(op)

    def _promote(self, s: RatExpr, like):
        if s.is_zero():
            return type(like).zero(self.chart, like.degree) if hasattr(like, "degree") else VectorField.zero(self.chart)
        if isinstance(like, DiffForm):
            return DiffForm.function(s)
        if isinstance(like, SymTensor):
            return SymTensor.function(s)
        raise TypeError("adding a scalar to a vector field")


def parse_form(text: str, chart: Chart, bindings: dict | None = None) -> DiffForm:
    v = LiteralEvaluator(chart, bindings, "form")(parse_ast(text))
    if isinstance(v, RatExpr):
        return DiffForm.function(v)
    if not isinstance(v, DiffForm):
        raise ExpressionSyntaxError(f"{text!r} is not a differential form", 0, text)
    return v


def parse_tensor(text: str, chart: Chart, bindings: dict | None = None) -> SymTensor:
    v = LiteralEvaluator(chart, bindings, "tensor")(parse_ast(text))
    if isinstance(v, RatExpr):
        return SymTensor.function(v)
    if not isinstance(v, SymTensor):
        raise ExpressionSyntaxError(f"{text!r} is not a symmetric tensor", 0, text)
    return v


def parse_vector(text: str, chart: Chart, bindings: dict | None = None) -> VectorField:
    v = LiteralEvaluator(chart, bindings, "vector")(parse_ast(text))
    if isinstance(v, RatExpr) and v.is_zero():
        return VectorField.zero(chart)
    if not isinstance(v, VectorField):
        raise ExpressionSyntaxError(f"{text!r} is not a vector field", 0, text)
    return v
