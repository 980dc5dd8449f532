"""Recursive-descent parser for the formula language.

The parser builds a small AST; evaluators decide what names mean.  The scalar
evaluator here maps chart variables to RatExpr and bound parameters to
constants.  Other evaluators (forms, tensors, vector fields) reuse the AST.

Exponents: an unparenthesized exponent is an integer or a bound name, so
``q^2/2`` reads as ``(q^2)/2``; fractional exponents need parentheses:
``q^(1/3)``, ``q^(k-2)``.  Chains are left-associative: ``a^b^c`` is ``(a^b)^c``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .chart import Chart
from .errors import (
    ExpressionSyntaxError,
    FractionalExponentOnNonDistinguishedVariable,
    UnboundParameter,
)
from .ratexpr import RatExpr


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


@dataclass(frozen=True)
class Partial:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    arg: "Node"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: "Node"
    pos: int


Node = Union[Num, Name, Partial, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(@[A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, partial, op = m.groups()
        start = m.start(m.lastindex) if m.lastindex else pos
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif partial is not None:
            tokens.append(("partial", partial[1:], start))
        elif op is not None:
            if op not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {op!r}", start, text)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value or kind != "op":
            raise ExpressionSyntaxError(f"expected {value!r}, got {val or 'end of input'!r}", pos, self.text)

    def error(self, msg):
        kind, val, pos = self.peek()
        raise ExpressionSyntaxError(msg, pos, self.text)

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, pos = self.take()
            node = BinOp(op, node, self.factor(), pos)
        return node

    def factor(self) -> Node:
        kind, val, pos = self.peek()
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            arg = self.factor()
            return Neg(arg, pos) if val == "-" else arg
        node = self.base()
        # left-associative so that dx^dy^dz chains as a wedge
        while self.peek()[:2] == ("op", "^"):
            _, _, ppos = self.take()
            node = Pow(node, self.exponent(), ppos)
        return node

    def exponent(self) -> Node:
        kind, val, pos = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return Neg(self.exponent(), pos)
        if kind == "num":
            self.take()
            return Num(int(val), pos)
        if kind == "name":
            self.take()
            return Name(val, pos)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        self.error("bad exponent")

    def base(self) -> Node:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(int(val), pos)
        if kind == "name":
            return Name(val, pos)
        if kind == "partial":
            return Partial(val, pos)
        if (kind, val) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        raise ExpressionSyntaxError(
            f"unexpected {'end of input' if kind == 'end' else repr(val)}", pos, self.text
        )


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def eval_parameter(node: Node, bindings: dict) -> Fraction:
    """Evaluate an exponent: rational arithmetic on bound parameters only."""
    if isinstance(node, Num):
        return Fraction(node.value)
    if isinstance(node, Name):
        if node.name not in bindings:
            raise UnboundParameter(node.name)
        value = bindings[node.name]
        if isinstance(value, RatExpr):
            if not value.is_constant_rational():
                raise UnboundParameter(f"{node.name} is not a rational parameter")
            return value.constant_value()
        return Fraction(value)
    if isinstance(node, Neg):
        return -eval_parameter(node.arg, bindings)
    if isinstance(node, BinOp):
        a = eval_parameter(node.left, bindings)
        b = eval_parameter(node.right, bindings)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError("division by zero in exponent")
        return a / b
    if isinstance(node, Pow):
        e = eval_parameter(node.exponent, bindings)
        if e.denominator != 1:
            raise ValueError("exponent of an exponent must be an integer")
        return eval_parameter(node.base, bindings) ** int(e)
    raise ExpressionSyntaxError("unsupported construct in exponent", getattr(node, "pos", 0))


def scalar_power(base: RatExpr, e: Fraction, chart: Chart, base_node: Node, bindings) -> RatExpr:
    if e.denominator == 1:
        return base ** int(e)
    if isinstance(base_node, Num) or base.is_constant_rational():
        c = base.constant_value()
        if c.denominator == 1 and c > 0:
            for r in chart.radicals:
                if r.base == c.numerator and r.degree % e.denominator == 0:
                    return RatExpr.radical(chart, c.numerator, e)
    if isinstance(base_node, Name) and base_node.name in chart.variables and base_node.name != chart.fractional:
        raise FractionalExponentOnNonDistinguishedVariable(base_node.name)
    return base.rational_power(e)


class ScalarEvaluator:
    def __init__(self, chart: Chart, bindings: dict | None = None):
        self.chart = chart
        self.bindings = dict(bindings or {})

    def name(self, node: Name):
        if node.name in self.bindings:
            value = self.bindings[node.name]
            if isinstance(value, RatExpr):
                return value if value.chart == self.chart else value.to_chart(self.chart)
            return RatExpr.const(self.chart, value)
        if node.name in self.chart.variables:
            return RatExpr.var(self.chart, node.name)
        raise UnboundParameter(node.name)

    def __call__(self, node: Node):
        if isinstance(node, Num):
            return RatExpr.const(self.chart, node.value)
        if isinstance(node, Name):
            return self.name(node)
        if isinstance(node, Partial):
            raise ExpressionSyntaxError("vector partial in a scalar expression", node.pos)
        if isinstance(node, Neg):
            return -self(node.arg)
        if isinstance(node, BinOp):
            a, b = self(node.left), self(node.right)
            return {"+": lambda: a + b, "-": lambda: a - b, "*": lambda: a * b, "/": lambda: a / b}[node.op]()
        if isinstance(node, Pow):
            e = eval_parameter(node.exponent, self.bindings)
            return scalar_power(self(node.base), e, self.chart, node.base, self.bindings)
        raise TypeError(node)


def parse_scalar(text: str, chart: Chart, bindings: dict | None = None) -> RatExpr:
    return ScalarEvaluator(chart, bindings)(parse_ast(text))
