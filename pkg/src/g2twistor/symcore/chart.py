"""Coordinate charts and adjoined radicals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import flint

from .errors import UnknownVariable


@lru_cache(maxsize=None)
def _context(names: tuple[str, ...]):
    return flint.fmpq_mpoly_ctx.get(names, "lex")


@dataclass(frozen=True)
class Radical:
    """A formal real root ``base^(1/degree)`` with the rule r^degree = base."""

    base: int
    degree: int

    def __post_init__(self):
        if self.base <= 0 or self.degree < 2:
            raise ValueError("radical needs a positive base and degree >= 2")

    @property
    def symbol(self) -> str:
        return f"_r{self.base}_{self.degree}"

    def power_text(self, m: int) -> str:
        e = Fraction(m, self.degree)
        if e.denominator == 1:
            return f"{self.base}^{e.numerator}"
        return f"{self.base}^({e.numerator}/{e.denominator})"

    def power_latex(self, m: int) -> str:
        e = Fraction(m, self.degree)
        return f"{self.base}^{{{e.numerator}/{e.denominator}}}"


@dataclass(frozen=True)
class Chart:
    """Ordered coordinate names, at most one of which may carry rational exponents."""

    variables: tuple[str, ...]
    fractional: str | None = None
    radicals: tuple[Radical, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "radicals", tuple(self.radicals))
        names = list(self.variables) + [r.symbol for r in self.radicals]
        if len(set(names)) != len(names):
            raise ValueError(f"chart names must be distinct: {names}")
        if self.fractional is not None and self.fractional not in self.variables:
            raise ValueError(f"fractional variable {self.fractional!r} not in chart")
        for v in self.variables:
            if not v.isidentifier():
                raise ValueError(f"bad variable name {v!r}")

    @property
    def ctx(self):
        return _context(self.generator_names)

    @property
    def generator_names(self) -> tuple[str, ...]:
        return self.variables + tuple(r.symbol for r in self.radicals)

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables) + len(self.radicals)

    @property
    def frac_index(self) -> int | None:
        return None if self.fractional is None else self.variables.index(self.fractional)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def radical_index(self, base: int, degree: int) -> int | None:
        for j, r in enumerate(self.radicals):
            if r.base == base and r.degree == degree:
                return len(self.variables) + j
        return None

    def with_radicals(self, *radicals: Radical) -> "Chart":
        return Chart(self.variables, self.fractional, self.radicals + tuple(radicals))

    def __str__(self):
        extra = f"; fractional {self.fractional}" if self.fractional else ""
        return f"({', '.join(self.variables)}{extra})"
