"""Loader for the fixture files holding the transcribed formulas.

Format: ``#`` comments; ``param k = <rational>`` header; ``chart v1 v2 ... [; fractional q]
[; radical 6^(1/3)]`` switches the current chart; entries ``let|form|tensor|vector name = expr``
continue on indented lines.  Entries are evaluated lazily and may refer to earlier
entries on the same chart.
"""

from __future__ import annotations

import os
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from ..geomcalc import parse_form, parse_tensor, parse_vector
from ..geomcalc.literal import LiteralEvaluator
from ..symcore import Chart, Radical, SymcoreError, parse_ast
from .errors import FixtureError, UnknownObject

_ENTRY = re.compile(r"^(let|form|tensor|vector)\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_RADICAL = re.compile(r"^radical\s+(\d+)\^\(1/(\d+)\)$")


def fixture_dir() -> Path:
    env = os.environ.get("G2TWISTOR_FIXTURES")
    return Path(env) if env else Path(__file__).with_name("fixtures")


@dataclass
class Entry:
    kind: str
    name: str
    text: str
    chart: Chart
    line: int


def _parse_chart(spec: str, path, lineno) -> Chart:
    parts = [p.strip() for p in spec.split(";")]
    names = tuple(parts[0].split())
    fractional = None
    radicals = []
    for extra in parts[1:]:
        if extra.startswith("fractional"):
            fractional = extra.split()[1]
        elif m := _RADICAL.match(extra):
            radicals.append(Radical(int(m.group(1)), int(m.group(2))))
        else:
            raise FixtureError(f"{path}:{lineno}: bad chart option {extra!r}")
    return Chart(names, fractional, tuple(radicals))


@dataclass
class FixtureFile:
    path: Path
    entries: dict
    params: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def read(cls, path: Path) -> "FixtureFile":
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise FixtureError(f"cannot read fixture {path}: {exc}") from exc
        entries: dict = {}
        params: dict = {}
        chart = None
        current = None
        for lineno, raw in enumerate(lines, 1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            if raw[0].isspace():
                if current is None:
                    raise FixtureError(f"{path}:{lineno}: continuation without an entry")
                current.text += " " + line.strip()
                continue
            current = None
            if line.startswith("param "):
                name, _, value = line[6:].partition("=")
                try:
                    params[name.strip()] = Fraction(value.strip())
                except ValueError as exc:
                    raise FixtureError(f"{path}:{lineno}: bad parameter value") from exc
                continue
            if line.startswith("chart "):
                chart = _parse_chart(line[6:], path, lineno)
                continue
            m = _ENTRY.match(line)
            if not m:
                raise FixtureError(f"{path}:{lineno}: cannot read {line!r}")
            if chart is None:
                raise FixtureError(f"{path}:{lineno}: entry before any chart line")
            kind, name, text = m.groups()
            if name in entries:
                raise FixtureError(f"{path}:{lineno}: duplicate entry {name}")
            current = Entry(kind, name, text, chart, lineno)
            entries[name] = current
        return cls(path, entries, params)

    def names(self, kind: str | None = None):
        return [n for n, e in self.entries.items() if kind is None or e.kind == kind]

    def chart_of(self, name: str) -> Chart:
        return self.entry(name).chart

    def entry(self, name: str) -> Entry:
        try:
            return self.entries[name]
        except KeyError:
            raise UnknownObject(f"{name} is not defined in {self.path.name}") from None

    def get(self, name: str, bindings: dict | None = None):
        bindings = dict(bindings or {})
        for p, v in self.params.items():
            if p in bindings and bindings[p] != v:
                raise FixtureError(f"{self.path.name} is fixed at {p} = {v}")
            bindings[p] = v
        return _Scope(self, bindings, self.entry(name).chart)[name]


class _Scope(Mapping):
    """Bindings of one chart: caller parameters plus lazily evaluated entries."""

    def __init__(self, fx: FixtureFile, bindings: dict, chart: Chart):
        self.fx = fx
        self.bindings = bindings
        self.chart = chart
        self.key = (chart, tuple(sorted((k, str(v)) for k, v in bindings.items() if not hasattr(v, "chart") or v.chart == chart)))

    def _visible(self, name):
        e = self.fx.entries.get(name)
        return e is not None and e.chart == self.chart

    def __contains__(self, name):
        return name in self.bindings or self._visible(name)

    def __getitem__(self, name):
        if name in self.bindings:
            return self.bindings[name]
        if not self._visible(name):
            raise KeyError(name)
        ck = (self.key, name)
        if ck not in self.fx._cache:
            e = self.fx.entries[name]
            try:
                if e.kind == "form":
                    val = parse_form(e.text, self.chart, self)
                elif e.kind == "tensor":
                    val = parse_tensor(e.text, self.chart, self)
                elif e.kind == "vector":
                    val = parse_vector(e.text, self.chart, self)
                else:
                    val = LiteralEvaluator(self.chart, self, "form")(parse_ast(e.text))
            except SymcoreError as exc:
                raise FixtureError(f"{self.fx.path.name}:{e.line}: {e.name}: {exc}") from exc
            self.fx._cache[ck] = val
        return self.fx._cache[ck]

    def __iter__(self):
        yield from self.bindings
        yield from (n for n in self.fx.entries if self._visible(n))

    def __len__(self):
        return sum(1 for _ in self)


@lru_cache(maxsize=None)
def _load(path: str) -> FixtureFile:
    return FixtureFile.read(Path(path))


def load(name: str) -> FixtureFile:
    path = fixture_dir() / f"{name}.txt"
    if not path.exists():
        raise FixtureError(f"missing fixture file {path}")
    return _load(str(path))
