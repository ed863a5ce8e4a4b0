"""Doubly ultimately periodic omega^2-words and the sets S and P.

``x(m, n)`` is the n-th letter of the m-th column.  A :class:`GridSpec`
stores a finite table; ``m`` is folded by ``(row_stem, row_period)`` to a
table row and ``n`` by ``(col_stem, col_period)`` to a table column, so each
table row spells one column class of the omega^2-word.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .buchi import accepts_lasso, automaton_A
from .words import BINARY, LassoWord, lcm


class GridError(ValueError):
    pass


def fold(k: int, stem: int, period: int) -> int:
    """0-based table index of the 1-based coordinate ``k``."""
    if k <= stem:
        return k - 1
    return stem + (k - 1 - stem) % period


@dataclass(frozen=True)
class GridSpec:
    row_stem: int
    row_period: int
    col_stem: int
    col_period: int
    table: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        if self.row_stem < 0 or self.col_stem < 0:
            raise GridError("stems must be non-negative")
        if self.row_period < 1 or self.col_period < 1:
            raise GridError("periods must be positive")
        rows, cols = self.row_stem + self.row_period, self.col_stem + self.col_period
        if len(table) != rows or any(len(r) != cols for r in table):
            raise GridError(f"table must be {rows} x {cols}")
        for r in table:
            for a in r:
                if a not in BINARY:
                    raise GridError(f"grid letter {a!r} is not in {BINARY}")

    @property
    def row_classes(self) -> int:
        return self.row_stem + self.row_period

    @classmethod
    def constant(cls, letter: str) -> "GridSpec":
        return cls(0, 1, 0, 1, ((letter,),))

    @classmethod
    def from_rows(cls, rows: list[str], row_stem: int = 0, col_stem: int = 0) -> "GridSpec":
        """Build from strings, one per table row; periods are inferred."""
        return cls(row_stem, len(rows) - row_stem, col_stem, len(rows[0]) - col_stem,
                   tuple(tuple(r) for r in rows))

    def to_json(self) -> dict[str, Any]:
        return {
            "row_stem": self.row_stem,
            "row_period": self.row_period,
            "col_stem": self.col_stem,
            "col_period": self.col_period,
            "table": [list(r) for r in self.table],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "GridSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(int(data["row_stem"]), int(data["row_period"]), int(data["col_stem"]),
                       int(data["col_period"]), tuple(tuple(str(a) for a in r) for r in data["table"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GridError):
                raise
            raise GridError(f"malformed grid JSON: {exc}") from exc


def entry(g: GridSpec, m: int, n: int) -> str:
    if m < 1 or n < 1:
        raise IndexError("grid coordinates are 1-based")
    return g.table[fold(m, g.row_stem, g.row_period)][fold(n, g.col_stem, g.col_period)]


def column(g: GridSpec, m: int) -> LassoWord:
    """The omega-word ``x(m,1) x(m,2) ...``."""
    row = "".join(g.table[fold(m, g.row_stem, g.row_period)])
    return LassoWord(row[: g.col_stem], row[g.col_stem:])


def in_S(g: GridSpec) -> bool:
    """Some column has infinitely many 1s."""
    aut = automaton_A()
    return any(accepts_lasso(aut, column(g, m)) for m in range(1, g.row_classes + 1))


def in_P(g: GridSpec) -> bool:
    """Every column has finitely many 1s."""
    return not in_S(g)


def _bound(*grids: GridSpec) -> int:
    rows = max(g.row_stem for g in grids) + lcm(g.row_period for g in grids)
    cols = max(g.col_stem for g in grids) + lcm(g.col_period for g in grids)
    return rows + cols


def first_disagreement_level(a: GridSpec, b: GridSpec) -> int | None:
    """Least ``i + j`` with ``x_a(i, j) != x_b(i, j)``, or ``None`` if equal."""
    for level in range(2, _bound(a, b) + 1):
        for i in range(1, level):
            if entry(a, i, level - i) != entry(b, i, level - i):
                return level
    return None


def distance(a: GridSpec, b: GridSpec) -> Fraction:
    level = first_disagreement_level(a, b)
    return Fraction(0) if level is None else Fraction(1, 2 ** level)


def unroll_rows(g: GridSpec, k: int) -> GridSpec:
    """Same omega^2-word with the row period multiplied by ``k``."""
    extra = g.table[g.row_stem:] * (k - 1)
    return GridSpec(g.row_stem, g.row_period * k, g.col_stem, g.col_period, g.table + extra)


def unroll_cols(g: GridSpec, k: int) -> GridSpec:
    table = tuple(r + r[g.col_stem:] * (k - 1) for r in g.table)
    return GridSpec(g.row_stem, g.row_period, g.col_stem, g.col_period * k, table)
