"""Binary linear codes given by parity-check columns, and their covering radius.

A point set of PG(r-1,2) read as the columns of a parity-check matrix gives a
code of codimension r; the set is 1-saturating exactly when the code has
covering radius at most 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .geometry import PointSet

INFINITE = math.inf


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class CoverCode:
    r: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1:
            raise CodeError("codimension must be positive")
        if len(set(self.columns)) != len(self.columns):
            raise CodeError("columns must be distinct")
        for c in self.columns:
            if not 0 < c < 1 << self.r:
                raise CodeError(f"column {c} is not a nonzero {self.r}-bit vector")

    @property
    def n(self) -> int:
        return len(self.columns)

    @cached_property
    def radius(self):
        return covering_radius(self)

    def without(self, column: int) -> "CoverCode":
        return CoverCode(self.r, tuple(c for c in self.columns if c != column))


def from_set(s: PointSet) -> CoverCode:
    if not len(s):
        raise CodeError("an empty set gives no code")
    return CoverCode(s.v + 1, s.points)


def covering_radius(code: CoverCode):
    """Least R with every syndrome a sum of at most R columns, or INFINITE."""
    total = 1 << code.r
    reached = bytearray(total)
    reached[0] = 1
    frontier = [0]
    count, radius = 1, 0
    while count < total:
        nxt = []
        for x in frontier:
            for c in code.columns:
                y = x ^ c
                if not reached[y]:
                    reached[y] = 1
                    nxt.append(y)
        if not nxt:
            return INFINITE
        radius += 1
        count += len(nxt)
        frontier = nxt
    return radius


def is_locally_optimal(code: CoverCode) -> bool:
    """No column can be dropped without the covering radius growing."""
    base = code.radius
    return all(covering_radius(code.without(c)) > base for c in code.columns)


def matrix_rows(code: CoverCode) -> list[str]:
    """Parity-check matrix as bit strings, most significant coordinate first."""
    return [
        "".join(str(c >> i & 1) for c in code.columns)
        for i in reversed(range(code.r))
    ]


def format_matrix(code: CoverCode) -> str:
    return "\n".join(matrix_rows(code)) + "\n"


def parse_matrix(text: str) -> CoverCode:
    rows = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if not rows:
        raise CodeError("empty matrix")
    n = len(rows[0])
    if any(len(row) != n or set(row) - {"0", "1"} for row in rows):
        raise CodeError("matrix rows must be equal-length strings of 0 and 1")
    r = len(rows)
    columns = []
    for j in range(n):
        col = 0
        for i, row in enumerate(rows):
            if row[j] == "1":
                col |= 1 << (r - 1 - i)
        columns.append(col)
    return CoverCode(r, tuple(columns))
