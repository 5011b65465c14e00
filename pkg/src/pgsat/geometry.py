"""Points, point sets and F2 linear algebra for PG(v,2).

A point is a nonzero integer whose binary digits are the coordinates of its
unique representative vector; bit 0 is the last printed coordinate.  A point
set is stored as an integer bitmask with bit ``p`` set when point ``p`` is a
member, so 128 bits cover PG(6,2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MIN_DIM = 2
MAX_DIM = 6


class GeometryError(ValueError):
    pass


def check_dimension(v: int) -> int:
    if not isinstance(v, int) or not MIN_DIM <= v <= MAX_DIM:
        raise GeometryError(f"projective dimension must be in [{MIN_DIM}, {MAX_DIM}], got {v!r}")
    return v


def num_points(v: int) -> int:
    return (1 << (v + 1)) - 1


def full_mask(v: int) -> int:
    """Bitmask holding every point of PG(v,2)."""
    return ((1 << (num_points(v) + 1)) - 1) ^ 1


def mask_points(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def dot2(f: int, x: int) -> int:
    return (f & x).bit_count() & 1


@dataclass(frozen=True)
class PointSet:
    """An immutable set of points of PG(v,2)."""

    v: int
    mask: int = 0

    def __post_init__(self):
        check_dimension(self.v)
        if self.mask & 1 or self.mask >> (num_points(self.v) + 1):
            raise GeometryError(f"mask holds values outside PG({self.v},2)")

    @classmethod
    def from_points(cls, v: int, points: Iterable[int]) -> "PointSet":
        check_dimension(v)
        n = num_points(v)
        mask = 0
        for p in points:
            if not 1 <= p <= n:
                raise GeometryError(f"{p} is not a point of PG({v},2)")
            mask |= 1 << p
        return cls(v, mask)

    @classmethod
    def full(cls, v: int) -> "PointSet":
        return cls(check_dimension(v), full_mask(v))

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(mask_points(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(mask_points(self.mask))

    def __contains__(self, p: object) -> bool:
        return isinstance(p, int) and p > 0 and bool(self.mask >> p & 1)

    def __le__(self, other: "PointSet") -> bool:
        return self.mask & ~other.mask == 0

    def _same_dim(self, other: "PointSet") -> None:
        if self.v != other.v:
            raise GeometryError(f"dimension mismatch: {self.v} vs {other.v}")

    def __or__(self, other: "PointSet") -> "PointSet":
        self._same_dim(other)
        return PointSet(self.v, self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._same_dim(other)
        return PointSet(self.v, self.mask & other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._same_dim(other)
        return PointSet(self.v, self.mask & ~other.mask)

    def add(self, p: int) -> "PointSet":
        return PointSet.from_points(self.v, (*self.points, p))

    def remove(self, p: int) -> "PointSet":
        if p not in self:
            raise GeometryError(f"{p} is not in the set")
        return PointSet(self.v, self.mask ^ (1 << p))

    def complement(self) -> "PointSet":
        return PointSet(self.v, full_mask(self.v) & ~self.mask)

    def __str__(self) -> str:
        return format_set(self)


def third_point(a: int, b: int) -> int:
    """Third point of the line through distinct points ``a`` and ``b``."""
    if a == b:
        raise GeometryError(f"no line through a single point {a}")
    if a <= 0 or b <= 0:
        raise GeometryError("points must be positive integers")
    return a ^ b


def span_mask(points: Iterable[int]) -> int:
    """Bitmask of all nonzero F2 combinations of ``points``."""
    span = [0]
    seen = {0}
    for p in points:
        if p in seen:
            continue
        extra = [x ^ p for x in span]
        span.extend(extra)
        seen.update(extra)
    mask = 0
    for x in span:
        mask |= 1 << x
    return mask & ~1


def span_closure(s: PointSet) -> PointSet:
    return PointSet(s.v, span_mask(s.points))


def reduce_basis(points: Iterable[int]) -> list[int]:
    """Greedy independent subset of ``points``, kept in input order."""
    pivots: dict[int, int] = {}
    basis = []
    for p in points:
        x = p
        while x:
            top = x.bit_length() - 1
            if top not in pivots:
                pivots[top] = x
                basis.append(p)
                break
            x ^= pivots[top]
    return basis


def rank(points: Iterable[int]) -> int:
    return len(reduce_basis(points))


def spans_space(s: PointSet) -> bool:
    return rank(s.points) == s.v + 1


def is_cap_points(points: list[int]) -> bool:
    members = set(points)
    for i, a in enumerate(points):
        for b in points[i + 1:]:
            if a ^ b in members:
                return False
    return True


def is_cap(s: PointSet) -> bool:
    """True when no three members of ``s`` are collinear."""
    return is_cap_points(s.points)


def hyperplane(v: int, f: int) -> PointSet:
    """Kernel of the functional ``f``: points x with an even number of shared bits."""
    check_dimension(v)
    if not 1 <= f <= num_points(v):
        raise GeometryError(f"functional {f} is not a nonzero vector of length {v + 1}")
    mask = 0
    for x in range(1, num_points(v) + 1):
        if not dot2(f, x):
            mask |= 1 << x
    return PointSet(v, mask)


def hyperplanes(v: int) -> list[PointSet]:
    return [hyperplane(v, f) for f in range(1, num_points(v) + 1)]


def lines(v: int) -> Iterator[tuple[int, int, int]]:
    """Every line of PG(v,2) as a sorted triple.  Only used for counting checks."""
    n = num_points(v)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            c = a ^ b
            if c > b:
                yield a, b, c


# Set literal text format: optional ``v=<n>`` header, then one set per line.

def format_set(s: PointSet) -> str:
    return " ".join(str(p) for p in s.points)


def format_sets(sets: Iterable[PointSet], v: int | None = None) -> str:
    sets = list(sets)
    if v is None and sets:
        v = sets[0].v
    lines_out = [] if v is None else [f"v={v}"]
    lines_out.extend(format_set(s) for s in sets)
    return "\n".join(lines_out) + "\n"


def parse_sets(text: str, v: int | None = None) -> tuple[int, list[PointSet]]:
    """Parse set literals; a ``v=<n>`` header overrides nothing and must agree with ``v``."""
    sets_raw = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("v="):
            header = int(line[2:])
            if v is not None and v != header:
                raise GeometryError(f"header says v={header} but v={v} was requested")
            v = header
            continue
        sets_raw.append([int(tok) for tok in line.split()])
    if v is None:
        raise GeometryError("dimension missing: give a v=<n> header or pass v explicitly")
    return v, [PointSet.from_points(v, pts) for pts in sets_raw]
