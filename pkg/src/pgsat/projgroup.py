"""The collineation group GL(v+1,2) acting on points and point sets.

For q = 2 there are no nontrivial scalars and no field automorphisms, so the
collineation group of PG(v,2) is GL(v+1,2) itself and stabilizer orders
computed here are the geometric ones.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable

from .geometry import (
    GeometryError,
    PointSet,
    check_dimension,
    num_points,
    reduce_basis,
    spans_space,
)


def gl_order(n: int) -> int:
    """Order of GL(n,2)."""
    return math.prod((1 << n) - (1 << i) for i in range(n))


def asl_order(v: int) -> int:
    """Order of the affine group ASL(v,2) = 2^v |GL(v,2)|."""
    return (1 << v) * gl_order(v)


@dataclass(frozen=True)
class ProjMap:
    """An invertible matrix over F2; row ``i`` is a bitmask over input coordinates."""

    v: int
    rows: tuple[int, ...]

    def __post_init__(self):
        check_dimension(self.v)
        if len(self.rows) != self.v + 1:
            raise GeometryError(f"need {self.v + 1} rows, got {len(self.rows)}")
        if len(reduce_basis(self.rows)) != self.v + 1:
            raise GeometryError("matrix is singular over F2")

    @classmethod
    def identity(cls, v: int) -> "ProjMap":
        return cls(v, tuple(1 << i for i in range(v + 1)))

    @classmethod
    def from_columns(cls, v: int, columns: Iterable[int]) -> "ProjMap":
        """The map sending unit vector ``e_j`` to ``columns[j]``."""
        columns = list(columns)
        rows = []
        for i in range(v + 1):
            row = 0
            for j, col in enumerate(columns):
                if col >> i & 1:
                    row |= 1 << j
            rows.append(row)
        return cls(v, tuple(rows))

    @classmethod
    def random(cls, v: int, rng: random.Random) -> "ProjMap":
        n = num_points(v)
        while True:
            rows = tuple(rng.randint(1, n) for _ in range(v + 1))
            if len(reduce_basis(rows)) == v + 1:
                return cls(v, rows)

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(self(1 << j) for j in range(self.v + 1))

    def __call__(self, x: int) -> int:
        y = 0
        for i, row in enumerate(self.rows):
            if (row & x).bit_count() & 1:
                y |= 1 << i
        return y

    def compose(self, other: "ProjMap") -> "ProjMap":
        """``self ∘ other``: apply ``other`` first."""
        if self.v != other.v:
            raise GeometryError("dimension mismatch")
        return ProjMap.from_columns(self.v, (self(c) for c in other.columns))

    def inverse(self) -> "ProjMap":
        cols = self.columns
        # Solve A x = e_i by tracking combinations of columns.
        pivots: dict[int, tuple[int, int]] = {}
        for j, col in enumerate(cols):
            x, combo = col, 1 << j
            while x:
                top = x.bit_length() - 1
                if top not in pivots:
                    pivots[top] = (x, combo)
                    break
                px, pc = pivots[top]
                x ^= px
                combo ^= pc
        inv_cols = []
        for i in range(self.v + 1):
            x, combo = 1 << i, 0
            while x:
                px, pc = pivots[x.bit_length() - 1]
                x ^= px
                combo ^= pc
            inv_cols.append(combo)
        return ProjMap.from_columns(self.v, inv_cols)

    def permutation(self) -> list[int]:
        """Point table: ``perm[p]`` is the image of point ``p`` (index 0 unused)."""
        return [self(x) for x in range(num_points(self.v) + 1)]


def apply_map(a: ProjMap, s: PointSet) -> PointSet:
    if a.v != s.v:
        raise GeometryError("dimension mismatch")
    mask = 0
    for p in s.points:
        mask |= 1 << a(p)
    return PointSet(s.v, mask)


def gl_generators(v: int) -> list[ProjMap]:
    """Two generators of GL(v+1,2): a transvection and the cyclic coordinate shift."""
    n = v + 1
    transvection = ProjMap.from_columns(v, [1, 0b11] + [1 << j for j in range(2, n)])
    shift = ProjMap.from_columns(v, [1 << ((j + 1) % n) for j in range(n)])
    return [transvection, shift]


# ---------------------------------------------------------------------------
# Point invariants shared by the stabilizer search and the enumerator.

def point_invariants(points: list[int], v: int) -> dict[int, tuple]:
    """Per-point invariant under the set stabilizer.

    For each member p: the number of collinear triples of the set through p,
    then the sorted multiplicities with which the third points on the lines
    from p to the other members are hit by pairs of the set.
    """
    mult = [0] * (num_points(v) + 1)
    k = len(points)
    for i in range(k):
        a = points[i]
        for j in range(i + 1, k):
            mult[a ^ points[j]] += 1
    return {
        p: (mult[p], tuple(sorted(mult[p ^ q] for q in points if q != p)))
        for p in points
    }


# ---------------------------------------------------------------------------
# Canonical form: lexicographically least sorted image.

_PAD = (1 << 30,)


def _orbit_closure(seeds: Iterable[int], gens: list[dict[int, int]]) -> set[int]:
    seen = set(seeds)
    stack = list(seen)
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


class _CanonicalSearch:
    """Depth-first search over ordered bases drawn from the set.

    Choosing basis vectors b_0, b_1, ... relabels b_j as 2^j; the image of
    every member lying in span(b_0..b_j) is then fixed and all other images are
    at least 2^(j+1), so candidates can be ranked level by level.  Tied subtrees
    related by an already discovered automorphism are skipped.
    """

    def __init__(self, points: list[int]):
        self.points = sorted(points)
        self.best_keys: list[tuple] | None = None
        self.best_basis: list[int] = []
        self.best_coords: dict[int, int] = {0: 0}
        self.generators: list[dict[int, int]] = []
        self.leaves = 0

    def run(self) -> "_CanonicalSearch":
        if self.points:
            self._node([], {0: 0}, self.points, [])
        else:
            self.best_keys = []
        return self

    def _node(self, basis, coords, rest, keys):
        if not rest:
            return self._leaf(basis, coords, keys)
        j = len(basis)
        hi = 1 << j
        level_key = None
        children = []
        for c in rest:
            key = tuple(sorted(hi | coords[s ^ c] for s in rest if s ^ c in coords)) + _PAD
            if level_key is None or key < level_key:
                level_key, children = key, [c]
            elif key == level_key:
                children.append(c)
        keys = keys + [level_key]
        done: list[int] = []
        covered: set[int] = set()
        n_gens = -1
        for c in children:
            if self.best_keys is not None and keys > self.best_keys[: j + 1]:
                return None
            if len(self.generators) != n_gens:
                n_gens = len(self.generators)
                fixing = [g for g in self.generators if all(g[b] == b for b in basis)]
                covered = _orbit_closure(done, fixing)
            if c in covered:
                continue
            done.append(c)
            covered |= _orbit_closure([c], fixing)
            child_coords = dict(coords)
            for x, label in coords.items():
                child_coords[x ^ c] = hi | label
            child_rest = [s for s in rest if s not in child_coords]
            ret = self._node(basis + [c], child_coords, child_rest, keys)
            if ret is not None and ret < j:
                return ret
        return None

    def _leaf(self, basis, coords, keys):
        self.leaves += 1
        if self.best_keys is None or keys < self.best_keys:
            self.best_keys = keys
            self.best_basis = basis
            self.best_coords = coords
            return None
        # keys == best_keys: the two bases differ by an automorphism.
        label_to_vec = {label: x for x, label in coords.items()}
        g = {x: label_to_vec[self.best_coords[x]] for x in self.points}
        self.generators.append(g)
        for d, (a, b) in enumerate(zip(self.best_basis, basis)):
            if a != b:
                return d
        return None

    @property
    def labels(self) -> dict[int, int]:
        return {x: self.best_coords[x] for x in self.points}

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(self.best_coords[x] for x in self.points))


def canonical_search(points: list[int]) -> _CanonicalSearch:
    return _CanonicalSearch(points).run()


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically least image of a set, with one map realising it."""

    v: int
    mask: int
    witness: ProjMap = field(compare=False)

    @property
    def points(self) -> tuple[int, ...]:
        return PointSet(self.v, self.mask).points

    def as_set(self) -> PointSet:
        return PointSet(self.v, self.mask)


def _complete_basis(v: int, basis: list[int]) -> list[int]:
    full = reduce_basis(basis + [1 << i for i in range(v + 1)])
    return full


def canonical_form(s: PointSet) -> CanonicalForm:
    """Least image of ``s`` under GL(v+1,2), comparing sorted point lists.

    Sets that do not span are canonised inside their span; the unused unit
    vectors fill the rest of the frame.
    """
    search = canonical_search(list(s.points))
    frame = _complete_basis(s.v, search.best_basis)
    witness = ProjMap.from_columns(s.v, frame).inverse()
    mask = 0
    for label in search.image:
        mask |= 1 << label
    return CanonicalForm(s.v, mask, witness)


def are_equivalent(s: PointSet, t: PointSet) -> bool:
    if s.v != t.v:
        raise GeometryError("dimension mismatch")
    if len(s) != len(t):
        return False
    return canonical_form(s) == canonical_form(t)


def brute_force_canonical(s: PointSet) -> PointSet:
    """Minimum over every group element; feasible for v = 2 (168 maps)."""
    best = None
    for a in all_maps(s.v):
        img = tuple(sorted(a(p) for p in s.points))
        if best is None or img < best:
            best = img
    return PointSet.from_points(s.v, best)


def all_maps(v: int):
    """Every element of GL(v+1,2); only sensible for v <= 2."""
    n = num_points(v)
    cols: list[int] = []

    def extend():
        if len(cols) == v + 1:
            yield ProjMap.from_columns(v, cols)
            return
        for c in range(1, n + 1):
            if len(reduce_basis(cols + [c])) == len(cols) + 1:
                cols.append(c)
                yield from extend()
                cols.pop()

    yield from extend()


# ---------------------------------------------------------------------------
# Stabilizer order: product of basic orbit lengths along a basis inside S.

class _StabilizerSearch:
    def __init__(self, points: list[int], v: int):
        self.points = sorted(points)
        self.members = set(points)
        self.v = v
        inv = point_invariants(self.points, v)
        self.inv = inv
        # Base: points with the rarest invariants first, kept independent.
        freq: dict[tuple, int] = {}
        for p in self.points:
            freq[inv[p]] = freq.get(inv[p], 0) + 1
        ordered = sorted(self.points, key=lambda p: (freq[inv[p]], p))
        self.base = reduce_basis(ordered)
        self.by_inv: dict[tuple, list[int]] = {}
        for p in self.points:
            self.by_inv.setdefault(inv[p], []).append(p)
        self.generators: list[dict[int, int]] = []

    def _extend(self, level, src_span, dst_span, images):
        """Find one full extension; ``src_span`` maps vectors to their images."""
        if level == len(self.base):
            return list(images)
        b = self.base[level]
        for c in self.by_inv[self.inv[b]]:
            if c in dst_span:
                continue
            new_src = {}
            ok = True
            for x, y in src_span.items():
                xs, ys = x ^ b, y ^ c
                if (xs in self.members) != (ys in self.members):
                    ok = False
                    break
                new_src[xs] = ys
            if not ok:
                continue
            merged = dict(src_span)
            merged.update(new_src)
            found = self._extend(level + 1, merged, set(merged.values()), images + [(b, c)])
            if found is not None:
                return found
        return None

    def order(self) -> int:
        total = 1
        # Deepest level first so that generators fixing more points are
        # available when shallower orbits are built.
        for level in reversed(range(len(self.base))):
            prefix = self.base[:level]
            span = {0: 0}
            for b in prefix:
                span.update({x ^ b: y ^ b for x, y in span.items()})
            fixing = [g for g in self.generators if all(g[b] == b for b in prefix)]
            target = self.base[level]
            orbit = _orbit_closure([target], fixing)
            for c in self.by_inv[self.inv[target]]:
                if c in orbit or c in span:
                    continue
                found = self._try_image(level, span, c)
                if found is not None:
                    g = self._as_permutation(found)
                    self.generators.append(g)
                    fixing.append(g)
                    orbit = _orbit_closure(orbit | {c}, fixing)
            total *= len(orbit)
        return total

    def _try_image(self, level, span, c):
        b = self.base[level]
        new_src = {}
        for x, y in span.items():
            if ((x ^ b) in self.members) != ((y ^ c) in self.members):
                return None
            new_src[x ^ b] = y ^ c
        merged = dict(span)
        merged.update(new_src)
        fixed = [(p, p) for p in self.base[:level]]
        return self._extend(level + 1, merged, set(merged.values()), fixed + [(b, c)])

    def _as_permutation(self, images: list[tuple[int, int]]) -> dict[int, int]:
        src = [b for b, _ in images]
        dst = [c for _, c in images]
        m = ProjMap.from_columns(self.v, dst).compose(ProjMap.from_columns(self.v, src).inverse())
        return {p: m(p) for p in self.points}


def stabilizer_order(s: PointSet) -> int:
    """Number of elements of GL(v+1,2) mapping ``s`` onto itself."""
    if not spans_space(s):
        raise GeometryError("stabilizer order is only defined here for spanning sets")
    return _StabilizerSearch(list(s.points), s.v).order()


def stabilizer_generators(s: PointSet) -> list[ProjMap]:
    if not spans_space(s):
        raise GeometryError("stabilizer generators are only defined here for spanning sets")
    search = _StabilizerSearch(list(s.points), s.v)
    search.order()
    base = search.base
    return [ProjMap.from_columns(s.v, [g[b] for b in base]).compose(
        ProjMap.from_columns(s.v, base).inverse()) for g in search.generators]


def orbit_size(s: PointSet) -> int:
    return gl_order(s.v + 1) // stabilizer_order(s)


def orbit_size_bfs(s: PointSet) -> int:
    """Count images of ``s`` by closing under the GL generators (v <= 5)."""
    import numpy as np

    if s.v > 5:
        raise GeometryError("orbit BFS packs sets into 64-bit words; v <= 5 only")
    perms = [g.permutation() for g in gl_generators(s.v)]
    n = num_points(s.v)
    seen = np.array([s.mask], dtype=np.uint64)
    frontier = seen
    one = np.uint64(1)
    while frontier.size:
        images = []
        for perm in perms:
            img = np.zeros_like(frontier)
            for p in range(1, n + 1):
                bit = (frontier >> np.uint64(p)) & one
                img |= bit << np.uint64(perm[p])
            images.append(img)
        cand = np.unique(np.concatenate(images))
        frontier = np.setdiff1d(cand, seen, assume_unique=True)
        seen = np.union1d(seen, frontier)
    return int(seen.size)
