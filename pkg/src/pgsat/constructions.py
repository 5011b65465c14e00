"""Constructions of minimal 1-saturating sets described in prose.

Every builder re-checks the properties it promises with the saturation
predicates; a failed check raises instead of returning a wrong set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import GeometryError, PointSet, dot2, hyperplane, is_cap, num_points
from .saturation import is_minimal_one_saturating, is_one_saturating


class ConstructionError(ValueError):
    pass


MINIMAL = "minimal-1-saturating"
COMPLETE_CAP = "complete-cap"
NOT_CAP = "not-cap"


@dataclass(frozen=True)
class ConstructionResult:
    output: PointSet
    input_description: str
    claimed_properties: tuple[str, ...]


def is_complete_cap(s: PointSet) -> bool:
    return is_cap(s) and is_one_saturating(s)


def _check(s: PointSet, props) -> None:
    for prop in props:
        if prop == MINIMAL:
            ok = is_minimal_one_saturating(s)
        elif prop == COMPLETE_CAP:
            ok = is_complete_cap(s)
        elif prop == NOT_CAP:
            ok = not is_cap(s)
        else:
            raise ValueError(f"unknown property {prop!r}")
        if not ok:
            raise ConstructionError(f"output {s} fails property {prop}")


def gl_construction(s: PointSet, pivot: int) -> PointSet:
    """Keep ``pivot`` and swap every other point for the third point on its line to ``pivot``."""
    if pivot not in s:
        raise ConstructionError(f"pivot {pivot} is not in the set")
    if not is_complete_cap(s):
        raise ConstructionError("input must be a complete cap")
    out = PointSet.from_points(s.v, [pivot] + [pivot ^ p for p in s.points if p != pivot])
    _check(out, [MINIMAL])
    return out


def doubling(s: PointSet) -> PointSet:
    """Both extensions (x, 0) and (x, 1) of each point, one dimension up."""
    v = s.v + 1
    try:
        high = 1 << (s.v + 1)
        out = PointSet.from_points(v, [p for x in s.points for p in (x, x | high)])
    except GeometryError as exc:
        raise ConstructionError(f"cannot double into PG({v},2): {exc}") from None
    if is_complete_cap(s):
        _check(out, [COMPLETE_CAP])
    return out


def hyperplane_complement(v: int, f: int) -> PointSet:
    out = hyperplane(v, f).complement()
    _check(out, [COMPLETE_CAP, MINIMAL])
    return out


def hyperplane_plus_point(v: int, f: int, p: int) -> PointSet:
    if not 1 <= p <= num_points(v) or not dot2(f, p):
        raise ConstructionError(f"point {p} is not outside the hyperplane of {f}")
    out = hyperplane(v, f).add(p)
    _check(out, [MINIMAL, NOT_CAP])
    return out


def construct(kind: str, **kw) -> ConstructionResult:
    """Run a named construction and report what was verified on its output."""
    if kind == "gl":
        s, pivot = kw["s"], kw["pivot"]
        return ConstructionResult(gl_construction(s, pivot), f"GL of {s} at pivot {pivot}", (MINIMAL,))
    if kind == "double":
        s = kw["s"]
        props = (COMPLETE_CAP,) if is_complete_cap(s) else ()
        return ConstructionResult(doubling(s), f"doubling of {s} in PG({s.v},2)", props)
    if kind == "hyperplane-complement":
        v, f = kw["v"], kw["f"]
        return ConstructionResult(
            hyperplane_complement(v, f), f"complement of hyperplane {f} in PG({v},2)", (COMPLETE_CAP, MINIMAL)
        )
    if kind == "hyperplane-plus-point":
        v, f, p = kw["v"], kw["f"], kw["p"]
        return ConstructionResult(
            hyperplane_plus_point(v, f, p), f"hyperplane {f} plus point {p} in PG({v},2)", (MINIMAL, NOT_CAP)
        )
    raise ValueError(f"unknown construction {kind!r}")
