"""1-saturation, minimality and the CA/CC/NA/NC type tags."""

from __future__ import annotations

import enum

from .geometry import PointSet, full_mask, is_cap_points


class NotMinimalSaturatingError(ValueError):
    pass


class SetType(str, enum.Enum):
    CA = "CA"
    CC = "CC"
    NA = "NA"
    NC = "NC"

    @property
    def is_cap(self) -> bool:
        return self in (SetType.CA, SetType.CC)


TYPE_ORDER = {SetType.CA: 0, SetType.CC: 1, SetType.NA: 2, SetType.NC: 3}


def covered_mask(points: list[int]) -> int:
    """Members plus third points of all bisecants."""
    mask = 0
    for i, a in enumerate(points):
        mask |= 1 << a
        for b in points[i + 1:]:
            mask |= 1 << (a ^ b)
    return mask


def saturates(points: list[int], v: int) -> bool:
    return covered_mask(points) == full_mask(v)


def minimal_saturates(points: list[int], v: int) -> bool:
    full = full_mask(v)
    if covered_mask(points) != full:
        return False
    for i in range(len(points)):
        if covered_mask(points[:i] + points[i + 1:]) == full:
            return False
    return True


def is_one_saturating(s: PointSet) -> bool:
    """Every point outside ``s`` lies on a line meeting ``s`` in two points."""
    return saturates(s.points, s.v)


def is_minimal_one_saturating(s: PointSet) -> bool:
    # Removing one point at a time suffices: saturation is monotone.
    return minimal_saturates(list(s.points), s.v)


def uncovered_points(s: PointSet) -> PointSet:
    return PointSet(s.v, full_mask(s.v) & ~covered_mask(list(s.points)))


def type_for(v: int, cap: bool) -> SetType:
    if v == 2:
        return SetType.CA if cap else SetType.NA
    return SetType.CC if cap else SetType.NC


def classify_type(s: PointSet) -> SetType:
    if not is_minimal_one_saturating(s):
        raise NotMinimalSaturatingError(f"{s} is not a minimal 1-saturating set in PG({s.v},2)")
    return type_for(s.v, is_cap_points(list(s.points)))
