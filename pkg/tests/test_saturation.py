import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgsat.geometry import PointSet, full_mask, hyperplanes, num_points
from pgsat.projgroup import gl_generators
from pgsat.saturation import (
    NotMinimalSaturatingError,
    SetType,
    classify_type,
    is_minimal_one_saturating,
    is_one_saturating,
    uncovered_points,
)

from conftest import point_sets


def ps(v, *pts):
    return PointSet.from_points(v, pts)


def saturating_by_pairs(s):
    """Oracle: every outside point is the third point of some pair."""
    pts = s.points
    thirds = {a ^ b for a, b in itertools.combinations(pts, 2)}
    return all(x in thirds for x in range(1, num_points(s.v) + 1) if x not in s)


def test_saturation_examples():
    assert is_one_saturating(ps(2, 1, 2, 4, 7))
    assert not is_one_saturating(ps(2, 1, 2, 4))
    assert is_one_saturating(PointSet.full(2))


def test_minimality_examples():
    assert is_minimal_one_saturating(ps(2, 1, 2, 4, 7))
    assert not is_minimal_one_saturating(ps(2, 1, 2, 3, 4, 7))
    assert is_one_saturating(ps(2, 1, 2, 4, 7))  # the subset left after dropping 3
    assert not is_minimal_one_saturating(ps(2, 1, 2, 4))


def test_classify_type_examples():
    assert classify_type(ps(2, 1, 2, 4, 6)) is SetType.NA
    assert classify_type(ps(2, 1, 2, 4, 7)) is SetType.CA
    assert classify_type(ps(3, 1, 2, 4, 8, 15)) is SetType.CC
    assert classify_type(ps(3, 1, 2, 3, 4, 8, 12)) is SetType.NC
    with pytest.raises(NotMinimalSaturatingError):
        classify_type(ps(2, 1, 2, 3, 4, 7))


def test_uncovered_examples():
    assert uncovered_points(ps(2, 1, 2, 4)) == ps(2, 7)
    assert uncovered_points(ps(2, 1, 2, 4, 7)) == ps(2)
    assert uncovered_points(ps(2)) == PointSet.full(2)


@given(point_sets(dims=(2, 3, 4, 5)))
def test_matches_pair_oracle(s):
    assert is_one_saturating(s) == saturating_by_pairs(s)
    assert (len(uncovered_points(s)) == 0) == is_one_saturating(s)


@given(point_sets(), st.data())
def test_monotone(s, data):
    extra = data.draw(st.sets(st.integers(1, num_points(s.v))))
    t = s | PointSet.from_points(s.v, extra)
    if is_one_saturating(s):
        assert is_one_saturating(t)


def test_minimal_sets_have_no_saturating_proper_subset(table_sets):
    for s in table_sets:
        pts = s.points
        for r in range(len(pts)):
            for sub in itertools.combinations(pts, r):
                assert not is_one_saturating(PointSet.from_points(s.v, sub))


def test_enumerated_sets_span_and_fit(classes):
    for v, records in classes.items():
        hs = hyperplanes(v)
        for rec in records:
            s = rec.as_set()
            assert is_minimal_one_saturating(s)
            assert rec.k <= 1 << v
            assert not any(s <= h for h in hs)


def _orbit(s):
    perms = [g.permutation() for g in gl_generators(s.v)]
    seen = {s.mask}
    stack = [s.mask]
    while stack:
        m = stack.pop()
        pts = [p for p in range(1, num_points(s.v) + 1) if m >> p & 1]
        for perm in perms:
            img = 0
            for p in pts:
                img |= 1 << perm[p]
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return seen


@pytest.mark.parametrize("v", [2, 3])
def test_brute_force_labeled_sets_match_enumeration(v, classes):
    n = num_points(v)
    full = full_mask(v)
    labeled = set()
    for mask in range(1 << n):
        s = PointSet(v, mask << 1)
        if is_minimal_one_saturating(s):
            labeled.add(s.mask)
    assert full not in labeled
    expanded = set()
    for rec in classes[v]:
        expanded |= _orbit(rec.as_set())
    assert expanded == labeled
