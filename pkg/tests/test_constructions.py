import pytest

from pgsat.constructions import (
    COMPLETE_CAP,
    MINIMAL,
    ConstructionError,
    construct,
    doubling,
    gl_construction,
    hyperplane_complement,
    hyperplane_plus_point,
    is_complete_cap,
)
from pgsat.geometry import PointSet, dot2, num_points
from pgsat.projgroup import are_equivalent, asl_order, gl_order, stabilizer_order
from pgsat.saturation import SetType, classify_type, is_minimal_one_saturating


def ps(v, *pts):
    return PointSet.from_points(v, pts)


CAP5 = ps(3, 1, 2, 4, 8, 15)


def test_gl_on_five_cap_every_pivot():
    for pivot in CAP5.points:
        out = gl_construction(CAP5, pivot)
        assert are_equivalent(out, CAP5)


@pytest.mark.parametrize("v", [2, 3, 4])
def test_gl_on_hyperplane_complement(v):
    target = hyperplane_plus_point(v, 1, 1)
    for f in (1, num_points(v)):
        s = hyperplane_complement(v, f)
        for pivot in s.points:
            out = gl_construction(s, pivot)
            assert are_equivalent(out, target)
            assert classify_type(out) is (SetType.NA if v == 2 else SetType.NC)


def test_gl_on_nine_cap_splits_by_pivot():
    cap9 = ps(4, 1, 2, 4, 8, 14, 16, 22, 27, 28)
    stabs = {}
    for pivot in cap9.points:
        stabs[pivot] = stabilizer_order(gl_construction(cap9, pivot))
    assert sorted(p for p, o in stabs.items() if o == 336) == [1, 27]
    assert all(o == 144 for p, o in stabs.items() if p not in (1, 27))


def test_gl_is_an_involution_and_minimal(classes):
    for v, records in classes.items():
        for rec in records:
            s = rec.as_set()
            if not rec.type.is_cap:
                continue
            for pivot in s.points:
                out = gl_construction(s, pivot)
                assert is_minimal_one_saturating(out)
                if is_complete_cap(out):
                    assert gl_construction(out, pivot) == s


def test_gl_errors():
    with pytest.raises(ConstructionError):
        gl_construction(CAP5, 3)
    with pytest.raises(ConstructionError):
        gl_construction(ps(3, 1, 2, 3, 4, 8, 12), 1)


def test_doubling_examples():
    out = doubling(CAP5)
    assert out == ps(4, 1, 2, 4, 8, 15, 17, 18, 20, 24, 31)
    assert are_equivalent(out, ps(4, 1, 2, 4, 8, 15, 16, 21, 22, 27, 28))
    assert is_complete_cap(out) and stabilizer_order(out) == 1920
    assert is_complete_cap(doubling(ps(2, 1, 2, 4, 7)))
    with pytest.raises(ConstructionError):
        doubling(PointSet.from_points(6, [1]))


@pytest.mark.parametrize("v", [2, 3, 4])
def test_hyperplane_classes(v):
    comps = [hyperplane_complement(v, f) for f in range(1, num_points(v) + 1)]
    assert all(len(s) == 1 << v for s in comps)
    assert all(are_equivalent(comps[0], s) for s in comps[1:])
    assert stabilizer_order(comps[0]) == asl_order(v)
    plus = hyperplane_plus_point(v, 3, 1)
    assert len(plus) == 1 << v
    assert stabilizer_order(plus) == gl_order(v)
    assert not are_equivalent(plus, comps[0])


def test_hyperplane_plus_point_example():
    out = hyperplane_plus_point(3, 2, 2)
    assert out == ps(3, 1, 2, 4, 5, 8, 9, 12, 13)
    assert stabilizer_order(out) == 168
    with pytest.raises(ConstructionError):
        hyperplane_plus_point(3, 2, 1)


@pytest.mark.parametrize("v", [2, 3, 4])
def test_top_size_classes_are_hyperplane_forms(v, classes):
    top = [r for r in classes[v] if r.k == 1 << v]
    assert len(top) == 2
    comp = hyperplane_complement(v, 1)
    f, p = 1, 1
    assert dot2(f, p)
    plus = hyperplane_plus_point(v, f, p)
    caps = [r for r in top if r.type.is_cap]
    others = [r for r in top if not r.type.is_cap]
    assert are_equivalent(caps[0].as_set(), comp) and caps[0].stab_order == asl_order(v)
    assert are_equivalent(others[0].as_set(), plus) and others[0].stab_order == gl_order(v)


def test_construct_dispatch():
    res = construct("hyperplane-complement", v=3, f=8)
    assert res.output == ps(3, *range(8, 16))
    assert res.claimed_properties == (COMPLETE_CAP, MINIMAL)
    assert construct("double", s=ps(3, 1, 2, 4)).claimed_properties == ()
    assert construct("gl", s=CAP5, pivot=1).claimed_properties == (MINIMAL,)
    with pytest.raises(ValueError):
        construct("nope")
