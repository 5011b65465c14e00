import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgsat.geometry import (
    GeometryError,
    PointSet,
    format_sets,
    hyperplane,
    hyperplanes,
    is_cap,
    lines,
    num_points,
    parse_sets,
    span_closure,
    spans_space,
    third_point,
)

from conftest import point_sets


def ps(v, *pts):
    return PointSet.from_points(v, pts)


@pytest.mark.parametrize("a, b, c", [(1, 2, 3), (7, 11, 12)])
def test_third_point(a, b, c):
    assert third_point(a, b) == c


def test_third_point_degenerate():
    with pytest.raises(GeometryError):
        third_point(5, 5)


def test_span_closure_examples():
    assert span_closure(ps(2, 1, 2)) == ps(2, 1, 2, 3)
    assert span_closure(ps(2)) == ps(2)
    assert span_closure(ps(2, 1, 2, 4)) == PointSet.full(2)


def test_is_cap_examples():
    assert is_cap(ps(2, 1, 2, 4, 7))
    assert not is_cap(ps(2, 1, 2, 4, 6))
    assert is_cap(ps(2, 1))


def test_hyperplanes():
    assert hyperplane(2, 4) == ps(2, 1, 2, 3)
    hs = hyperplanes(2)
    assert len(hs) == 7 and all(len(h) == 3 for h in hs)
    assert hyperplane(3, 2) == ps(3, 1, 4, 5, 8, 9, 12, 13)
    for v in (2, 3, 4):
        hs = hyperplanes(v)
        assert len(hs) == num_points(v)
        assert len(set(hs)) == len(hs)
        assert all(len(h) == (1 << v) - 1 for h in hs)


@pytest.mark.parametrize("v", [2, 3, 4])
def test_hyperplanes_xor_closed(v):
    for h in hyperplanes(v):
        pts = h.points
        assert all(a ^ b in h for a in pts for b in pts if a != b)


@pytest.mark.parametrize("v", [2, 3, 4])
def test_line_count(v):
    triples = list(lines(v))
    assert len(triples) == num_points(v) * ((1 << v) - 1) // 3
    assert all(a ^ b == c for a, b, c in triples)


def test_dimension_bounds():
    with pytest.raises(GeometryError):
        PointSet.from_points(7, [1])
    with pytest.raises(GeometryError):
        PointSet.from_points(1, [1])
    with pytest.raises(GeometryError):
        PointSet.from_points(2, [8])
    assert num_points(6) == 127
    assert len(PointSet.full(6)) == 127


@given(st.integers(2, 6).flatmap(lambda v: st.tuples(st.just(v), st.integers(1, num_points(v)), st.integers(1, num_points(v)))))
def test_line_closure(vab):
    _, a, b = vab
    if a != b:
        assert third_point(a, third_point(a, b)) == b


@given(point_sets(), st.data())
def test_span_idempotent_and_monotone(s, data):
    closed = span_closure(s)
    assert span_closure(closed) == closed
    assert s <= closed
    extra = data.draw(st.sets(st.integers(1, num_points(s.v))))
    t = s | PointSet.from_points(s.v, extra)
    assert span_closure(s) <= span_closure(t)


@given(point_sets(max_size=12), st.data())
def test_cap_hereditary(s, data):
    if is_cap(s):
        sub = data.draw(st.sets(st.sampled_from(s.points))) if len(s) else set()
        assert is_cap(PointSet.from_points(s.v, sub))


def test_spans_space():
    assert spans_space(ps(2, 1, 2, 4))
    assert not spans_space(ps(3, 1, 2, 3, 4, 5, 6, 7))


def test_set_text_round_trip():
    sets = [ps(3, 1, 2, 4, 8, 15), ps(3, 1, 2, 3, 4, 8, 12)]
    text = format_sets(sets)
    assert text.splitlines()[0] == "v=3"
    assert text.splitlines()[1] == "1 2 4 8 15"
    v, back = parse_sets(text)
    assert v == 3 and back == sets
    with pytest.raises(GeometryError):
        parse_sets("1 2 4\n")
    assert parse_sets("1 2 4\n", v=2)[1] == [ps(2, 1, 2, 4)]
    with pytest.raises(GeometryError):
        parse_sets("v=3\n1 2\n", v=2)
