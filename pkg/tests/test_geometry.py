from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inscribe.geometry import (
    INF,
    AllCollinear,
    CirclePoint,
    Configuration,
    GeometryError,
    Point,
    arc_ccw_between,
    circle_embed,
    convex_hull,
    in_general_position,
    interior_labels,
    line_intersection,
    orient,
    param,
)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=60)
points = st.builds(Point, rats, rats)
params = st.one_of(rats, st.just(INF))


def P(x, y):
    return Point.of(x, y)


def test_orient_examples():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(1, 1), P(2, 2)) == 0
    assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1


@given(points, points, points)
def test_orient_cyclic_and_antisymmetric(p, q, r):
    assert orient(p, q, r) == orient(q, r, p) == -orient(q, p, r)


def test_circle_embed_examples():
    assert circle_embed(CirclePoint.of(0)) == P(1, 0)
    assert circle_embed(CirclePoint.of(1)) == P(0, 1)
    assert circle_embed(CirclePoint(INF)) == P(-1, 0)
    assert param("1/0") is INF and param("inf") is INF


@given(params)
def test_circle_embed_is_on_circle(t):
    assert circle_embed(CirclePoint(t)).norm2() == 1


def test_arc_examples():
    c = CirclePoint.of
    assert arc_ccw_between(c(0), c(1), CirclePoint(INF))
    assert not arc_ccw_between(c(0), c(-1), CirclePoint(INF))
    assert arc_ccw_between(c(0), c(Fraction(1, 2)), c(1))


@given(params, params, params)
def test_arc_matches_orient(a, b, c):
    pa, pb, pc = (circle_embed(CirclePoint(x)) for x in (a, b, c))
    if len({pa, pb, pc}) < 3:
        return
    got = arc_ccw_between(CirclePoint(a), CirclePoint(b), CirclePoint(c))
    assert got == (orient(pa, pb, pc) == 1)


def test_hull_examples():
    sq = Configuration({"a": P(0, 0), "b": P(2, 0), "c": P(2, 2), "d": P(0, 2), "m": P(1, 1)})
    assert convex_hull(sq) == ["a", "b", "c", "d"]
    assert interior_labels(sq) == ["m"]
    tri = Configuration({"x": P(0, 0), "y": P(3, 1), "z": P(1, 4)})
    assert convex_hull(tri) == ["x", "y", "z"]
    with pytest.raises(AllCollinear):
        convex_hull(Configuration({"a": P(0, 0), "b": P(1, 1), "c": P(2, 2)}))


def test_hull_drops_points_inside_an_edge():
    cfg = Configuration({"a": P(0, 0), "b": P(1, 0), "c": P(2, 0), "d": P(1, 2)})
    assert convex_hull(cfg) == ["a", "c", "d"]


@given(st.lists(points, min_size=3, max_size=9, unique=True), points, st.fractions(min_value=Fraction(1, 10), max_value=10))
def test_hull_invariant_under_translation_and_scaling(pts, shift, k):
    cfg = Configuration({f"p{i}": p for i, p in enumerate(pts)})
    try:
        base = convex_hull(cfg)
    except AllCollinear:
        return
    moved = convex_hull(cfg.transformed(lambda p: (p + shift).scale(k)))
    i = moved.index(base[0])
    assert moved[i:] + moved[:i] == base


def test_general_position():
    assert in_general_position(Configuration({"a": P(0, 0), "b": P(1, 0), "c": P(0, 1)}))
    assert not in_general_position(Configuration({"a": P(0, 0), "b": P(1, 1), "c": P(2, 2)}))


def test_configuration_checks_circle_flags():
    with pytest.raises(GeometryError):
        Configuration({"a": P(1, 0)}, {"a": CirclePoint.of(1)})
    cfg = Configuration.build({"m": P(0, 0)}, {"a": 0, "b": 1, "c": "inf"}, marked={"a"})
    assert cfg["c"] == P(-1, 0)
    sub = cfg.subset(["c", "a"])
    assert sub.labels == ["a", "c"] and set(sub.circle) == {"a", "c"} and sub.marked == {"a"}


def test_line_intersection():
    assert line_intersection(P(0, 0), P(2, 2), P(0, 2), P(2, 0)) == P(1, 1)
    assert line_intersection(P(0, 0), P(1, 0), P(0, 1), P(1, 1)) is None
