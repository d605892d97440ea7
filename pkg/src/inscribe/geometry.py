"""Exact rational planar primitives.

Everything here works over :class:`fractions.Fraction`.  Points on the unit
circle are carried by their tangent half-angle parameter ``t`` so that a
rational ``t`` always embeds to a rational point::

    z(t) = ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)),    z(INF) = (-1, 0)

The parameter increases counterclockwise from (1, 0) through (0, 1) to
(-1, 0) at ``t = INF`` and comes back from ``-inf`` through (0, -1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Union


class GeometryError(ValueError):
    pass


class AllCollinear(GeometryError):
    pass


class _Infinity:
    """The parameter of (-1, 0)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

Param = Union[Fraction, _Infinity]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(as_fraction(x), as_fraction(y))

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y


def param(t) -> Param:
    """Normalize a circle parameter; ``None``, ``INF`` and ``"inf"`` mean infinity."""
    if t is None or t is INF:
        return INF
    if isinstance(t, str) and t.strip().lower() in ("inf", "1/0"):
        return INF
    return as_fraction(t)


class CirclePoint(NamedTuple):
    t: Param

    @classmethod
    def of(cls, t) -> "CirclePoint":
        return cls(param(t))

    def embed(self) -> Point:
        return circle_embed(self)

    def homogeneous(self) -> tuple[int, int]:
        """(num, den) with den >= 0; infinity is (1, 0)."""
        if self.t is INF:
            return (1, 0)
        return (self.t.numerator, self.t.denominator)


def circle_embed(c: CirclePoint | Param) -> Point:
    t = c.t if isinstance(c, CirclePoint) else param(c)
    if t is INF:
        return Point(Fraction(-1), Fraction(0))
    d = 1 + t * t
    return Point((1 - t * t) / d, 2 * t / d)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of det [[p, q, r], [1, 1, 1]]: +1 ccw, 0 collinear, -1 cw."""
    return _sgn((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))


def cyclic_sign(u, v, w) -> int:
    """Cyclic order of three circle points given as homogeneous parameters.

    ``u``, ``v``, ``w`` are pairs ``(num, den)`` over any ordered ring
    (rationals or quadratic numbers).  The result equals the orientation of
    the embedded points.
    """
    duv = v[0] * u[1] - u[0] * v[1]
    dvw = w[0] * v[1] - v[0] * w[1]
    duw = w[0] * u[1] - u[0] * w[1]
    return _sgn(duv * dvw * duw)


def arc_ccw_between(a: CirclePoint, b: CirclePoint, c: CirclePoint) -> bool:
    """True iff ``b`` lies strictly on the counterclockwise arc from ``a`` to ``c``."""
    return cyclic_sign(a.homogeneous(), b.homogeneous(), c.homogeneous()) > 0


def line_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Point | None:
    """Intersection of lines p1p2 and q1q2, or None when parallel."""
    d1 = p2 - p1
    d2 = q2 - q1
    den = d1.x * d2.y - d1.y * d2.x
    if den == 0:
        return None
    s = ((q1.x - p1.x) * d2.y - (q1.y - p1.y) * d2.x) / den
    return Point(p1.x + s * d1.x, p1.y + s * d1.y)


def centroid(points: Iterable[Point]) -> Point:
    pts = list(points)
    n = len(pts)
    return Point(sum((p.x for p in pts), Fraction(0)) / n, sum((p.y for p in pts), Fraction(0)) / n)


def hull_indices(points: list[Point]) -> list[int]:
    """Indices of strict hull vertices, ccw from the lexicographically smallest."""
    if len(points) < 3:
        raise GeometryError("need at least 3 points")
    order = sorted(range(len(points)), key=lambda i: (points[i].x, points[i].y))

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and orient(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise AllCollinear("all points are collinear")
    return hull


@dataclass(frozen=True)
class Configuration:
    """A labeled point set.

    ``circle`` maps labels of points known to lie on the unit circle to their
    exact parameter; ``marked`` is the set B of labels required on the
    circle (it is carried along, not enforced).
    """

    points: Mapping[str, Point]
    circle: Mapping[str, CirclePoint] = field(default_factory=dict)
    marked: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "points", dict(self.points))
        object.__setattr__(self, "circle", dict(self.circle))
        object.__setattr__(self, "marked", frozenset(self.marked))
        for lbl, c in self.circle.items():
            if lbl not in self.points:
                raise GeometryError(f"circle flag on unknown label {lbl!r}")
            if circle_embed(c) != self.points[lbl]:
                raise GeometryError(f"label {lbl!r}: coordinates differ from its circle parameter")
        unknown = self.marked - self.points.keys()
        if unknown:
            raise GeometryError(f"marked labels not in configuration: {sorted(unknown)}")

    @classmethod
    def build(cls, points=(), circle=(), marked=()) -> "Configuration":
        """Convenience constructor: ``circle`` entries are embedded automatically."""
        pts = dict(points)
        circ = {lbl: (c if isinstance(c, CirclePoint) else CirclePoint.of(c)) for lbl, c in dict(circle).items()}
        for lbl, c in circ.items():
            pts[lbl] = circle_embed(c)
        return cls(pts, circ, frozenset(marked))

    @property
    def labels(self) -> list[str]:
        return list(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, label: str) -> Point:
        return self.points[label]

    def coords(self) -> list[Point]:
        return list(self.points.values())

    def subset(self, labels: Iterable[str]) -> "Configuration":
        wanted = set(labels)
        keep = [l for l in self.points if l in wanted]
        return Configuration(
            {l: self.points[l] for l in keep},
            {l: c for l, c in self.circle.items() if l in keep},
            self.marked & set(keep),
        )

    def without(self, *labels: str) -> "Configuration":
        drop = set(labels)
        return self.subset(l for l in self.points if l not in drop)

    def relabel(self, mapping: Mapping[str, str]) -> "Configuration":
        return Configuration(
            {mapping.get(l, l): p for l, p in self.points.items()},
            {mapping.get(l, l): c for l, c in self.circle.items()},
            frozenset(mapping.get(l, l) for l in self.marked),
        )

    def transformed(self, fn) -> "Configuration":
        """Apply ``fn: Point -> Point`` to every point; circle flags are dropped."""
        return Configuration({l: fn(p) for l, p in self.points.items()}, {}, self.marked)

    def with_marked(self, labels: Iterable[str]) -> "Configuration":
        return Configuration(self.points, self.circle, frozenset(labels))


def convex_hull(config: Configuration) -> list[str]:
    labels = config.labels
    return [labels[i] for i in hull_indices(config.coords())]


def extreme_labels(config: Configuration) -> list[str]:
    if len(config) < 3:
        return config.labels
    return convex_hull(config)


def interior_labels(config: Configuration) -> list[str]:
    hull = set(extreme_labels(config))
    return [l for l in config.labels if l not in hull]


def in_general_position(config: Configuration) -> bool:
    pts = config.coords()
    return all(orient(p, q, r) != 0 for p, q, r in combinations(pts, 3))


def on_unit_circle(p: Point) -> bool:
    return p.norm2() == 1
