"""Fractional-linear maps of the circle in the tangent half-angle parameter.

A map is a 2x2 rational matrix ``[[m00, m01], [m10, m11]]`` acting by
``t -> (m00 t + m01) / (m10 t + m11)``.  Projection through an interior
point ``p`` (send ``z`` to the other end of the chord through ``p``) is
``[[py, px - 1], [px + 1, -py]]``; it has trace 0 and positive determinant
``1 - |p|^2``, so it is an involution preserving the circular order.

Fixed points of hyperbolic maps are quadratic irrationals; they live in
:class:`QuadraticNumber` so orbits can be checked exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from sympy import factorint

from .geometry import (
    INF,
    CirclePoint,
    GeometryError,
    Point,
    _sgn,
    as_fraction,
    circle_embed,
    cyclic_sign,
    hull_indices,
    line_intersection,
    orient,
    param,
)


class NotInterior(GeometryError):
    pass


class NotConvexPosition(GeometryError):
    pass


class Degenerate(GeometryError):
    pass


_TRIAL_LIMIT = 10**5


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s^2 d (n > 0).

    Primes below ``_TRIAL_LIMIT`` are removed exactly; a leftover cofactor
    that is not a perfect square stays in d, which is then squarefree
    unless it hides the square of a prime above the limit.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    s, d = 1, 1
    for prime, e in factorint(n, limit=_TRIAL_LIMIT).items():
        prime, e = int(prime), int(e)
        if prime > _TRIAL_LIMIT:
            q = math.isqrt(prime)
            if q * q == prime:
                s *= q ** e
                continue
        s *= prime ** (e // 2)
        if e % 2:
            d *= prime
    return s, d


def _split_root(q: Fraction) -> tuple[Fraction, int]:
    """sqrt(q) = c * sqrt(D) with rational c and squarefree D (q > 0)."""
    s1, d1 = squarefree_decomposition(q.numerator * q.denominator)
    return Fraction(s1, q.denominator), d1


@dataclass(frozen=True)
class QuadraticNumber:
    """``a + b sqrt(D)``; ``D == 1`` encodes the rationals (then ``b == 0``)."""

    a: Fraction
    b: Fraction = Fraction(0)
    D: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.D < 1:
            raise ValueError("D must be a positive squarefree integer")
        if self.D == 1 and self.b:
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))
        if self.b == 0 and self.D != 1:
            object.__setattr__(self, "D", 1)

    @classmethod
    def sqrt(cls, q) -> "QuadraticNumber":
        q = as_fraction(q)
        if q < 0:
            raise ValueError("negative radicand")
        if q == 0:
            return cls(Fraction(0))
        c, d = _split_root(q)
        return cls(Fraction(0), c, d) if d != 1 else cls(c)

    @property
    def field(self) -> str:
        return "rational" if self.D == 1 else str(self.D)

    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.D != 1 and self.D != 1 and other.D != self.D:
                raise ValueError(f"mixed fields Q(sqrt {self.D}) and Q(sqrt {other.D})")
            return other
        return QuadraticNumber(as_fraction(other))

    def _d(self, other) -> int:
        return self.D if self.D != 1 else other.D

    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._d(o)
        return QuadraticNumber(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic number")
        num = self * o.conjugate()
        return QuadraticNumber(num.a / n, num.b / n, num.D)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sign(self) -> int:
        sa, sb = _sgn(self.a), _sgn(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D
        return sa * _sgn(self.a * self.a - self.b * self.b * self.D)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return (self - other).sign() == 0

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __repr__(self):
        if self.b == 0:
            return f"Q({self.a})"
        return f"Q({self.a} + {self.b}*sqrt({self.D}))"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.D})"


Value = Union[Fraction, QuadraticNumber]
Homog = tuple  # (num, den) pair of Values


def _homog(t) -> Homog:
    if t is INF:
        return (Fraction(1), Fraction(0))
    if isinstance(t, CirclePoint):
        return _homog(t.t)
    if isinstance(t, QuadraticNumber):
        return (t, Fraction(1))
    return (as_fraction(t), Fraction(1))


def _dehomog(h: Homog):
    x, y = h
    if y == 0:
        return INF
    v = x / y
    if isinstance(v, QuadraticNumber) and v.is_rational():
        return v.a
    return v


@dataclass(frozen=True)
class CircleMap:
    m00: Fraction
    m01: Fraction
    m10: Fraction
    m11: Fraction

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.det == 0:
            raise Degenerate("singular matrix")

    @classmethod
    def identity(cls) -> "CircleMap":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> Fraction:
        return self.m00 * self.m11 - self.m01 * self.m10

    @property
    def trace(self) -> Fraction:
        return self.m00 + self.m11

    def matrix(self) -> tuple:
        return ((self.m00, self.m01), (self.m10, self.m11))

    def act(self, h: Homog) -> Homog:
        x, y = h
        return (self.m00 * x + self.m01 * y, self.m10 * x + self.m11 * y)

    def __call__(self, t):
        """Image of a parameter (Fraction, QuadraticNumber, INF or CirclePoint)."""
        out = _dehomog(self.act(_homog(t)))
        if isinstance(t, CirclePoint):
            return CirclePoint(out)
        return out

    def __matmul__(self, other: "CircleMap") -> "CircleMap":
        """``self @ other`` applies ``other`` first."""
        a, b = self, other
        return CircleMap(
            a.m00 * b.m00 + a.m01 * b.m10,
            a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10,
            a.m10 * b.m01 + a.m11 * b.m11,
        )

    def inverse(self) -> "CircleMap":
        return CircleMap(self.m11, -self.m01, -self.m10, self.m00)

    def is_scalar(self) -> bool:
        """True iff the matrix is proportional to the identity."""
        return self.m01 == 0 and self.m10 == 0 and self.m00 == self.m11

    def same_class(self, other: "CircleMap") -> bool:
        """Equality in PGL(2, Q)."""
        a = (self.m00, self.m01, self.m10, self.m11)
        b = (other.m00, other.m01, other.m10, other.m11)
        return all(a[i] * b[j] == a[j] * b[i] for i in range(4) for j in range(4))


def projection_map(p: Point) -> CircleMap:
    """Send each circle point to the other end of its chord through ``p``."""
    if p.norm2() >= 1:
        raise NotInterior(f"{p} is not strictly inside the unit circle")
    return CircleMap(p.y, p.x - 1, p.x + 1, -p.y)


def compose(maps: Sequence[CircleMap]) -> CircleMap:
    """``compose([f, g, h]) == f o g o h`` (the last map is applied first)."""
    if not maps:
        raise ValueError("compose needs at least one map")
    out = maps[0]
    for m in maps[1:]:
        out = out @ m
    return out


@dataclass(frozen=True)
class MapClass:
    kind: str  # identity, elliptic, parabolic, hyperbolic
    fixed_points: tuple = ()
    multiplier: QuadraticNumber | None = None
    attracting: object = None
    discriminant: Fraction = Fraction(0)

    @property
    def field(self) -> str:
        for f in self.fixed_points:
            if isinstance(f, QuadraticNumber):
                return f.field
        return "rational"


def classify(f: CircleMap) -> MapClass:
    """Kind, fixed points and multiplier of a circle map.

    The multiplier is the derivative at the attracting fixed point, so it
    is below 1 for every hyperbolic map.
    """
    if f.det == 0:
        raise Degenerate("singular matrix")
    if f.is_scalar():
        return MapClass("identity", multiplier=QuadraticNumber(Fraction(1)))
    tr, det = f.trace, f.det
    disc = tr * tr - 4 * det
    if disc < 0:
        return MapClass("elliptic", discriminant=disc)
    if disc == 0:
        fp = INF if f.m10 == 0 else QuadraticNumber((f.m00 - f.m11) / (2 * f.m10))
        return MapClass("parabolic", (fp,), QuadraticNumber(Fraction(1)), fp, disc)
    root = QuadraticNumber.sqrt(disc)
    # eigenvalue (tr +- root)/2 belongs to the fixed point with the same sign
    lam_plus = (root + tr) / 2
    lam_minus = (-root + tr) / 2
    if f.m10 == 0:
        finite = QuadraticNumber(f.m01 / (f.m11 - f.m00))
        # eigenvalue m00 belongs to infinity, m11 to the finite point
        if abs(f.m00) > abs(f.m11):
            fixed, r = (INF, finite), QuadraticNumber(f.m11 / f.m00)
        else:
            fixed, r = (finite, INF), QuadraticNumber(f.m00 / f.m11)
        return MapClass("hyperbolic", fixed, r, fixed[0], disc)
    t_plus = (root + (f.m00 - f.m11)) / (2 * f.m10)
    t_minus = (-root + (f.m00 - f.m11)) / (2 * f.m10)
    if tr > 0:
        attracting, repelling, big, small = t_plus, t_minus, lam_plus, lam_minus
    else:
        attracting, repelling, big, small = t_minus, t_plus, lam_minus, lam_plus
    r = small / big
    return MapClass("hyperbolic", (attracting, repelling), r, attracting, disc)


def derivative_at(f: CircleMap, t) -> QuadraticNumber:
    """Derivative of ``f`` in the parameter at a finite point ``t``."""
    t = t if isinstance(t, QuadraticNumber) else QuadraticNumber(as_fraction(t))
    den = t * f.m10 + f.m11
    return QuadraticNumber(f.det) / (den * den)


def order_ccw(points: Sequence[Point]) -> list[int]:
    """Indices of points in convex position, ccw, starting from index 0."""
    if len(points) < 3:
        raise NotConvexPosition("need at least 3 points")
    hull = hull_indices(list(points))
    if len(hull) != len(points):
        raise NotConvexPosition("crossing points are not in convex position")
    k = hull.index(0)
    return hull[k:] + hull[:k]


def crossing_map(crossings: Sequence[Point]) -> tuple[list[Point], list[CircleMap], CircleMap]:
    """Ccw-ordered crossings, their projections f_k, and f = f_n o ... o f_1."""
    for p in crossings:
        if p.norm2() >= 1:
            raise NotInterior(f"{p} is not strictly inside the unit circle")
    order = order_ccw(crossings)
    pts = [crossings[i] for i in order]
    fs = [projection_map(p) for p in pts]
    return pts, fs, compose(fs[::-1])


def _is_ccw_polygon(verts: Sequence[Homog]) -> bool:
    n = len(verts)
    for i in range(n):
        for j in range(i + 1, n):
            x, y = verts[i], verts[j]
            if x[0] * y[1] - x[1] * y[0] == 0:
                return False
    v0 = verts[0]
    return all(cyclic_sign(v0, verts[k], verts[k + 1]) > 0 for k in range(1, n - 1))


def orbit(fs: Sequence[CircleMap], start) -> list:
    """``start, f_1(start), f_2 f_1(start), ...`` (n points)."""
    h = _homog(start)
    out = [h]
    for f in fs[:-1]:
        h = f.act(h)
        out.append(h)
    return out


def inscribed_polygons(crossings: Sequence[Point]) -> list[tuple]:
    """Inscribed n-gons with the k-th ccw crossing point on the k-th edge.

    Each polygon is a tuple of vertex parameters (QuadraticNumber or INF);
    vertex 1 sits between the edges through the last and the first crossing.
    """
    if len(crossings) < 3:
        raise NotConvexPosition("need at least 3 crossing points")
    pts, fs, f = crossing_map(crossings)
    cls = classify(f)
    if cls.kind in ("identity", "elliptic"):
        # identity cannot occur for crossings in convex position
        return []
    found = []
    for x in cls.fixed_points:
        verts = orbit(fs, x)
        closing = fs[-1].act(verts[-1])
        h0 = verts[0]
        if closing[0] * h0[1] - closing[1] * h0[0] != 0:
            continue
        if _is_ccw_polygon(verts):
            found.append(tuple(_dehomog(v) for v in verts))
    return found


def two_polygon_crossings(a: Sequence, c: Sequence) -> list[Point]:
    """p_k = a_k a_{k+1} x c_k c_{k+1} for alternating a_1 < c_1 < a_2 < ...

    Both polygons then carry p_k on their k-th edge.
    """
    n = len(a)
    if n < 3 or len(c) != n:
        raise ValueError("need two n-gons with n >= 3")
    A = [circle_embed(x) for x in a]
    C = [circle_embed(x) for x in c]
    seq = [x for pair in zip(a, c) for x in pair]
    seq = [x if isinstance(x, CirclePoint) else CirclePoint.of(x) for x in seq]
    h = [x.homogeneous() for x in seq]
    if not all(cyclic_sign(h[0], h[i], h[i + 1]) > 0 for i in range(1, 2 * n - 1)):
        raise NotConvexPosition("vertices do not alternate a_1, c_1, a_2, ... ccw")
    out = []
    for k in range(n):
        X = line_intersection(A[k], A[(k + 1) % n], C[k], C[(k + 1) % n])
        out.append(X)
    return out


def polygon_vertex_homog(v) -> Homog:
    return _homog(v)


def params_equal(u, v) -> bool:
    hu, hv = _homog(u), _homog(v)
    return hu[0] * hv[1] - hu[1] * hv[0] == 0


def disk_mobius_float(a: complex):
    """Projection through ``a`` in complex form, ``z -> (z - a) / (conj(a) z - 1)``."""
    ac = a.conjugate()

    def phi(z):
        return (z - a) / (ac * z - 1)

    return phi


def _float_roots(maps, grid, tol):
    """Attracting fixed points of maps[-1] o ... o maps[0] on the circle."""

    def g(z):
        for m in maps:
            z = m(z)
        return z

    def disp(theta):
        z = np.exp(1j * theta)
        return np.angle(g(z) / z)

    d = disp(grid)
    nxt = np.roll(d, -1)
    # a genuine root changes sign with small values; the +-pi wrap does not
    idx = np.nonzero((np.sign(d) != np.sign(nxt)) & (np.abs(d) < 1.0) & (np.abs(nxt) < 1.0))[0]
    step = grid[1] - grid[0]
    out = []
    for i in idx:
        lo, hi = grid[i], grid[i] + step
        dlo = disp(np.array([lo]))[0]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            dm = disp(np.array([mid]))[0]
            if np.sign(dm) == np.sign(dlo):
                lo, dlo = mid, dm
            else:
                hi = mid
        theta = 0.5 * (lo + hi)
        if abs(disp(np.array([theta]))[0]) > tol:
            continue
        h = 1e-7
        slope = (disp(np.array([theta + h]))[0] - disp(np.array([theta - h]))[0]) / (2 * h)
        out.append((theta, 1.0 + slope))
    return out


def count_closed_orbits_float(crossings: Sequence[Point], samples: int = 10**6, tol: float = 1e-9) -> int:
    """Dense-sampling float oracle: number of closed ccw n-gons.

    Roots of the angular displacement are bracketed on a uniform grid and
    refined by bisection.  Repelling fixed points of f are located as
    attracting fixed points of its inverse (the same involutions in reverse
    order), where the displacement is well conditioned.
    """
    order = order_ccw(crossings)
    ps = [complex(float(crossings[i].x), float(crossings[i].y)) for i in order]
    maps = [disk_mobius_float(a) for a in ps]
    grid = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    fixed = [th for th, slope in _float_roots(maps, grid, tol) if slope <= 1.0]
    fixed += [th for th, slope in _float_roots(maps[::-1], grid, tol) if slope < 1.0]
    count = 0
    for theta in fixed:
        verts = [np.exp(1j * theta)]
        for m in maps[:-1]:
            verts.append(m(verts[-1]))
        ang = np.mod(np.angle(np.array(verts)) - np.angle(verts[0]), 2 * np.pi)
        if np.all(np.diff(ang) > 0):
            count += 1
    return count
