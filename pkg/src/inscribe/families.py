"""Exact generators for the named configurations and their checks.

Evenly spaced circle points are replaced by rational tangent half-angle
parameters close to the even angles; every "small enough" choice is an
explicit rational verified after construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import (
    INF,
    CirclePoint,
    Configuration,
    GeometryError,
    Point,
    arc_ccw_between,
    centroid,
    circle_embed,
    convex_hull,
    in_general_position,
    line_intersection,
    orient,
)
from .mobius import projection_map
from .order_type import chirotope, same_order_type


class EpsilonTooLarge(GeometryError):
    pass


class SignConditionViolated(ValueError):
    pass


class EmptyTriangle(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class ConstructionFailed(GeometryError):
    pass


# -- circle helpers -----------------------------------------------------------


def rational_param(theta: float, max_den: int = 1000) -> Fraction:
    """A rational tangent half-angle parameter near angle ``theta`` (not near pi)."""
    return Fraction(math.tan(theta / 2)).limit_denominator(max_den)


def circle_angle(c: CirclePoint) -> float:
    """Angle in (-pi, pi] of a circle point."""
    num, den = c.homogeneous()
    return 2 * math.atan2(num, den)


def param_near(theta: float, max_den: int) -> CirclePoint:
    """A rational circle parameter near angle ``theta`` with bounded denominator."""
    h = theta / 2
    s, c = math.sin(h), math.cos(h)
    if abs(s) <= abs(c):
        return CirclePoint(Fraction(s / c).limit_denominator(max_den))
    inv = Fraction(c / s).limit_denominator(max_den)
    return CirclePoint(INF if inv == 0 else 1 / inv)


def _chart_point(u: CirclePoint, v: CirclePoint, frac: Fraction) -> CirclePoint:
    # orientation preserving chart sending u to 0 and v to infinity; exact
    # but not angle-uniform, used only when floats cannot resolve the arc
    u0, u1 = u.homogeneous()
    v0, v1 = v.homogeneous()
    sgn = 1 if u0 * v1 - u1 * v0 > 0 else -1
    s = frac / (1 - frac)
    a = sgn * u1 - s * v1
    b = sgn * u0 - s * v0
    if a == 0:
        return CirclePoint(INF)
    return CirclePoint(Fraction(b) / a)


def arc_point(u: CirclePoint, v: CirclePoint, frac: Fraction) -> CirclePoint:
    """Rational circle point strictly inside the ccw arc from ``u`` to ``v``.

    The point sits near angle fraction ``frac`` of the arc and has the
    smallest power-of-ten denominator bound that keeps it within a quarter
    of the distance to the nearer end.
    """
    if not 0 < frac < 1:
        raise ValueError("frac must lie in (0, 1)")
    tu = circle_angle(u)
    arc = (circle_angle(v) - tu) % (2 * math.pi)
    target = tu + float(frac) * arc
    tol = arc * min(float(frac), 1 - float(frac)) / 4
    for k in range(1, 16):
        cand = param_near(target, 10**k)
        err = abs((circle_angle(cand) - target + math.pi) % (2 * math.pi) - math.pi)
        if err <= tol and arc_ccw_between(u, cand, v):
            return cand
    return _chart_point(u, v, frac)


def _left(P: Point, Q: Point, X: Point) -> bool:
    return orient(P, Q, X) > 0


def halfplane_point(lines: Sequence[tuple[Point, Point]]) -> Point:
    """Average of the vertices of the region left of every directed line.

    Raises EmptyTriangle when the region is empty or degenerate.
    """
    verts = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            X = line_intersection(*lines[i], *lines[j])
            if X is None:
                continue
            if all(orient(P, Q, X) >= 0 for P, Q in lines):
                if X not in verts:
                    verts.append(X)
    if len(verts) < 3:
        raise EmptyTriangle("region is empty or unbounded")
    g = centroid(verts)
    if not all(_left(P, Q, g) for P, Q in lines):
        raise EmptyTriangle("region has no interior")
    return g


# -- P_n ------------------------------------------------------------------------


@dataclass(frozen=True)
class PnParams:
    n: int
    eps: Fraction | None = None  # default 1 / (2 n^2)
    d_placement: str = "centroid"

    @property
    def epsilon(self) -> Fraction:
        return Fraction(1, 2 * self.n * self.n) if self.eps is None else Fraction(self.eps)


def _ac_params(n: int) -> tuple[list[Fraction], list[Fraction]]:
    """Parameters of a_1..a_n and c_1..c_n, alternating ccw, near even angles."""
    step = math.pi / n
    a = [rational_param(-step / 2 + 2 * step * i) for i in range(n)]
    c = [rational_param(step / 2 + 2 * step * i) for i in range(n)]
    return a, c


def _approx_unit(d: Point) -> Point:
    # rational stand-in for d / |d|
    return d.scale(1 / Fraction(math.hypot(float(d.x), float(d.y))).limit_denominator(10**6))


def _bisector_line(a0: Point, a1: Point, c0: Point, c1: Point, eps: Fraction) -> tuple[Point, Point]:
    """Directed line between the directions a0->a1 and c0->c1, shifted right by eps."""
    p = line_intersection(a0, a1, c0, c1)
    u = _approx_unit(a1 - a0) + _approx_unit(c1 - c0)
    u = _approx_unit(u)
    right = Point(u.y, -u.x)
    base = p + right.scale(eps)
    return base, base + u


def _pn_points(n: int, eps: Fraction):
    ta, tc = _ac_params(n)
    A = [circle_embed(t) for t in ta]
    C = [circle_embed(t) for t in tc]
    lines = [_bisector_line(A[i], A[(i + 1) % n], C[i], C[(i + 1) % n], eps) for i in range(n)]
    B = []
    for i in range(n):
        X = line_intersection(*lines[i], *lines[i - 1])
        if X is None:
            raise EpsilonTooLarge("parallel bisector lines")
        B.append(X)
    D = []
    for i in range(n):
        P, Q = lines[i]
        la = (A[i], A[(i + 1) % n])
        lc = (C[i], C[(i + 1) % n])
        tri = [line_intersection(*la, *lc), line_intersection(P, Q, *la), line_intersection(P, Q, *lc)]
        if any(v is None for v in tri):
            raise EpsilonTooLarge("degenerate triangle for d")
        D.append(centroid(tri))
    return ta, tc, A, B, C, D, lines


def pn_hull_labels(n: int) -> list[str]:
    out = []
    for i in range(1, n + 1):
        out += [f"a{i}", f"b{i}", f"c{i}"]
    return out


def check_sl(config: Configuration, n: int) -> bool:
    """Properties (S) and (L): consecutive a, b, c triples ccw and d_k left of b_k b_{k+1}."""
    for s in "abc":
        for k in range(n):
            p, q, r = (config[f"{s}{(k + j) % n + 1}"] for j in (-1, 0, 1))
            if orient(p, q, r) <= 0:
                return False
    for k in range(1, n + 1):
        if orient(config[f"b{k}"], config[f"b{k % n + 1}"], config[f"d{k}"]) <= 0:
            return False
    return True


def _hull_is(config: Configuration, order: list[str]) -> bool:
    hull = convex_hull(config)
    if len(hull) != len(order) or set(hull) != set(order):
        return False
    k = hull.index(order[0])
    return hull[k:] + hull[:k] == order


def make_pn(params: PnParams | int) -> Configuration:
    """The 4n-point configuration P_n; marked set = hull labels.

    Hull order is a_1, b_1, c_1, a_2, ... ccw and d_i sits at the centroid of
    the triangle cut from the wedge at a_i a_{i+1} x c_i c_{i+1} by L_i.
    """
    if isinstance(params, int):
        params = PnParams(params)
    n, eps = params.n, params.epsilon
    if n < 3:
        raise ValueError("n must be at least 3")
    if params.d_placement != "centroid":
        raise ValueError(f"unknown d placement {params.d_placement!r}")
    ta, tc, A, B, C, D, lines = _pn_points(n, eps)
    points, circle = {}, {}
    for i in range(n):
        points[f"a{i + 1}"] = A[i]
        points[f"b{i + 1}"] = B[i]
        points[f"c{i + 1}"] = C[i]
        circle[f"a{i + 1}"] = CirclePoint(ta[i])
        circle[f"c{i + 1}"] = CirclePoint(tc[i])
    for i in range(n):
        points[f"d{i + 1}"] = D[i]
    hull = pn_hull_labels(n)
    cfg = Configuration(points, circle, frozenset(hull))
    ok = in_general_position(cfg) and _hull_is(cfg, hull) and check_sl(cfg, n)
    for i in range(n):
        P, Q = lines[i]
        # c_i and a_{i+1} stay right of L_i
        ok = ok and orient(P, Q, C[i]) < 0 and orient(P, Q, A[(i + 1) % n]) < 0
    if not ok:
        raise EpsilonTooLarge(f"post-verification failed for eps={eps}")
    return cfg


# -- star configurations ------------------------------------------------------------


def sign_triple(sigma: Sequence[int], k: int) -> int:
    """(-1)^(inversions) of (sigma(k), sigma(k+1), sigma(k+2)), indices mod n, k 1-based."""
    n = len(sigma)
    if n < 3:
        raise ValueError("need n >= 3")
    vals = [sigma[(k - 1 + j) % n] for j in range(3)]
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if vals[i] > vals[j])
    return -1 if inv % 2 else 1


def _star_b(n: int, ta, tc, radius: Fraction) -> list[Point]:
    out = []
    for i in range(n):
        mid = arc_point(CirclePoint(ta[i]), CirclePoint(tc[i]), Fraction(1, 2))
        out.append(circle_embed(mid).scale(radius))
    return out


def _star_radii(n: int) -> list[Fraction]:
    # b_k must lie beyond chord a_k c_k and inside the wedge of its neighbours
    lo = math.cos(math.pi / (2 * n))
    hi = lo / math.cos(math.pi / n)
    return [Fraction(lo + (hi - lo) * f).limit_denominator(10**4) for f in (0.7, 0.8, 0.6, 0.9, 0.5)]


def _star_config(sigma: Sequence[int], radius: Fraction) -> Configuration:
    n = len(sigma)
    ta, tc = _ac_params(n)
    A = [circle_embed(t) for t in ta]
    C = [circle_embed(t) for t in tc]
    B = _star_b(n, ta, tc, radius)
    points, circle = {}, {}
    for i in range(n):
        points[f"a{i + 1}"], points[f"b{i + 1}"], points[f"c{i + 1}"] = A[i], B[i], C[i]
        circle[f"a{i + 1}"], circle[f"c{i + 1}"] = CirclePoint(ta[i]), CirclePoint(tc[i])
    D = {}
    for k in range(n):
        i, j = sigma[k] - 1, sigma[(k + 1) % n] - 1
        la, lb, lc = (A[i], A[j]), (B[i], B[j]), (C[i], C[j])
        tri = [line_intersection(*la, *lc), line_intersection(*la, *lb), line_intersection(*lb, *lc)]
        if any(v is None for v in tri):
            raise EmptyTriangle("parallel lines bound the (L') triangle")
        d = centroid(tri)
        if orient(B[i], B[j], d) <= 0:
            raise EmptyTriangle(f"(L') triangle for d{i + 1} lies on the wrong side of b{i + 1}b{j + 1}")
        D[i] = d
    for i in range(n):
        points[f"d{i + 1}"] = D[i]
    return Configuration(points, circle, frozenset(pn_hull_labels(n)))


def make_star(sigma: Sequence[int], eps: Fraction | None = None) -> Configuration:
    """A configuration of F_sigma with b_k at a common radius on the mid-angles.

    The radius is the first candidate for which the identity permutation
    reproduces the order type of make_pn(n, eps).
    """
    sigma = tuple(int(s) for s in sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of 1..n")
    if n < 3:
        raise ValueError("n must be at least 3")
    if any(sign_triple(sigma, k) != 1 for k in range(1, n + 1)):
        raise SignConditionViolated(f"{sigma} violates the positive sign condition")
    ref = chirotope(make_pn(PnParams(n, eps)))
    ident = tuple(range(1, n + 1))
    for R in _star_radii(n):
        try:
            if not same_order_type(_star_config(ident, R), ref):
                continue
            cfg = _star_config(sigma, R)
        except EmptyTriangle:
            continue
        if in_general_position(cfg) and _hull_is(cfg, pn_hull_labels(n)):
            return cfg
    raise EmptyTriangle(f"no radius candidate realizes F_sigma for {sigma}")


# -- Pascal -------------------------------------------------------------------------


def pascal_points(h: Sequence[CirclePoint | Point]) -> tuple[Point, Point, Point]:
    """c_1 = p1p5 x p2p4, c_2 = p1p6 x p3p4, c_3 = p2p6 x p3p5."""
    p = [x if isinstance(x, Point) else circle_embed(x) for x in h]
    if len(p) != 6:
        raise ValueError("need six points")
    pairs = [((0, 4), (1, 3)), ((0, 5), (2, 3)), ((1, 5), (2, 4))]
    out = []
    for (i, j), (k, l) in pairs:
        X = line_intersection(p[i], p[j], p[k], p[l])
        if X is None:
            raise ParallelLines(f"lines p{i + 1}p{j + 1} and p{k + 1}p{l + 1} are parallel")
        out.append(X)
    return tuple(out)


def pascal_collinear(h: Sequence[CirclePoint | Point]) -> bool:
    c1, c2, c3 = pascal_points(h)
    return orient(c1, c2, c3) == 0


# fixture reading: the hull runs p1, p2, p3, p6, p5, p4 ccw so that each pair
# of lines meets inside.  q1 sits in the triangle (c1, p1, p2), q3 in
# (c3, p2, p3) and q2 in the region (c2, p6, p5, p4), and the line q1 q3 puts
# p1, p2, p3 and q2 on one side and p4, p5, p6 on the other.  These facts are
# all visible in the chirotope and force c2 onto the q2 side of line q1 q3
# with c1 and c3 on the other side.  On a circle the crossings are collinear
# with c2 in the middle, so no inscribed realization exists.  Pushing p1
# outward bends c2 toward p1 p2 p3, which leaves room for such q's.
NON_PASCAL_HULL = ("p1", "p2", "p3", "p6", "p5", "p4")
PASCAL_LINES = (((0, 4), (1, 3)), ((0, 5), (2, 3)), ((1, 5), (2, 4)))
_NP_ANGLES = (0.1, 1.2, 2.2, 5.1, 4.1, 3.1)
_NP_PUSH = Fraction(1, 20)


def non_pascal_certificate(chi) -> bool:
    """True when the chirotope carries the obstruction described above.

    Labels must be p1..p6, q1..q3.  A True answer rules out every
    realization with p1..p6 concyclic, given that c2 lies between c1 and c3
    on the Pascal line of a convex inscribed hexagon with this hull order.
    """
    s = chi.sign
    hull = chi.hull_order()
    if "p1" not in hull or len(hull) != 6:
        return False
    k = hull.index("p1")
    if tuple(hull[k:] + hull[:k]) != NON_PASCAL_HULL:
        return False
    regions = (
        ("q1", [("p1", "p5", "p2"), ("p2", "p4", "p1")]),
        ("q3", [("p2", "p6", "p3"), ("p3", "p5", "p2")]),
        ("q2", [("p1", "p6", "p5"), ("p3", "p4", "p5")]),
    )
    for q, sides in regions:
        if any(s(a, b, q) != s(a, b, ref) for a, b, ref in sides):
            return False
    sigma = s("q1", "q3", "q2")
    near = all(s("q1", "q3", p) == sigma for p in ("p1", "p2", "p3"))
    far = all(s("q1", "q3", p) == -sigma for p in ("p4", "p5", "p6"))
    return near and far


def make_non_pascal(push: Fraction = _NP_PUSH) -> Configuration:
    """Six extreme points p_i and three interior q_i.

    With a positive ``push`` the triple (q1, q2, q3) is ccw and the
    chirotope passes :func:`non_pascal_certificate`.  ``push = 0`` gives the
    concyclic control built by the same recipe, an inscribed configuration.
    """
    t = [rational_param(a, 100) for a in _NP_ANGLES]
    P = [circle_embed(x) for x in t]
    P[0] = P[0].scale(1 + push)
    c = pascal_points(P)
    targets = (centroid([P[0], P[1]]), centroid([P[3], P[4], P[5]]), centroid([P[1], P[2]]))
    circle = {f"p{i + 1}": CirclePoint(t[i]) for i in range(1 if push else 0, 6)}
    s = Fraction(1, 10)
    for _ in range(12):
        Q = [ci + (g - ci).scale(s) for ci, g in zip(c, targets)]
        points = {f"p{i + 1}": P[i] for i in range(6)}
        points.update({f"q{i + 1}": Q[i] for i in range(3)})
        cfg = Configuration(points, circle, frozenset(NON_PASCAL_HULL))
        if in_general_position(cfg) and _hull_is(cfg, list(NON_PASCAL_HULL)):
            if push <= 0 or (orient(*Q) > 0 and non_pascal_certificate(chirotope(cfg))):
                return cfg
        s /= 2
    raise ConstructionFailed("non-Pascal fixture failed verification")


# -- P_n minus one point ---------------------------------------------------------


def _crossings(A, C, n):
    return [line_intersection(A[k], A[(k + 1) % n], C[k], C[(k + 1) % n]) for k in range(n)]


def _d_between(bk, bk1, ak, ak1, ck, ck1) -> Point:
    # region left of b_k b_{k+1}, a_{k+1} a_k and c_{k+1} c_k
    return halfplane_point([(bk, bk1), (ak1, ak), (ck1, ck)])


def _pn_minus_attempt(n: int, removed: str, delta: Fraction, start: Fraction) -> Configuration:
    ta, tc = _ac_params(n)
    a = [CirclePoint(t) for t in ta]
    c = [CirclePoint(t) for t in tc]
    A = [circle_embed(x) for x in a]
    C = [circle_embed(x) for x in c]
    fs = [projection_map(p) for p in _crossings(A, C, n)]
    b = [arc_point(a[0], c[0], start)]
    count = n + 1 if removed == "b1" else n
    for k in range(1, count):
        img = fs[k - 1](b[-1])
        kk = k % n
        if not (img == a[kk] or img == c[kk]) and _on_arc(a[kk], img, c[kk]):
            b.append(arc_point(a[kk], img, 1 - delta))
        else:
            raise ConstructionFailed("image left its arc")
    Bp = [circle_embed(x) for x in b]
    D = []
    for k in range(n if removed == "b1" else n - 1):
        D.append(_d_between(Bp[k], Bp[k + 1], A[k], A[(k + 1) % n], C[k], C[(k + 1) % n]))
    if removed != "b1":
        # d_n: left of b_n b_1, a_1 a_2, b_1 a_n and c_1 c_n
        D.append(halfplane_point([(Bp[n - 1], Bp[0]), (A[0], A[1]), (Bp[0], A[n - 1]), (C[0], C[n - 1])]))
    points, circle = {}, {}
    for i in range(n):
        for s, P, cp in (("a", A[i], a[i]), ("b", Bp[i], b[i]), ("c", C[i], c[i])):
            points[f"{s}{i + 1}"] = P
            circle[f"{s}{i + 1}"] = cp
    for i in range(n):
        points[f"d{i + 1}"] = D[i]
    drop = {"a1": "a1", "b1": "b1", "dn": f"d{n}"}[removed]
    cfg = Configuration(points, circle).without(drop)
    return cfg.with_marked(l for l in pn_hull_labels(n) if l != drop)


def _on_arc(u: CirclePoint, x: CirclePoint, v: CirclePoint) -> bool:
    return arc_ccw_between(u, x, v)


def make_pn_minus(n: int, removed: str, eps: Fraction | None = None) -> Configuration:
    """Inscribed realization of P_n with a_1, b_1 or d_n removed.

    Every extreme point carries an exact circle parameter; the output is
    checked to have the order type of make_pn(n) minus the same label.
    """
    if removed not in ("a1", "b1", "dn"):
        raise ValueError("removed must be one of a1, b1, dn")
    if n < 3:
        raise ValueError("n must be at least 3")
    drop = f"d{n}" if removed == "dn" else removed
    ref = chirotope(make_pn(PnParams(n, eps)).without(drop))
    starts = [Fraction(1, 2)] if removed == "b1" else [Fraction(1, 2 ** k) for k in range(2, 12)]
    for start in starts:
        for delta in (Fraction(1, 2 ** k) for k in range(3, 16)):
            try:
                cfg = _pn_minus_attempt(n, removed, delta, start)
            except (ConstructionFailed, EmptyTriangle):
                continue
            if not in_general_position(cfg):
                continue
            if all(l in cfg.circle for l in convex_hull(cfg)) and same_order_type(cfg, ref):
                return cfg
    raise ConstructionFailed(f"no inscribed realization found for P_{n} minus {drop}")


# -- interior-on-circle gadget -----------------------------------------------------


_Q_PUSH = Fraction(1, 10)


def _in_cell(X: Point, A: Point, b: Point, B: Point, a: Point) -> bool:
    """X inside the triangle bounded by lines Ab, Ba and AB."""
    Y = line_intersection(A, b, B, a)
    if Y is None:
        return False
    s = orient(A, B, Y)
    return s != 0 and orient(A, B, X) == s and orient(B, Y, X) == s and orient(Y, A, X) == s


def gadget_cells(cfg: Configuration) -> tuple[bool, bool, bool]:
    """The three cell memberships for C, A and B."""
    g = cfg.points
    return (
        _in_cell(g["C"], g["A"], g["b"], g["B"], g["a"]),
        _in_cell(g["A"], g["B"], g["c"], g["C"], g["b"]),
        _in_cell(g["B"], g["C"], g["a"], g["A"], g["c"]),
    )


def make_interior_circle_gadget() -> Configuration:
    """Configuration Q: extreme p1, p2, p3 around the interior hexagon A, c, B, a, C, b."""
    # triangle A, B, C ccw; c, a, b near the midpoints of AB, BC, CA pushed outward
    A, B, C = Point.of(0, 0), Point.of(4, 0), Point.of(2, 3)
    G = centroid([A, B, C])

    def mid_out(P, R):
        m = Point((P.x + R.x) / 2, (P.y + R.y) / 2)
        return m + (m - G).scale(_Q_PUSH)

    c, a, b = mid_out(A, B), mid_out(B, C), mid_out(C, A)
    pts = {
        "p1": Point.of(-9, -5),
        "p2": Point.of(13, -6),
        "p3": Point.of(1, 13),
        "A": A,
        "B": B,
        "C": C,
        "a": a,
        "b": b,
        "c": c,
    }
    cfg = Configuration(pts, {}, frozenset())
    inner = ["A", "c", "B", "a", "C", "b"]
    ok = in_general_position(cfg) and _hull_is(cfg, ["p1", "p2", "p3"])
    ok = ok and _hull_is(cfg.subset(inner), inner) and all(gadget_cells(cfg))
    if not ok:
        raise ConstructionFailed("gadget failed verification")
    return cfg


def gadget_angle_conditions(arcs) -> tuple:
    """The three arc inequalities for a concyclic hexagon A, c, B, a, C, b.

    ``arcs`` holds alpha_1..alpha_6 (ccw arcs from A); any array shape works
    as long as the first axis has length 6.
    """
    a1, a2, a3, a4, a5, a6 = arcs
    return (a2 + a3 < a5 + a6, a1 + a6 < a3 + a4, a4 + a5 < a1 + a2)
