"""Function representations of configurations with at most two interior points.

With distinguished points L, R on a horizontal line h (L left of R), the
remaining points p_1..p_n are numbered clockwise around the midpoint of LR
starting after L: first the n1 points above h from left to right, then the
n2 points below h from right to left.  psi_A(i) counts the points below h
strictly right of the directed line A -> p_i.

``inscribe_staircase`` builds, for any valid pair, a configuration with the
given representation whose extreme points are exact rational points of the
unit circle.  All positions are chosen on the upper open semicircle S_U: the
lower points q_j are placed through their reflections x_j = q_j^L (the other
end of the chord through L), and their reflections through R are
g(x_j) = f_R(f_L(x_j)).  Every "choose a point right after ..." becomes
"take a fixed fraction of the exact open interval of admissible positions".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .geometry import (
    INF,
    CirclePoint,
    Configuration,
    GeometryError,
    Point,
    centroid,
    circle_embed,
    convex_hull,
    extreme_labels,
    in_general_position,
    interior_labels,
    orient,
)
from .mobius import projection_map


class InvalidPair(ValueError):
    pass


class CoverageError(GeometryError):
    pass


class DegenerateLine(GeometryError):
    pass


class TooManyInterior(GeometryError):
    pass


@dataclass(frozen=True)
class StaircasePair:
    n1: int
    n2: int
    psi_L: tuple
    psi_R: tuple

    def __post_init__(self):
        object.__setattr__(self, "psi_L", tuple(int(v) for v in self.psi_L))
        object.__setattr__(self, "psi_R", tuple(int(v) for v in self.psi_R))

    @property
    def degree(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    def to_text(self) -> str:
        return f"{self.n1} {self.n2}\n{' '.join(map(str, self.psi_L))}\n{' '.join(map(str, self.psi_R))}\n"

    @classmethod
    def from_text(cls, text: str) -> "StaircasePair":
        lines = text.split("\n")
        if not lines or not lines[0].strip():
            raise ValueError("missing 'n1 n2' line")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError("first line must be 'n1 n2'")
        n1, n2 = int(head[0]), int(head[1])
        rest = lines[1:] + ["", ""]
        psi_L = tuple(int(v) for v in rest[0].split())
        psi_R = tuple(int(v) for v in rest[1].split())
        if len(psi_L) != n1 or len(psi_R) != n1:
            raise ValueError(f"expected {n1} values per function")
        return cls(n1, n2, psi_L, psi_R)


def validate_staircase(pair: StaircasePair) -> bool:
    if pair.n1 < 0 or pair.n2 < 0:
        return False
    if len(pair.psi_L) != pair.n1 or len(pair.psi_R) != pair.n1:
        return False
    for f in (pair.psi_L, pair.psi_R):
        if any(v < 0 or v > pair.n2 for v in f):
            return False
        if any(f[i] > f[i + 1] for i in range(len(f) - 1)):
            return False
    return all(l >= r for l, r in zip(pair.psi_L, pair.psi_R))


def _ordered_sides(config: Configuration, L: str, R: str):
    pL, pR = config[L], config[R]
    C = Point((pL.x + pR.x) / 2, (pL.y + pR.y) / 2)
    above, below = [], []
    for lbl in config.labels:
        if lbl in (L, R):
            continue
        s = orient(pL, pR, config[lbl])
        if s == 0:
            raise DegenerateLine(f"{lbl} lies on line {L}{R}")
        (above if s > 0 else below).append(lbl)

    def cw(a, b):
        # a before b when (C, a, b) turns clockwise
        return orient(C, config[a], config[b])

    above.sort(key=cmp_to_key(cw))
    below.sort(key=cmp_to_key(cw))
    return above, below


def function_representation(config: Configuration, L: str, R: str) -> StaircasePair:
    if L == R:
        raise CoverageError("L and R must differ")
    missing = set(interior_labels(config)) - {L, R}
    if missing:
        raise CoverageError(f"interior points {sorted(missing)} not covered by {{{L}, {R}}}")
    above, below = _ordered_sides(config, L, R)
    psi = {}
    for A in (L, R):
        pA = config[A]
        psi[A] = tuple(sum(1 for q in below if orient(pA, config[p], config[q]) < 0) for p in above)
    return StaircasePair(len(above), len(below), psi[L], psi[R])


def distinguished_pairs(config: Configuration) -> list[tuple[str, str]]:
    interior = set(interior_labels(config))
    if len(interior) > 2:
        raise TooManyInterior(f"{len(interior)} interior points")
    labels = config.labels
    return [(a, b) for a in labels for b in labels if a != b and interior <= {a, b}]


# positions on the open upper semicircle: w in (0, 1), left end (-1, 0) at
# w = 0, right end (1, 0) at w = 1; w = 1 / (1 + t)


def _w_of_t(t: Fraction) -> Fraction:
    return 1 / (1 + t)


def _t_of_w(w: Fraction) -> Fraction:
    return 1 / w - 1


@dataclass(frozen=True)
class _Plan:
    pair: StaircasePair
    x: list  # positions (w) of q_j^L
    gx: list  # positions (w) of q_j^R
    p: list  # positions (w) of p_i


L0 = Point(Fraction(-1, 2), Fraction(0))
R0 = Point(Fraction(1, 2), Fraction(0))


def _pick(lo: Fraction, hi: Fraction, frac: Fraction) -> Fraction:
    if not lo < hi:
        raise AssertionError("empty interval")
    return lo + frac * (hi - lo)


def reach_profile(pair: StaircasePair) -> list[int]:
    """c(j): how many reflections q^L lie left of q_j^R (1-based j)."""
    n2 = pair.n2
    c = []
    for j in range(1, n2 + 1):
        v = j
        for l, r in zip(pair.psi_L, pair.psi_R):
            if r + 1 <= j:
                v = max(v, l)
        c.append(v)
    return c


def _plan(pair: StaircasePair, frac: Fraction) -> _Plan:
    fL, fR = projection_map(L0), projection_map(R0)

    def g(w):
        t = fR(fL(_t_of_w(w)))
        return _w_of_t(t)

    n2 = pair.n2
    c = reach_profile(pair)
    x: list[Fraction] = []
    gx: list[Fraction] = []
    for j in range(1, n2 + 1):
        a = sum(1 for k in range(1, j) if c[k - 1] < j)  # prefix already passed
        lo = x[-1] if x else Fraction(0)
        if a >= 1:
            lo = max(lo, gx[a - 1])
        hi = gx[a] if a + 1 <= j - 1 else Fraction(1)
        x.append(_pick(lo, hi, frac))
        gx.append(g(x[-1]))
    ext_x = [Fraction(0)] + x + [Fraction(1)]
    ext_g = [Fraction(0)] + gx + [Fraction(1)]
    p: list[Fraction] = []
    for l, r in zip(pair.psi_L, pair.psi_R):
        lo = max(ext_x[l], ext_g[r])
        if p:
            lo = max(lo, p[-1])
        hi = min(ext_x[l + 1], ext_g[r + 1])
        p.append(_pick(lo, hi, frac))
    return _Plan(pair, x, gx, p)


def _realize(plan: _Plan, push_out: bool) -> Configuration:
    pair = plan.pair
    fL = projection_map(L0)
    circle = {}
    for i, w in enumerate(plan.p, start=1):
        circle[f"p{i}"] = CirclePoint(_t_of_w(w))
    for j, w in enumerate(plan.x, start=1):
        circle[f"p{pair.n1 + j}"] = CirclePoint(fL(_t_of_w(w)))
    points = {"L": L0, "R": R0}
    if push_out:
        if all(v == pair.n2 for v in pair.psi_L):
            circle["L"] = CirclePoint(INF)
        if all(v == 0 for v in pair.psi_R):
            circle["R"] = CirclePoint(Fraction(0))
    for lbl, c in circle.items():
        points[lbl] = circle_embed(c)
    order = ["L", "R"] + [f"p{i}" for i in range(1, pair.n1 + pair.n2 + 1)]
    return Configuration({l: points[l] for l in order}, circle)


def _trivial(pair: StaircasePair) -> Configuration:
    # one side empty: L = (-1, 0), R = (1, 0), the rest on one semicircle
    n = pair.n1 + pair.n2
    upper = pair.n2 == 0
    circle = {"L": CirclePoint(INF), "R": CirclePoint(Fraction(0))}
    for i in range(1, n + 1):
        w = Fraction(i, n + 1)
        t = _t_of_w(w)
        circle[f"p{i}"] = CirclePoint(t if upper else -1 / t)
    return Configuration.build(circle=circle)


def inscribe_staircase(pair: StaircasePair, push_out: bool = True, start: int = 2) -> Configuration:
    """Inscribed configuration (labels L, R, p1..pn) with representation ``pair``.

    With ``push_out=False`` L and R stay at (-1/2, 0) and (1/2, 0).  Every
    free choice takes the fraction 1/start of its interval, moving on to
    1/(start+1), ... if general position fails.
    """
    if not validate_staircase(pair):
        raise InvalidPair(f"not a staircase pair: {pair}")
    if (pair.n1 == 0 or pair.n2 == 0) and push_out:
        return _trivial(pair)
    if start < 2:
        raise ValueError("start must be at least 2")
    k = start
    while True:
        cfg = _realize(_plan(pair, Fraction(1, k)), push_out)
        if in_general_position(cfg):
            return cfg
        k += 1  # finitely many bad fractions per interval


def check_inscribed(config: Configuration) -> bool:
    """Every extreme point carries an exact circle parameter."""
    return all(l in config.circle for l in extreme_labels(config))
