"""Heuristic search for inscribed realizations, with exact snap-and-verify.

Circle-constrained points are carried by angles, the rest by planar
coordinates.  Each restart runs a monotone local search on the violation
energy, then snaps every coordinate to a rational and checks the chirotope
exactly.  A NotFound verdict is evidence only, never a proof.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
from numba import njit

from .geometry import INF, CirclePoint, Configuration, Point, in_general_position
from .order_type import Chirotope, chirotope


class InvalidB(ValueError):
    pass


class NotConvexInterior(ValueError):
    pass


def default_seed() -> int:
    return int(os.environ.get("INSCRIBE_SEED", "0"))


@dataclass(frozen=True)
class SearchBudget:
    restarts: int = 200
    iterations: int = 5000  # sweeps over all variables per restart
    seed: int = field(default_factory=default_seed)
    margin: float = 1e-7
    snap_depth: int = 20
    swap_prob: float = 0.1

    def __post_init__(self):
        if self.restarts < 1 or self.iterations < 1 or self.snap_depth < 1 or self.margin <= 0:
            raise ValueError("budget values must be positive")


@dataclass(frozen=True)
class SearchStats:
    best_energy: float
    restarts_used: int
    seed: int
    winning_restart: int | None = None


@dataclass(frozen=True)
class InscribedExact:
    config: Configuration
    stats: SearchStats
    found = True


@dataclass(frozen=True)
class NotFound:
    """No witness within budget.  Evidence, not a proof of impossibility."""

    stats: SearchStats
    found = False


Verdict = InscribedExact | NotFound


# -- numeric kernel -------------------------------------------------------------


@njit(cache=True)
def _viol(T, xy, i, j, k, margin):
    det = (xy[j, 0] - xy[i, 0]) * (xy[k, 1] - xy[i, 1]) - (xy[j, 1] - xy[i, 1]) * (xy[k, 0] - xy[i, 0])
    v = margin - T[i, j, k] * det
    return v if v > 0.0 else 0.0


@njit(cache=True)
def _point_energy(T, xy, i, margin):
    n = xy.shape[0]
    e = 0.0
    for j in range(n):
        if j == i:
            continue
        for k in range(j + 1, n):
            if k == i:
                continue
            e += _viol(T, xy, i, j, k, margin)
    return e


@njit(cache=True)
def _total_energy(T, xy, margin):
    n = xy.shape[0]
    e = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                e += _viol(T, xy, i, j, k, margin)
    return e


@njit(cache=True)
def _restart(T, circ_order, free, bound, init_radius, seed, iters, margin, swap_prob):
    """One seeded restart; returns (angles, xy, energy).

    ``circ_order`` lists the circle-constrained indices in their required ccw
    order; ``free`` lists the others.  Free points stay inside radius
    ``bound`` (no bound when ``bound <= 0``).
    """
    np.random.seed(seed)
    n = T.shape[0]
    m = circ_order.shape[0]
    xy = np.zeros((n, 2))
    ang = np.zeros(n)
    if m > 0:
        raw = np.sort(np.random.random(m) * 2.0 * np.pi)
        for r in range(m):
            i = circ_order[r]
            ang[i] = raw[r]
            xy[i, 0] = np.cos(raw[r])
            xy[i, 1] = np.sin(raw[r])
    for r in range(free.shape[0]):
        i = free[r]
        rad = init_radius * np.sqrt(np.random.random())
        phi = np.random.random() * 2.0 * np.pi
        xy[i, 0] = rad * np.cos(phi)
        xy[i, 1] = rad * np.sin(phi)
    E = _total_energy(T, xy, margin)
    step_a = np.full(n, 0.3)
    step_x = np.full(n, 0.2)
    for it in range(iters):
        if E == 0.0:
            break
        for r in range(m):
            i = circ_order[r]
            old_e = _point_energy(T, xy, i, margin)
            ox, oy, oa = xy[i, 0], xy[i, 1], ang[i]
            na = oa + step_a[i] * np.random.standard_normal()
            ang[i] = na
            xy[i, 0] = np.cos(na)
            xy[i, 1] = np.sin(na)
            new_e = _point_energy(T, xy, i, margin)
            if new_e <= old_e:
                E += new_e - old_e
                step_a[i] = min(step_a[i] * 1.3, 1.0)
            else:
                ang[i], xy[i, 0], xy[i, 1] = oa, ox, oy
                step_a[i] = max(step_a[i] * 0.8, 1e-7)
        for r in range(free.shape[0]):
            i = free[r]
            for c in range(2):
                old_e = _point_energy(T, xy, i, margin)
                ov = xy[i, c]
                xy[i, c] = ov + step_x[i] * np.random.standard_normal()
                if bound > 0.0 and xy[i, 0] * xy[i, 0] + xy[i, 1] * xy[i, 1] >= bound * bound:
                    xy[i, c] = ov
                    step_x[i] = max(step_x[i] * 0.8, 1e-7)
                    continue
                new_e = _point_energy(T, xy, i, margin)
                if new_e <= old_e:
                    E += new_e - old_e
                    step_x[i] = min(step_x[i] * 1.3, 1.0)
                else:
                    xy[i, c] = ov
                    step_x[i] = max(step_x[i] * 0.8, 1e-7)
        if m >= 2 and np.random.random() < swap_prob:
            a = circ_order[np.random.randint(m)]
            b = circ_order[np.random.randint(m)]
            if a != b:
                ang[a], ang[b] = ang[b], ang[a]
                for i in (a, b):
                    xy[i, 0] = np.cos(ang[i])
                    xy[i, 1] = np.sin(ang[i])
                new_total = _total_energy(T, xy, margin)
                if new_total <= E:
                    E = new_total
                else:
                    ang[a], ang[b] = ang[b], ang[a]
                    for i in (a, b):
                        xy[i, 0] = np.cos(ang[i])
                        xy[i, 1] = np.sin(ang[i])
        if it % 64 == 63:
            # resync against drift from incremental updates
            E = _total_energy(T, xy, margin)
    return ang, xy, _total_energy(T, xy, margin)


# -- exact snapping -------------------------------------------------------------


def _angle_param(theta: float, max_den: int):
    h = theta / 2
    s, c = math.sin(h), math.cos(h)
    if abs(s) <= abs(c):
        return Fraction(s / c).limit_denominator(max_den)
    inv = Fraction(c / s).limit_denominator(max_den)
    return INF if inv == 0 else 1 / inv


def _dyadic(v: float, bits: int) -> Fraction:
    return Fraction(round(v * (1 << bits)), 1 << bits)


def _snap(labels, circ_set, ang, xy, target: Chirotope, bound_disk: bool, depth: int) -> Configuration | None:
    """Try rational snaps of increasing precision; return the first exact witness."""
    for level in range(1, depth + 1):
        max_den = 1 << (2 * level + 2)
        bits = 2 * level + 4
        points, circle = {}, {}
        for i, lbl in enumerate(labels):
            if lbl in circ_set:
                circle[lbl] = CirclePoint(_angle_param(float(ang[i]), max_den))
            else:
                points[lbl] = Point(_dyadic(float(xy[i, 0]), bits), _dyadic(float(xy[i, 1]), bits))
        cfg = Configuration.build(points, circle)
        cfg = Configuration({l: cfg[l] for l in labels}, cfg.circle, frozenset(circ_set))
        if bound_disk and any(cfg[l].norm2() > 1 for l in labels if l not in circ_set):
            continue
        if chirotope(cfg) == target:
            return cfg
    return None


def _run(target: Chirotope, circ: list, budget: SearchBudget, bounded: bool, init_radius: float) -> Verdict:
    labels = list(target.labels)
    idx = target.index
    T = np.ascontiguousarray(target.tensor, dtype=np.float64)
    circ_order = np.array([idx[l] for l in circ], dtype=np.int64)
    free = np.array([i for i, l in enumerate(labels) if l not in set(circ)], dtype=np.int64)
    bound = 1.0 if bounded else 0.0
    best = math.inf
    for r in range(budget.restarts):
        seed = int(np.random.SeedSequence([budget.seed, r]).generate_state(1)[0])
        ang, xy, E = _restart(T, circ_order, free, bound, init_radius,
                              seed, budget.iterations, budget.margin, budget.swap_prob)
        best = min(best, E)
        if E == 0.0:
            cfg = _snap(labels, set(circ), ang, xy, target, bounded, budget.snap_depth)
            if cfg is not None:
                return InscribedExact(cfg, SearchStats(0.0, r + 1, budget.seed, r))
    return NotFound(SearchStats(best, budget.restarts, budget.seed))


def violation_energy(positions: Mapping, target: Chirotope, margin: float = 1e-7) -> float:
    """Sum over triples of max(0, margin - sign * det).

    ``positions`` maps each label to a float angle (a point on the unit
    circle) or to an (x, y) pair.
    """
    xy = np.zeros((target.n, 2))
    for i, lbl in enumerate(target.labels):
        v = positions[lbl]
        if isinstance(v, (int, float)):
            xy[i] = (math.cos(v), math.sin(v))
        else:
            xy[i] = (float(v[0]), float(v[1]))
    return float(_total_energy(np.ascontiguousarray(target.tensor, dtype=np.float64), xy, margin))


def search_inscription(target: Chirotope, B: Iterable, budget: SearchBudget | None = None) -> Verdict:
    """Look for a realization in the unit disk with every label of B on the circle."""
    budget = budget or SearchBudget()
    if not target.is_simple():
        raise ValueError("target chirotope must be simple")
    B = set(B)
    extreme = set(target.extreme())
    bad = B - extreme
    if bad:
        raise InvalidB(f"labels {sorted(bad)} are not extreme")
    circ = [l for l in target.hull_order() if l in B]
    return _run(target, circ, budget, bounded=True, init_radius=1.0)


def search_interior_on_circle(target: Chirotope, I: Iterable, budget: SearchBudget | None = None) -> Verdict:
    """Look for a realization with the interior labels I on the unit circle."""
    budget = budget or SearchBudget()
    if not target.is_simple():
        raise ValueError("target chirotope must be simple")
    I = set(I)
    if I != set(target.interior()):
        raise NotConvexInterior("I must be exactly the interior points")
    sub = target.restrict([l for l in target.labels if l in I])
    if len(I) >= 3 and sub.interior():
        raise NotConvexInterior("interior points are not in convex position")
    circ = sub.hull_order() if len(I) >= 3 else sorted(I)
    return _run(target, circ, budget, bounded=False, init_radius=3.0)


def verify_witness(cfg: Configuration, target: Chirotope, on_circle: Iterable) -> bool:
    """Exact re-check of a witness: chirotope, circle flags and general position."""
    on_circle = set(on_circle)
    if tuple(cfg.labels) != tuple(target.labels):
        cfg = Configuration({l: cfg[l] for l in target.labels}, cfg.circle, cfg.marked)
    return (
        chirotope(cfg) == target
        and all(l in cfg.circle for l in on_circle)
        and in_general_position(cfg)
    )
