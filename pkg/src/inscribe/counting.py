"""Closed-form counts and the census of order types with at most two interior points."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial, pi, sqrt
from typing import Iterator

from sympy import divisors, totient

from .geometry import interior_labels
from .order_type import CONVENTIONS, ORIENTED, canonical_form, chirotope
from .staircase import StaircasePair, inscribe_staircase


def hyperfactorial(n: int) -> int:
    """H(n) = 1! 2! ... (n-1)!, with H(0) = H(1) = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out, f = 1, 1
    for k in range(1, n):
        f *= k
        out *= f
    return out


def lozenge_count(a: int, b: int, c: int) -> int:
    """Lozenge tilings of the hexagon with sides a, b, c (MacMahon)."""
    H = hyperfactorial
    num = H(a + b + c) * H(a) * H(b) * H(c)
    den = H(a + b) * H(a + c) * H(b + c)
    q, r = divmod(num, den)
    assert r == 0
    return q


def _monotone(length: int, top: int):
    return combinations_with_replacement(range(top + 1), length)


def enumerate_staircase_pairs(n1: int, n2: int) -> Iterator[StaircasePair]:
    """Every staircase pair of degree (n1, n2), lexicographic in (psi_L, psi_R)."""
    if n1 < 0 or n2 < 0:
        return
    rights = list(_monotone(n1, n2))
    for L in _monotone(n1, n2):
        for R in rights:
            if all(r <= l for l, r in zip(L, R)):
                yield StaircasePair(n1, n2, L, R)


def two_interior_pair_total(n: int) -> int:
    """Sum of lozenge_count(2, m, n - m) over m; equals binom(2n+2, n) / (n+1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = sum(lozenge_count(2, m, n - m) for m in range(n + 1))
    assert total * (n + 1) == comb(2 * n + 2, n)
    return total


def asymptotic_ratio(value: int, n: int) -> float:
    """value / (4^(n+1) / (sqrt(pi) n^(3/2))); a finite sanity check only."""
    return value / (4 ** (n + 1) / (sqrt(pi) * n ** 1.5))


def conowheel_count(n: int) -> int:
    """Order types of conowheel sets: (1/4n) sum over odd k | n of phi(k) 2^(n/k) + 2^floor((n-3)/2)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    s = sum(int(totient(k)) * 2 ** (n // k) for k in divisors(n) if k % 2 == 1)
    val = Fraction(s, 4 * n) + 2 ** ((n - 3) // 2)
    assert val.denominator == 1
    return int(val)


@dataclass
class CountReport:
    n: int
    convention: str
    by_interior: tuple  # N_0, N_1, N_2
    pairs_by_interior: tuple  # L_0, L_1, L_2
    staircase_pair_total: int
    other_convention: dict = field(default_factory=dict)  # convention -> N
    by_convention: dict = field(default_factory=dict)  # convention -> (N_0, N_1, N_2)
    codes: dict = field(default_factory=dict, repr=False)  # code -> first pair

    @property
    def N(self) -> int:
        return sum(self.by_interior)

    def inequalities(self) -> dict:
        N0, N1, N2 = self.by_interior
        L0, L1, L2 = self.pairs_by_interior
        n = self.n
        return {
            "L0<=N0*n(n-1)": L0 <= N0 * n * (n - 1),
            "L1<=N1*2n": L1 <= N1 * 2 * n,
            "L2<=2N2": L2 <= 2 * N2,
        }

    def to_text(self) -> str:
        N0, N1, N2 = self.by_interior
        L0, L1, L2 = self.pairs_by_interior
        rows = [
            ("n", self.n),
            ("size", self.n + 2),
            ("convention", self.convention),
            ("N", self.N),
            ("N0", N0),
            ("N1", N1),
            ("N2", N2),
            ("L0", L0),
            ("L1", L1),
            ("L2", L2),
            ("staircase_pair_total", self.staircase_pair_total),
        ]
        for conv, val in sorted(self.other_convention.items()):
            rows.append((f"N[{conv}]", val))
        for name, ok in self.inequalities().items():
            rows.append((name, str(ok).lower()))
        if self.n >= 1:
            rows.append(("asymptotic_ratio", f"{asymptotic_ratio(self.N, self.n):.6f}"))
        return "".join(f"{k}={v}\n" for k, v in rows)


def census_records(n: int):
    """(pair, interior count, chirotope) for every staircase pair of total size n."""
    for m in range(n + 1):
        for pair in enumerate_staircase_pairs(m, n - m):
            cfg = inscribe_staircase(pair)
            yield pair, len(interior_labels(cfg)), chirotope(cfg)


def enumerate_order_types_two_interior(n: int, convention: str = ORIENTED) -> CountReport:
    """Census of simple order types of size n + 2 with at most two interior points.

    Every staircase pair is realized, canonicalized and deduplicated.  The
    report carries the count under both equivalence conventions.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    seen = {c: {} for c in CONVENTIONS}
    L = [0, 0, 0]
    total = 0
    for pair, k, chi in census_records(n):
        total += 1
        L[k] += 1
        for c in CONVENTIONS:
            seen[c].setdefault(canonical_form(chi, c), (pair, k))
    split = {}
    for c in CONVENTIONS:
        N = [0, 0, 0]
        for _, k in seen[c].values():
            N[k] += 1
        split[c] = tuple(N)
    other = {c: len(seen[c]) for c in CONVENTIONS}
    return CountReport(n, convention, split[convention], tuple(L), total, other, by_convention=split, codes=seen[convention])


def conowheel_census(n: int, convention: str = ORIENTED) -> int:
    """Distinct order types of size n + 1 with at most one interior point."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return conowheel_from_report(enumerate_order_types_two_interior(n - 1, convention), convention)


def conowheel_from_report(report: CountReport, convention: str) -> int:
    """N_0 + N_1 of a census report under ``convention``."""
    N = report.by_convention[convention]
    return N[0] + N[1]
