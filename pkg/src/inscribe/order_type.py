"""Chirotopes, canonical codes and subconfiguration search."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, cmp_to_key
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .geometry import Configuration, orient


class NotSimple(ValueError):
    pass


REFLECTION = "reflection"
ORIENTED = "oriented"
CONVENTIONS = (ORIENTED, REFLECTION)


def _triples(n: int):
    if n < 3:
        return np.zeros((0,), dtype=np.intp), np.zeros((0,), dtype=np.intp), np.zeros((0,), dtype=np.intp)
    t = np.array(list(combinations(range(n), 3)), dtype=np.intp)
    return t[:, 0], t[:, 1], t[:, 2]


@dataclass(frozen=True, eq=False)
class Chirotope:
    """Orientation signs of every triple ``i < j < k`` in lexicographic order."""

    labels: tuple
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("duplicate labels")
        if len(self.signs) != n * (n - 1) * (n - 2) // 6:
            raise ValueError(f"expected {n * (n - 1) * (n - 2) // 6} signs, got {len(self.signs)}")
        if any(s not in (-1, 0, 1) for s in self.signs):
            raise ValueError("signs must be -1, 0 or +1")

    def __eq__(self, other):
        return isinstance(other, Chirotope) and self.labels == other.labels and self.signs == other.signs

    def __hash__(self):
        return hash((self.labels, self.signs))

    @property
    def n(self) -> int:
        return len(self.labels)

    def is_simple(self) -> bool:
        return 0 not in self.signs

    @cached_property
    def tensor(self) -> np.ndarray:
        """Full antisymmetric ``n x n x n`` sign array."""
        n = self.n
        out = np.zeros((n, n, n), dtype=np.int8)
        i, j, k = _triples(n)
        s = np.asarray(self.signs, dtype=np.int8)
        for a, b, c, par in ((i, j, k, 1), (j, k, i, 1), (k, i, j, 1), (j, i, k, -1), (i, k, j, -1), (k, j, i, -1)):
            out[a, b, c] = par * s
        return out

    @cached_property
    def index(self) -> dict:
        return {l: i for i, l in enumerate(self.labels)}

    def sign(self, a, b, c) -> int:
        """Sign of an ordered triple of labels."""
        ix = self.index
        return int(self.tensor[ix[a], ix[b], ix[c]])

    def mirrored(self) -> "Chirotope":
        return Chirotope(self.labels, tuple(-s for s in self.signs))

    def restrict(self, labels: Sequence) -> "Chirotope":
        ix = self.index
        t = self.tensor
        idx = [ix[l] for l in labels]
        return Chirotope(tuple(labels), tuple(int(t[idx[a], idx[b], idx[c]]) for a, b, c in combinations(range(len(idx)), 3)))

    def relabeled(self, order: Sequence) -> "Chirotope":
        """Same order type, with labels listed in ``order``."""
        return self.restrict(order)

    @cached_property
    def containment_counts(self) -> np.ndarray:
        """For each point, how many triangles of other points contain it."""
        n = self.n
        t = self.tensor.astype(np.int16)
        counts = np.zeros(n, dtype=np.int64)
        for a, b, c in combinations(range(n), 3):
            s = t[a, b, c]
            if s == 0:
                continue
            inside = (t[a, b, :] == s) & (t[b, c, :] == s) & (t[c, a, :] == s)
            counts += inside
        return counts

    def interior(self) -> list:
        return [l for l, c in zip(self.labels, self.containment_counts) if c > 0]

    def extreme(self) -> list:
        return [l for l, c in zip(self.labels, self.containment_counts) if c == 0]

    def hull_order(self) -> list:
        """Extreme labels in ccw order (simple chirotopes only)."""
        ext = [self.index[l] for l in self.extreme()]
        t = self.tensor
        if len(ext) < 3:
            return [self.labels[i] for i in ext]
        nxt = {}
        for a in ext:
            for b in ext:
                if a != b and all(t[a, b, c] > 0 for c in range(self.n) if c not in (a, b)):
                    nxt[a] = b
        start = min(ext)
        order = [start]
        while len(order) < len(ext):
            order.append(nxt[order[-1]])
        return [self.labels[i] for i in order]

    def to_text(self) -> str:
        return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in self.signs)


def chirotope(config: Configuration) -> Chirotope:
    pts = config.coords()
    return Chirotope(tuple(config.labels), tuple(orient(pts[i], pts[j], pts[k]) for i, j, k in combinations(range(len(pts)), 3)))


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes

    def hex(self) -> str:
        return self.code.hex()

    def __str__(self):
        return self.hex()


def _cyclic_order_around(t: np.ndarray, p: int) -> list[int]:
    """Ccw cyclic order of all other points around ``p``."""
    n = t.shape[0]
    others = [q for q in range(n) if q != p]
    r0 = others[0]

    def cmp(x, y):
        return -int(t[p, x, y])

    upper = sorted((x for x in others[1:] if t[p, r0, x] > 0), key=cmp_to_key(cmp))
    lower = sorted((x for x in others[1:] if t[p, r0, x] < 0), key=cmp_to_key(cmp))
    return [r0] + upper + lower


def candidate_labelings(chi: Chirotope) -> list[list[int]]:
    """The 2 n (n-1) rotation-system labelings used for canonicalization."""
    t = chi.tensor
    n = chi.n
    out = []
    for p in range(n):
        cyc = _cyclic_order_around(t, p)
        m = len(cyc)
        for s in range(m):
            out.append([p] + cyc[s:] + cyc[:s])
            out.append([p] + [cyc[(s - r) % m] for r in range(m)])
    return out


def _min_code(tensor: np.ndarray, perms: np.ndarray) -> bytes:
    n = tensor.shape[0]
    i, j, k = _triples(n)
    vals = tensor[perms[:, i], perms[:, j], perms[:, k]]
    packed = np.packbits(vals > 0, axis=1)
    return min(row.tobytes() for row in packed)


def canonical_form(chi: Chirotope, convention: str = ORIENTED) -> CanonicalCode:
    """Lexicographically minimal sign string over all rotation-system labelings.

    Under the ``reflection`` convention the mirror image is canonicalized too
    and the smaller code wins.
    """
    if not chi.is_simple():
        raise NotSimple("canonical_form needs a simple chirotope")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    n = chi.n
    if n < 3:
        return CanonicalCode(bytes([n]))
    perms = np.array(candidate_labelings(chi), dtype=np.intp)
    best = _min_code(chi.tensor, perms)
    if convention == REFLECTION:
        # the mirror has the same rotation systems, reversed
        best = min(best, _min_code(-chi.tensor, perms))
    return CanonicalCode(n.to_bytes(2, "big") + best)


def same_order_type(a: Configuration | Chirotope, b: Configuration | Chirotope, convention: str = ORIENTED) -> bool:
    ca = a if isinstance(a, Chirotope) else chirotope(a)
    cb = b if isinstance(b, Chirotope) else chirotope(b)
    if ca.n != cb.n:
        return False
    return canonical_form(ca, convention) == canonical_form(cb, convention)


def find_isomorphism(a: Chirotope, b: Chirotope, allow_mirror: bool = False) -> dict | None:
    """Backtracking search for a sign-preserving bijection; independent of canonical_form."""
    if a.n != b.n:
        return None
    ta, tb = a.tensor, b.tensor
    if allow_mirror:
        hit = find_isomorphism(a, b)
        if hit is not None:
            return hit
        tb = -tb
    ca, cb = a.containment_counts, b.containment_counts
    if sorted(ca) != sorted(cb):
        return None
    n = a.n
    order = sorted(range(n), key=lambda x: -ca[x])
    image = [-1] * n
    used = [False] * n

    def ok(pos):
        x = order[pos]
        y = image[x]
        for u in range(pos):
            for v in range(u + 1, pos):
                xu, xv = order[u], order[v]
                if ta[xu, xv, x] != tb[image[xu], image[xv], y]:
                    return False
        return True

    def rec(pos):
        if pos == n:
            return True
        x = order[pos]
        for y in range(n):
            if used[y] or cb[y] != ca[x]:
                continue
            image[x] = y
            used[y] = True
            if ok(pos) and rec(pos + 1):
                return True
            used[y] = False
        image[x] = -1
        return False

    if rec(0):
        return {a.labels[x]: b.labels[image[x]] for x in range(n)}
    return None


def contains_suborder(host: Configuration | Chirotope, pattern: Chirotope) -> dict | None:
    """Injection of pattern labels into host labels preserving every triple sign.

    Candidates are pre-filtered by containment counts: a pattern point inside
    k pattern triangles can only map to a host point inside at least k host
    triangles.
    """
    h = host if isinstance(host, Chirotope) else chirotope(host)
    if pattern.n > h.n:
        return None
    tp, th = pattern.tensor, h.tensor
    cp, ch = pattern.containment_counts, h.containment_counts
    cands = {x: [y for y in range(h.n) if ch[y] >= cp[x]] for x in range(pattern.n)}
    if any(not c for c in cands.values()):
        return None
    order = sorted(range(pattern.n), key=lambda x: (len(cands[x]), -cp[x]))
    image = [-1] * pattern.n
    used = [False] * h.n

    def consistent(pos, y):
        x = order[pos]
        for u in range(pos):
            xu = order[u]
            yu = image[xu]
            row_p = tp[xu, :, x]
            row_h = th[yu, :, y]
            for v in range(u + 1, pos):
                xv = order[v]
                if row_p[xv] != row_h[image[xv]]:
                    return False
        return True

    def rec(pos):
        if pos == pattern.n:
            return True
        x = order[pos]
        for y in cands[x]:
            if used[y]:
                continue
            if consistent(pos, y):
                image[x] = y
                used[y] = True
                if rec(pos + 1):
                    return True
                used[y] = False
                image[x] = -1
        return False

    if rec(0):
        return {pattern.labels[x]: h.labels[image[x]] for x in range(pattern.n)}
    return None
