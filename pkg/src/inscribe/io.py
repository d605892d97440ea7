"""Text formats for point sets and chirotopes.

Points file::

    # inscribe-points v1
    a1 24/25 7/25 B t=1/7
    d1 1/3 -1/5

Each record is ``label x y [B] [t=num/den]``.  ``B`` marks a label required
on the circle; ``t=`` carries the exact circle parameter (``t=1/0`` is
(-1, 0)).  Chirotope file::

    # inscribe-chi v1
    n=4
    labels=a b c d
    +-++

The ``labels=`` line is optional; without it labels are ``0 .. n-1``.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .geometry import INF, CirclePoint, Configuration, GeometryError, Point, circle_embed
from .order_type import Chirotope

POINTS_HEADER = "# inscribe-points v1"
CHI_HEADER = "# inscribe-chi v1"


class FormatError(ValueError):
    pass


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}") from exc


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _param(text: str):
    num, _, den = text.partition("/")
    if den.strip() == "0":
        if num.strip() in ("1", "+1"):
            return INF
        raise FormatError(f"bad circle parameter {text!r}")
    return _frac(text)


def _lines(text: str, header: str) -> list[str]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != header:
        raise FormatError(f"missing header {header!r}")
    out = []
    for raw in lines[1:]:
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def points_to_text(cfg: Configuration) -> str:
    out = [POINTS_HEADER]
    for lbl, p in cfg.points.items():
        rec = [lbl, _fmt(p.x), _fmt(p.y)]
        if lbl in cfg.marked:
            rec.append("B")
        if lbl in cfg.circle:
            t = cfg.circle[lbl].t
            rec.append("t=1/0" if t is INF else f"t={_fmt(t)}")
        out.append(" ".join(rec))
    return "\n".join(out) + "\n"


def points_from_text(text: str) -> Configuration:
    points, circle, marked = {}, {}, set()
    for line in _lines(text, POINTS_HEADER):
        fields = line.split()
        if len(fields) < 3:
            raise FormatError(f"record needs label, x and y: {line!r}")
        lbl = fields[0]
        if lbl in points:
            raise FormatError(f"duplicate label {lbl!r}")
        p = Point(_frac(fields[1]), _frac(fields[2]))
        for flag in fields[3:]:
            if flag == "B":
                marked.add(lbl)
            elif flag.startswith("t="):
                c = CirclePoint(_param(flag[2:]))
                if circle_embed(c) != p:
                    raise FormatError(f"label {lbl!r}: coordinates differ from t")
                circle[lbl] = c
            else:
                raise FormatError(f"unknown flag {flag!r}")
        points[lbl] = p
    try:
        return Configuration(points, circle, frozenset(marked))
    except GeometryError as exc:
        raise FormatError(str(exc)) from exc


def chirotope_to_text(chi: Chirotope) -> str:
    out = [CHI_HEADER, f"n={chi.n}"]
    if tuple(chi.labels) != tuple(str(i) for i in range(chi.n)):
        out.append("labels=" + " ".join(map(str, chi.labels)))
    out.append(chi.to_text())
    return "\n".join(out) + "\n"


def chirotope_from_text(text: str) -> Chirotope:
    lines = _lines(text, CHI_HEADER)
    if not lines or not lines[0].startswith("n="):
        raise FormatError("missing n= line")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise FormatError(f"bad n line {lines[0]!r}") from exc
    rest = lines[1:]
    labels = tuple(str(i) for i in range(n))
    if rest and rest[0].startswith("labels="):
        labels = tuple(rest[0][len("labels="):].split())
        rest = rest[1:]
        if len(labels) != n:
            raise FormatError(f"expected {n} labels")
    signs = "".join(rest)
    if len(signs) != comb(n, 3):
        raise FormatError(f"expected {comb(n, 3)} signs, got {len(signs)}")
    table = {"+": 1, "-": -1, "0": 0}
    if any(ch not in table for ch in signs):
        raise FormatError("signs must be +, - or 0")
    try:
        return Chirotope(labels, tuple(table[ch] for ch in signs))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
