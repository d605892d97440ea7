"""Command line entry point: ``inscribe <command> ...``.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 search found no
witness.  A file argument of ``-`` reads stdin.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import counting, families, io, mobius, order_type, search, staircase
from .geometry import GeometryError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NOT_FOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _points(path: str):
    return io.points_from_text(_read(path))


def _chi_or_points(path: str) -> order_type.Chirotope:
    text = _read(path)
    if text.lstrip().startswith(io.CHI_HEADER):
        return io.chirotope_from_text(text)
    return order_type.chirotope(io.points_from_text(text))


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}") from exc


# -- commands ---------------------------------------------------------------------


def cmd_gen(args, out):
    eps = None if args.eps is None else _frac(args.eps)
    kind, rest = args.family, args.params
    need = {"pn": 1, "star": 1, "nonpascal": 0, "gadget": 0, "pnminus": 2}
    if len(rest) != need[kind]:
        raise UsageError(f"gen {kind} takes {need[kind]} argument(s)")
    if kind == "pn":
        cfg = families.make_pn(families.PnParams(int(rest[0]), eps))
    elif kind == "star":
        sigma = [int(v) for v in rest[0].replace(",", " ").split()]
        cfg = families.make_star(sigma, eps)
    elif kind == "nonpascal":
        cfg = families.make_non_pascal() if eps is None else families.make_non_pascal(eps)
    elif kind == "gadget":
        cfg = families.make_interior_circle_gadget()
    else:
        cfg = families.make_pn_minus(int(rest[0]), rest[1], eps)
    out.write(io.points_to_text(cfg))
    return EXIT_OK


def cmd_chi(args, out):
    out.write(io.chirotope_to_text(_chi_or_points(args.file)))
    return EXIT_OK


def cmd_repr(args, out):
    cfg = _points(args.file)
    out.write(staircase.function_representation(cfg, args.L, args.R).to_text())
    return EXIT_OK


def cmd_inscribe_pair(args, out):
    pair = staircase.StaircasePair.from_text(_read(args.file))
    out.write(io.points_to_text(staircase.inscribe_staircase(pair, push_out=not args.no_push_out)))
    return EXIT_OK


def cmd_count(args, out):
    kind, vals = args.kind, [int(v) for v in args.values]
    need = {"conowheel": 1, "lozenge": 3, "pairs": 1, "census": 1}
    if len(vals) != need[kind]:
        raise UsageError(f"count {kind} takes {need[kind]} integer(s)")
    if kind == "conowheel":
        out.write(f"{counting.conowheel_count(vals[0])}\n")
    elif kind == "lozenge":
        out.write(f"{counting.lozenge_count(*vals)}\n")
    elif kind == "pairs":
        n = vals[0]
        for m in range(n + 1):
            k = sum(1 for _ in counting.enumerate_staircase_pairs(m, n - m))
            out.write(f"degree={m},{n - m} pairs={k}\n")
        out.write(f"total={counting.two_interior_pair_total(n)}\n")
    else:
        out.write(counting.enumerate_order_types_two_interior(vals[0], args.convention).to_text())
    return EXIT_OK


def cmd_polygons(args, out):
    cfg = _points(args.file)
    crossings = cfg.coords()
    polys = mobius.inscribed_polygons(crossings)
    _, _, f = mobius.crossing_map(crossings)
    cls = mobius.classify(f)
    out.write(f"polygons={len(polys)}\n")
    out.write(f"kind={cls.kind}\n")
    out.write(f"field={cls.field}\n")
    if cls.multiplier is not None:
        out.write(f"multiplier_minus_one_sign={(cls.multiplier - 1).sign()}\n")
    for i, poly in enumerate(polys, start=1):
        out.write(f"polygon{i}=" + " ".join(str(v) for v in poly) + "\n")
    return EXIT_OK


def cmd_contains(args, out):
    host = _chi_or_points(args.host)
    pattern = _chi_or_points(args.pattern)
    hit = order_type.contains_suborder(host, pattern)
    if hit is None:
        out.write("none\n")
    else:
        out.write("".join(f"{k} -> {v}\n" for k, v in hit.items()))
    return EXIT_OK


def cmd_search(args, out):
    chi = _chi_or_points(args.file)
    kw = {"restarts": args.restarts, "iterations": args.iters}
    if args.seed is not None:
        kw["seed"] = args.seed
    budget = search.SearchBudget(**kw)
    if args.B == "interior":
        verdict = search.search_interior_on_circle(chi, chi.interior(), budget)
    else:
        B = chi.extreme() if args.B == "hull" else args.B.replace(",", " ").split()
        verdict = search.search_inscription(chi, B, budget)
    st = verdict.stats
    if not verdict.found:
        out.write("verdict=NotFound\n")
        out.write("note=no witness within budget; evidence only, not a proof\n")
        out.write(f"restarts={st.restarts_used}\nseed={st.seed}\nbest_energy={st.best_energy:.6g}\n")
        return EXIT_NOT_FOUND
    header, body = io.points_to_text(verdict.config).split("\n", 1)
    out.write(f"{header}\n# verdict=InscribedExact restart={st.winning_restart} seed={st.seed}\n{body}")
    return EXIT_OK


def cmd_pascal(args, out):
    cfg = _points(args.file)
    if len(cfg) < 6:
        raise GeometryError("pascal needs six points")
    pts = cfg.coords()[:6]
    cs = families.pascal_points(pts)
    for i, c in enumerate(cs, start=1):
        out.write(f"c{i}={c.x} {c.y}\n")
    out.write(f"collinear={str(families.pascal_collinear(pts)).lower()}\n")
    return EXIT_OK


def cmd_canon(args, out):
    chi = _chi_or_points(args.file)
    out.write(order_type.canonical_form(chi, args.convention).hex() + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="inscribe", description="Exact tools for inscribed order types.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a family member as a points file")
    g.add_argument("family", choices=["pn", "star", "nonpascal", "gadget", "pnminus"])
    g.add_argument("params", nargs="*")
    g.add_argument("--eps", help="rational epsilon (push for nonpascal)")
    g.set_defaults(fn=cmd_gen)

    c = sub.add_parser("chi", help="chirotope of a points file")
    c.add_argument("file")
    c.set_defaults(fn=cmd_chi)

    r = sub.add_parser("repr", help="function representation for distinguished L, R")
    r.add_argument("file")
    r.add_argument("--L", required=True)
    r.add_argument("--R", required=True)
    r.set_defaults(fn=cmd_repr)

    ip = sub.add_parser("inscribe-pair", help="inscribed configuration for a staircase pair")
    ip.add_argument("file")
    ip.add_argument("--no-push-out", action="store_true", help="keep L and R inside the disk")
    ip.set_defaults(fn=cmd_inscribe_pair)

    ct = sub.add_parser("count", help="closed forms and the census")
    ct.add_argument("kind", choices=["conowheel", "lozenge", "pairs", "census"])
    ct.add_argument("values", nargs="+")
    ct.add_argument("--convention", choices=list(order_type.CONVENTIONS), default=order_type.ORIENTED)
    ct.set_defaults(fn=cmd_count)

    pg = sub.add_parser("polygons", help="inscribed polygons through crossing points")
    pg.add_argument("file")
    pg.set_defaults(fn=cmd_polygons)

    cn = sub.add_parser("contains", help="find a copy of a pattern order type")
    cn.add_argument("host")
    cn.add_argument("pattern")
    cn.set_defaults(fn=cmd_contains)

    s = sub.add_parser("search", help="heuristic search for an inscribed realization")
    s.add_argument("file", help="chirotope or points file")
    s.add_argument("--B", required=True, help="labels, 'hull', or 'interior'")
    s.add_argument("--restarts", type=int, default=200)
    s.add_argument("--iters", type=int, default=5000)
    s.add_argument("--seed", type=int, default=None, help="defaults to $INSCRIBE_SEED or 0")
    s.set_defaults(fn=cmd_search)

    pa = sub.add_parser("pascal", help="collinearity of the Pascal crossings of six points")
    pa.add_argument("file")
    pa.set_defaults(fn=cmd_pascal)

    cc = sub.add_parser("canon", help="canonical code as hex")
    cc.add_argument("file")
    cc.add_argument("--convention", choices=list(order_type.CONVENTIONS), default=order_type.ORIENTED)
    cc.set_defaults(fn=cmd_canon)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out)
    except UsageError as exc:
        print(f"inscribe: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, GeometryError) as exc:
        print(f"inscribe: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
