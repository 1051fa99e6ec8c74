"""Command-line interface.

Exit codes: 0 success or geodesic exists, 1 geodesic does not exist, 2 usage
error, 3 marginal, 4 numeric or domain failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import bounds as B
from . import search as S
from .errors import DomainError, GeometryError, NoBracket
from .euclid_dev import GeodesicClass
from .render import render_euclid, render_sphere
from .tetra_model import ALPHA_MAX, ALPHA_MIN
from .unfolding import chord_test, unfold

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_MARGINAL, EXIT_FAIL = 0, 1, 2, 3, 4
MAX_SUM_GUARD = 20
SAMPLE_FRACTIONS = (0.25, 0.5, 0.75)

SURVEY_HELP = """CSV columns:
  p, q             the class
  alpha1           guaranteed-existence angle (empty when degenerate)
  alpha2           nonexistence angle (empty when undefined)
  alpha_star       measured critical angle (empty for (0,1))
  L_at_25, L_at_50, L_at_75
                   geodesic length at pi/3 + f (alpha_star - pi/3), f = 0.25, 0.5, 0.75
                   (alpha_star taken as 2pi/3 for (0,1))
"""


def num(x):
    """Round to 12 significant digits; None stays None."""
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _text(x) -> str:
    return "none" if x is None else f"{x:.12g}"


def _class(parser, p: int, q: int) -> GeodesicClass:
    if p > q:
        p, q = q, p
    try:
        return GeodesicClass(p, q)
    except DomainError as e:
        parser.error(str(e))


def _alpha(parser, value: float, deg: bool) -> float:
    alpha = math.radians(value) if deg else value
    if not ALPHA_MIN < alpha < ALPHA_MAX:
        parser.error(f"alpha={value} outside (pi/3, 2pi/3)")
    return alpha


def bounds_record(cls: GeodesicClass) -> dict:
    r = B.bound_report(cls)
    return {
        "p": cls.p, "q": cls.q,
        "alpha1": num(r.alpha1), "alpha1_formal": num(r.alpha1_formal), "alpha2": num(r.alpha2),
        "degenerate_reason": r.degenerate_reason, "note": r.note, "ordered": r.ordered,
    }


def cmd_bounds(args, parser) -> int:
    rec = bounds_record(_class(parser, args.p, args.q))
    if args.json:
        print(dumps(rec))
        return EXIT_OK
    print(f"class ({rec['p']},{rec['q']})")
    print(f"  alpha2 (nonexistence): {_text(rec['alpha2'])}")
    a1 = _text(rec["alpha1"]) if rec["alpha1"] is not None else f"degenerate ({rec['degenerate_reason']})"
    print(f"  alpha1 (existence):    {a1}")
    print(f"  alpha1 formal ratio:   {_text(rec['alpha1_formal'])}")
    if rec["note"]:
        print(f"  note: {rec['note']}")
    return EXIT_OK


def exists_record(cls: GeodesicClass, alpha: float) -> dict:
    res = chord_test(unfold(alpha, cls))
    w = res.witness_violation
    return {
        "p": cls.p, "q": cls.q, "alpha": num(alpha), "status": res.status,
        "length": num(res.length), "min_vertex_clearance": num(res.min_vertex_clearance),
        "closure_error": num(res.closure_error), "in_hemisphere": res.in_hemisphere,
        "witness_violation": None if w is None else {"vertex": w[0], "clearance": num(w[1])},
        "crossings": [{"edge": a + b, "parameter": num(t)} for (a, b), t in res.crossings],
    }


def cmd_exists(args, parser) -> int:
    cls = _class(parser, args.p, args.q)
    rec = exists_record(cls, _alpha(parser, args.alpha, args.deg))
    if args.json:
        print(dumps(rec))
    else:
        print(f"class ({cls.p},{cls.q}) at alpha={_text(rec['alpha'])}: {rec['status']}")
        print(f"  length: {_text(rec['length'])}")
        print(f"  min vertex clearance: {_text(rec['min_vertex_clearance'])}")
        if rec["witness_violation"]:
            w = rec["witness_violation"]
            print(f"  witness: vertex {w['vertex']}, signed clearance {_text(w['clearance'])}")
        print("  k  edge  parameter")
        for k, c in enumerate(rec["crossings"]):
            print(f"  {k:<2d} {c['edge']}  {_text(c['parameter'])}")
    return {S.YES: EXIT_OK, S.NO: EXIT_NO, S.MARGINAL: EXIT_MARGINAL}[rec["status"]]


def critical_record(cls: GeodesicClass, tol: float) -> dict:
    r = S.critical_alpha(cls, tol)
    rep = B.bound_report(cls)
    lower = rep.alpha1 if rep.alpha1 is not None else rep.alpha1_formal
    ok = (lower is None or lower <= r.alpha_star + tol) and (rep.alpha2 is None or r.alpha_star <= rep.alpha2 + tol)
    return {
        "p": cls.p, "q": cls.q, "alpha_star": num(r.alpha_star), "bracket": [num(r.bracket[0]), num(r.bracket[1])],
        "iterations": r.iterations, "monotone_verified": r.monotone_verified,
        "alpha1": num(rep.alpha1), "alpha1_formal": num(rep.alpha1_formal), "alpha2": num(rep.alpha2),
        "sandwich": ok,
    }


def cmd_critical(args, parser) -> int:
    cls = _class(parser, args.p, args.q)
    if args.tol < 1e-9:
        parser.error("--tol must be at least 1e-9")
    rec = critical_record(cls, args.tol)
    if args.json:
        print(dumps(rec))
        return EXIT_OK
    print(f"class ({cls.p},{cls.q}): alpha* = {_text(rec['alpha_star'])}")
    print(f"  bracket: [{_text(rec['bracket'][0])}, {_text(rec['bracket'][1])}] after {rec['iterations']} bisections")
    print(f"  single transition in scan: {'yes' if rec['monotone_verified'] else 'no'}")
    print(f"  bounds: alpha1 {_text(rec['alpha1'])} (formal {_text(rec['alpha1_formal'])}), alpha2 {_text(rec['alpha2'])}")
    print(f"  sandwich holds: {'yes' if rec['sandwich'] else 'no'}")
    return EXIT_OK


def _length_at(cls: GeodesicClass, alpha: float):
    res = chord_test(unfold(alpha, cls))
    return res.length if res.exists else None


def survey_records(max_sum: int, tol: float, workers: int | None) -> tuple[list[dict], bool]:
    rows = S.survey(max_sum, tol, workers)
    out = []
    for r in rows:
        top = ALPHA_MAX if r.alpha_star is None else r.alpha_star
        rec = {
            "p": r.cls.p, "q": r.cls.q,
            "alpha1": num(r.bounds.alpha1), "alpha2": num(r.bounds.alpha2), "alpha_star": num(r.alpha_star),
        }
        for f in SAMPLE_FRACTIONS:
            rec[f"L_at_{int(f * 100)}"] = num(_length_at(r.cls, ALPHA_MIN + f * (top - ALPHA_MIN)))
        out.append(rec)
    best = S.max_alpha_star_by_sum(rows)
    sums = sorted(s for s in best if s >= 3)
    trend = all(best[a] > best[b] for a, b in zip(sums, sums[1:]))
    return out, trend


CSV_KEYS = ["p", "q", "alpha1", "alpha2", "alpha_star", "L_at_25", "L_at_50", "L_at_75"]


def cmd_survey(args, parser) -> int:
    if not 2 <= args.max_sum <= MAX_SUM_GUARD:
        parser.error(f"--max-sum must lie in [2, {MAX_SUM_GUARD}]")
    recs, trend = survey_records(args.max_sum, args.tol, args.workers)
    trend_line = f"max alpha_star strictly decreasing in p+q: {'yes' if trend else 'no'}"
    if args.json:
        print(dumps({"rows": recs, "trend_decreasing": trend}))
    elif args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(CSV_KEYS)
        for r in recs:
            w.writerow(["" if r[k] is None else repr(r[k]) for k in CSV_KEYS])
        print(trend_line, file=sys.stderr)
    else:
        print(f"{'class':<8} {'alpha1':>15} {'alpha2':>15} {'alpha_star':>15}")
        for r in recs:
            print(f"({r['p']},{r['q']})".ljust(8)
                  + "".join(f" {_text(r[k]):>15}" for k in ("alpha1", "alpha2", "alpha_star")))
        print(trend_line)
    return EXIT_OK


def cmd_render(args, parser) -> int:
    cls = _class(parser, args.p, args.q)
    if args.mode == "euclid":
        svg = render_euclid(cls)
    else:
        svg = render_sphere(cls, _alpha(parser, args.alpha, args.deg))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tetrageo",
        description="Simple closed geodesics on regular tetrahedra in spherical space. "
                    "Angles are radians unless --deg is given.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def pq(p):
        p.add_argument("p", type=int)
        p.add_argument("q", type=int)

    p = sub.add_parser("bounds", help="analytic existence and nonexistence angles")
    pq(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("exists", help="test existence at one face angle")
    pq(p)
    p.add_argument("alpha", type=float)
    p.add_argument("--deg", action="store_true", help="alpha in degrees")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_exists)

    p = sub.add_parser("critical", help="locate the critical face angle")
    pq(p)
    p.add_argument("--tol", type=float, default=S.DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("survey", help="critical angles for all classes up to a size",
                       epilog=SURVEY_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--max-sum", type=int, default=6)
    p.add_argument("--tol", type=float, default=S.DEFAULT_TOL)
    p.add_argument("--workers", type=int, default=None, help="process pool size")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("render", help="write an SVG of a development")
    pq(p)
    p.add_argument("alpha", type=float, help="face angle (ignored in euclid mode)")
    p.add_argument("--mode", choices=("euclid", "sphere-gnomonic"), default="sphere-gnomonic")
    p.add_argument("--deg", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (NoBracket, GeometryError, DomainError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
