"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical violation was found, 2 usage
or input error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from . import bounds, lemmas
from .grid import GridSpec
from .means import DomainError, PositivePair, kind_symbol, mean_value, parse_kind

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


def _fmt(v: float) -> str:
    """Human-readable: 17 significant digits."""
    return f"{v:.17g}"


def _short(v: float) -> str:
    """Machine-readable: shortest representation that round-trips."""
    return repr(float(v))


# ---------------------------------------------------------------------------
# argument types

def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None
    if not math.isfinite(v) or v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive and finite, got {text!r}")
    return v


def _unit_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text!r}")
    return v


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return v


def _above_one(text: str) -> float:
    v = _positive_float(text)
    if v <= 1.0:
        raise argparse.ArgumentTypeError(f"must exceed 1, got {text!r}")
    return v


def _mean(text: str):
    try:
        return parse_kind(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _mean_list(text: str):
    return [_mean(part) for part in text.split(",") if part.strip()]


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("grid")
    g.add_argument("--near-count", type=_count, default=128, help="linear points in (1, t_near] (default 128)")
    g.add_argument("--far-count", type=_count, default=512, help="geometric points in (t_near, t_max] (default 512)")
    g.add_argument("--t-near", type=_above_one, default=1.01, help="end of the linear refinement (default 1.01)")
    g.add_argument("--t-max", type=_above_one, default=1e8, help="largest t sampled (default 1e8)")


def _grid_from(args: argparse.Namespace) -> GridSpec:
    return GridSpec(near_count=args.near_count, far_count=args.far_count,
                    t_near=args.t_near, t_max=args.t_max)


def _add_format(p: argparse.ArgumentParser, choices=("table", "json")) -> None:
    p.add_argument("--format", choices=choices, default="table")


# ---------------------------------------------------------------------------
# output helpers

def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# commands

def cmd_eval(args: argparse.Namespace) -> int:
    value = mean_value(args.mean, PositivePair(args.a, args.b))
    if args.format == "json":
        _emit(_json({"mean": kind_symbol(args.mean), "a": args.a, "b": args.b, "value": value}), None)
    else:
        print(_fmt(value))
    return EXIT_OK


def cmd_ratio(args: argparse.Namespace) -> int:
    if args.t <= 1.0:
        raise UsageError(f"argument t: must exceed 1, got {args.t!r}")
    print(_fmt(bounds.ratio(args.target, args.t, args.lower, args.upper)))
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    grid = _grid_from(args)
    inf, sup = bounds.estimate_sharp_constants(args.target, grid, args.lower, args.upper)
    closed = args.lower is bounds.H and args.upper is bounds.D and args.target in bounds.SHARP_LIMITS
    out = {"target": kind_symbol(args.target), "lower": kind_symbol(args.lower),
           "upper": kind_symbol(args.upper), "grid": grid.describe(),
           "inf_estimate": inf, "sup_estimate": sup}
    ok = True
    if closed:
        lim1, liminf = bounds.ratio_limits(args.target)
        lo, hi = sorted((lim1, liminf))
        ok = lo <= inf and sup <= hi
        out.update(limit_at_one=lim1, limit_at_infinity=liminf, consistent=ok)
    if args.format == "json":
        _emit(_json(out), None)
    else:
        print(f"ratio        ({out['target']} - {out['lower']}) / ({out['upper']} - {out['lower']})")
        print(f"grid         {len(grid.points())} points, t in (1, {grid.t_max:g}]")
        print(f"inf sampled  {_fmt(inf)}")
        print(f"sup sampled  {_fmt(sup)}")
        if closed:
            print(f"limit t->1   {_fmt(out['limit_at_one'])}")
            print(f"limit t->inf {_fmt(out['limit_at_infinity'])}")
            print(f"verdict      {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify(args: argparse.Namespace) -> int:
    thm = bounds.THEOREMS[args.theorem]
    try:
        query = thm.query(args.alpha, args.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    grid = _grid_from(args)
    cert = bounds.verify_double_inequality(query, grid)
    report = {"theorem": args.theorem, "statement": thm.statement, **cert.as_dict(grid)}
    if args.format == "json":
        text = _json(report)
    else:
        q = query
        m = report["margins"]
        lines = [
            f"theorem   {args.theorem}: {thm.statement}",
            f"query     {kind_symbol(q.target)} between {kind_symbol(q.lower)} and {kind_symbol(q.upper)}, "
            f"alpha={_fmt(q.alpha)} beta={_fmt(q.beta)}",
            f"grid      {cert.grid_size} points, t in (1, {grid.t_max:g}]",
            f"lower     worst margin {_fmt(cert.worst_lower_margin)} at t={_fmt(cert.worst_lower_t)}"
            f" ({m['lower_violations']} violations)",
            f"upper     worst margin {_fmt(cert.worst_upper_margin)} at t={_fmt(cert.worst_upper_t)}"
            f" ({m['upper_violations']} violations)",
        ]
        for side in ("lower", "upper"):
            span = m[f"{side}_violation_span"]
            if span:
                lines.append(f"{side} violations for t in [{_fmt(span[0])}, {_fmt(span[1])}]")
        lines.append(f"verdict   {'PASS' if cert.passed else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if cert.passed else EXIT_VIOLATION


def _lemma_table(rep: dict) -> str:
    lines = [f"lemma {rep['lemma']}"]
    if "brackets" in rep:
        lines.append("brackets")
        for b in rep["brackets"]:
            lines.append(f"  {b['label']:<9} [{_fmt(b['lo'])}, {_fmt(b['hi'])}]  width {b['width']:.3g}")
        lines.append("values at t=1")
        for name, v in rep["values_at_1"].items():
            lines.append(f"  {name:<10} {_fmt(v)}")
    for s in rep.get("sign_reports", []):
        g = s["grid"]
        lines.append(f"{s['function']:<8} sign {s['sign']} on {g['count']} points in [{_fmt(g['t_min'])}, "
                     f"{_fmt(g['t_max'])}]: {s['violations']} violations, min |value| {s['min_abs_value']:.3g}")
    if "g" in rep:
        g = rep["g"]
        lines.append(f"g        range ({_fmt(rep['range'][0])}, {_fmt(rep['range'][1])})")
        lines.append(f"         sampled [{_fmt(g['minimum'])}, {_fmt(g['maximum'])}] on {g['count']} points, "
                     f"{g['breaks']} monotonicity breaks, {g['outside']} outside range")
        hp = rep["h_prime"]
        lines.append(f"h'       sign {hp['sign']} on {hp['grid']['count']} points: {hp['violations']} violations")
    lines.append(f"verdict  {rep['verdict'].upper()}")
    return "\n".join(lines) + "\n"


def cmd_lemma(args: argparse.Namespace) -> int:
    rep = lemmas.lemma_report(args.lemma, _grid_from(args))
    _emit(_json(rep) if args.format == "json" else _lemma_table(rep), None)
    return EXIT_OK if rep["verdict"] == "pass" else EXIT_VIOLATION


def cmd_scan(args: argparse.Namespace) -> int:
    grid = _grid_from(args)
    if args.target in bounds.SHARP_LIMITS:
        lim1, liminf = bounds.ratio_limits(args.target)
        alpha, beta = sorted((lim1, liminf))
    else:
        lim1 = liminf = None
        alpha, beta = 0.0, 1.0
    alpha = args.alpha if args.alpha is not None else alpha
    beta = args.beta if args.beta is not None else beta
    try:
        query = bounds.ConvexBoundQuery(args.target, bounds.H, bounds.D, alpha, beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    samples = bounds.margin_samples(query, grid.points())

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "ratio", "lower_margin", "upper_margin"])
    for s in samples:
        w.writerow([_short(s.t), _short(s.ratio), _short(s.lower_margin), _short(s.upper_margin)])
    csv_text = buf.getvalue()
    profile = {
        "target": kind_symbol(args.target),
        "limit_at_one": lim1,
        "limit_at_infinity": liminf,
        "query": query.as_dict(),
        "grid": grid.describe(),
        "samples": [{"t": s.t, "ratio": s.ratio, "lower_margin": s.lower_margin,
                     "upper_margin": s.upper_margin} for s in samples],
    }
    if args.csv is None and args.json is None:
        _emit(csv_text, None)
    if args.csv is not None:
        _emit(csv_text, args.csv)
    if args.json is not None:
        _emit(_json(profile), args.json)
    return EXIT_OK


def cmd_batch(args: argparse.Namespace) -> int:
    try:
        with open(args.input, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError:
        raise UsageError(f"input file not found: {args.input}") from None
    if not rows or [c.strip() for c in rows[0]] != ["a", "b"]:
        raise UsageError("input CSV must start with the header 'a,b'")
    means = args.means
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["a", "b", *(kind_symbol(m) for m in means)])
    bad = 0
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        problem = None
        values = []
        if len(row) != 2:
            problem = f"line {lineno}: expected 2 fields, got {len(row)}"
        else:
            for name, text in zip(("a", "b"), row):
                try:
                    v = float(text)
                except ValueError:
                    problem = f"line {lineno}: malformed {name} {text.strip()!r}"
                    break
                if not math.isfinite(v) or v <= 0:
                    problem = f"line {lineno}: nonpositive {name}" if v <= 0 else f"line {lineno}: non-finite {name}"
                    break
                values.append(v)
        if problem:
            bad += 1
            print(f"warning: {problem}", file=sys.stderr)
            if args.strict:
                raise UsageError(f"{problem} (--strict)")
            continue
        pair = PositivePair(*values)
        w.writerow([_short(pair.a), _short(pair.b), *(_short(mean_value(m, pair)) for m in means)])
    _emit(out.getvalue(), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharpmeans",
        description="Bivariate means and sharp convex-combination bounds between H and D.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a mean")
    p.add_argument("mean", type=_mean, help="H G L I A T NS Q C D, or M<p> for a power mean")
    p.add_argument("a", type=_positive_float)
    p.add_argument("b", type=_positive_float)
    _add_format(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ratio", help="evaluate (M - L)/(U - L) at (t, 1)")
    p.add_argument("target", type=_mean)
    p.add_argument("t", type=_positive_float)
    p.add_argument("--lower", type=_mean, default=bounds.H)
    p.add_argument("--upper", type=_mean, default=bounds.D)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("bounds", help="estimate the sharp constants from sampled ratios")
    p.add_argument("target", type=_mean)
    p.add_argument("--lower", type=_mean, default=bounds.H)
    p.add_argument("--upper", type=_mean, default=bounds.D)
    _add_grid_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="certify a double inequality on a grid")
    p.add_argument("theorem", choices=list(bounds.THEOREMS))
    p.add_argument("--alpha", type=_unit_float, default=None, help="override the lower coefficient")
    p.add_argument("--beta", type=_unit_float, default=None, help="override the upper coefficient")
    p.add_argument("--output", default=None, help="write the report here instead of stdout")
    _add_grid_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemma", help="check a lemma's sign and monotonicity claims")
    p.add_argument("lemma", choices=list(lemmas.LEMMA_REPORTS))
    _add_grid_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("scan", help="tabulate ratio and margins over a grid")
    p.add_argument("target", type=_mean)
    p.add_argument("--csv", default=None, metavar="PATH")
    p.add_argument("--json", default=None, metavar="PATH")
    p.add_argument("--alpha", type=_unit_float, default=None)
    p.add_argument("--beta", type=_unit_float, default=None)
    _add_grid_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("batch", help="evaluate means for every (a, b) row of a CSV file")
    p.add_argument("input")
    p.add_argument("--means", type=_mean_list, required=True, help="comma-separated, e.g. H,T,D")
    p.add_argument("--output", default=None)
    p.add_argument("--strict", action="store_true", help="abort on the first malformed row")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog} {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
