"""Command-line front end.

Exit codes: 0 on success, 1 on a domain error (for example a disconnected
district), 2 on bad input (unreadable or malformed files, bad arguments).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from fractions import Fraction

from . import bounds, districting, randwalk, treecount
from .gridio import ParseError, read_grid, read_partition, write_atomic
from .lattice import GridGraphError, Vertex, top_left_boundary


class InputError(Exception):
    pass


def fixed(q: Fraction, digits: int) -> str:
    """Round half up to ``digits`` decimals, exactly."""
    scale = 10**digits
    n = math.floor(Fraction(q) * scale + Fraction(1, 2))
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def _emit(text: str, out) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return read_grid(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_count(args) -> None:
    g = _load(args.input)
    t = treecount.tau(g)
    if not g.is_connected():
        print(f"# note: graph has {len(g.components())} components; generalized count")
    print(f"tau = {t.value}")
    print(f"ln_tau = {t.log_value:.12g}")


def cmd_multipliers(args) -> None:
    profile = treecount.multiplier_profile(_load(args.input))
    _emit(treecount.heatmap_export(profile), args.out)


def cmd_bounds(args) -> None:
    report = bounds.evaluate_bounds(_load(args.input), args.max_k)
    _emit(bounds.reports_to_csv([report]) if args.csv else report.as_text(), args.out)


def cmd_fk(args) -> None:
    if args.max_k < 2:
        raise InputError("--max-k must be at least 2")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "F_exact", f"F_{args.decimals}dp"])
    for k in range(2, args.max_k + 1):
        f = randwalk.F(k)
        w.writerow([k, str(f), fixed(f, args.decimals)])
    _emit(buf.getvalue(), args.out)


def cmd_partition(args) -> None:
    g = _load(args.input)
    try:
        assignment = read_partition(args.partition)
    except OSError as exc:
        raise InputError(f"cannot read {args.partition}: {exc.strerror}") from None
    except ParseError as exc:
        raise InputError(f"{args.partition}: {exc}") from None
    p = districting.DistrictPartition(g, assignment)
    score = districting.score_partition(p)
    ident = districting.verify_redistrict_identity(p, score)
    sandwich = districting.verify_boundss(p, score)
    lines = [
        f"districts: {p.K}",
        f"cut_edges: {score.cut_edges}",
        f"C1: {score.C1}",
        "district_areas: " + " ".join(map(str, score.district_areas)),
        "district_taus: " + " ".join(map(str, score.district_taus)),
        f"spanning_score: {score.spanning_score:.12g}",
        "simple: " + " ".join(str(int(s)) for s in score.simple_flags),
        f"identity: {ident.status} ({ident.lhs} vs {ident.rhs})",
        f"sandwich: {sandwich.status} ({sandwich.lhs:.12g} <= {score.cut_edges} <= {sandwich.rhs:.12g})",
    ]
    if ident.failing:
        lines.append("hypotheses_failing: " + " ".join(map(str, ident.failing)))
    _emit("\n".join(lines) + "\n", args.out)


def cmd_ensemble(args) -> None:
    g = _load(args.input)
    initial = None
    if args.partition:
        try:
            initial = districting.DistrictPartition(g, read_partition(args.partition))
        except (OSError, ParseError) as exc:
            raise InputError(str(exc)) from None
        if initial.K != args.districts:
            raise InputError("--districts does not match the partition file")
    scores = districting.run_ensemble(
        g, args.districts, args.steps, args.seed, args.pop_tolerance, initial=initial
    )
    _emit(districting.scatter_export(scores), args.out)


def cmd_sample_tree(args) -> None:
    g = _load(args.input)
    buf = io.StringIO()
    for i, tree in enumerate(randwalk.sample_spanning_trees(g, args.samples, args.seed, args.method)):
        buf.write(f"# tree {i}\n")
        for u, w in sorted(tree):
            buf.write(f"{u.x} {u.y} {w.x} {w.y}\n")
    _emit(buf.getvalue(), args.out)


def cmd_escape(args) -> None:
    g = _load(args.input)
    if args.vertex:
        targets = [Vertex(*args.vertex)]
        if targets[0] not in g:
            raise InputError("vertex not in graph")
    else:
        boundary = top_left_boundary(g)
        targets = [v for v in g.order if v not in boundary]
    header = ["x", "y", "E", "Q", "P", "multiplier"]
    if args.samples:
        header += ["P_estimate", "within_4sigma"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for v in targets:
        t = randwalk.escape_triple(g, v)
        row = [v.x, v.y, str(t.E), str(t.Q), str(t.P), str(t.multiplier)]
        if args.samples:
            est = randwalk.estimate_P(g, v, args.samples, args.seed)
            row += [f"{est.estimate:.12g}", int(est.consistent)]
        w.writerow(row)
    _emit(buf.getvalue(), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridtrees", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, grid=True, out=True):
        p = sub.add_parser(name, help=help)
        if grid:
            p.add_argument("--input", required=True, help="grid file")
        if out:
            p.add_argument("--out", help="output file (default: stdout)")
        p.set_defaults(func=func)
        return p

    add("count", cmd_count, "exact spanning-tree count", out=False)
    add("multipliers", cmd_multipliers, "multiplier heatmap CSV")
    p = add("bounds", cmd_bounds, "evaluate every bound for one graph")
    p.add_argument("--max-k", type=int, default=bounds.DEFAULT_MAX_K)
    p.add_argument("--csv", action="store_true", help="CSV row instead of key: value text")
    p = add("fk-table", cmd_fk, "table of F(k)", grid=False)
    p.add_argument("--max-k", type=int, default=bounds.DEFAULT_MAX_K)
    p.add_argument("--decimals", type=int, default=10)
    p = add("partition", cmd_partition, "score a district map")
    p.add_argument("--partition", required=True, help="partition file")
    p = add("ensemble", cmd_ensemble, "recombination ensemble scatter CSV")
    p.add_argument("--districts", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pop-tolerance", type=float, default=0.05)
    p.add_argument("--partition", help="initial partition file")
    p = add("sample-tree", cmd_sample_tree, "uniform random spanning trees")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--method", choices=sorted(randwalk.SAMPLERS), default="wilson")
    p = add("escape", cmd_escape, "escape probabilities per vertex")
    p.add_argument("--vertex", type=int, nargs=2, metavar=("X", "Y"))
    p.add_argument("--samples", type=int, default=0, help="Monte-Carlo check of P")
    p.add_argument("--seed", type=int)
    return parser


DOMAIN_ERRORS = (
    districting.PartitionError,
    bounds.BoundsError,
    randwalk.WalkError,
    GridGraphError,
    ArithmeticError,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 0) and getattr(args, "seed", 0) is None:
        parser.error("--samples needs an explicit --seed")
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
