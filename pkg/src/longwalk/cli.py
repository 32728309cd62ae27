"""Command line interface: ``longwalk {dist,verify,limits}``.

Exit codes: 0 success, 2 input error, 3 numerical error (including a
failed verification or a non-monotone limit table).
"""
from __future__ import annotations

import argparse
import sys

from . import distances as D
from . import verify as V
from .errors import InputError, NumericalError
from .graph import adjacency_matrix, laplacian_matrix
from .io import fmt, matrix_to_csv, matrix_to_json, read_edge_list
from .linalg import perron_eigenpair

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3

METHODS = ("walk", "longwalk-det", "longwalk-ginv", "longwalk-sub", "resistance",
           "longwalk-gprime", "rescaled")


def _label_id(labels, lab, flag):
    if lab is None:
        return 0
    try:
        return labels.index(lab)
    except ValueError:
        raise InputError(f"{flag}: unknown vertex label {lab!r}") from None


def compute(method, g, labels, t=None, u=None, v=None):
    perron = perron_eigenpair(adjacency_matrix(g))
    if method == "walk":
        if t is None:
            raise InputError("--t is required for --method walk")
        return D.walk_distance(g, perron, t)
    if method == "longwalk-det":
        return D.longwalk_det(g, perron)
    if method == "longwalk-ginv":
        return D.longwalk_ginverse(g, perron)
    if method == "longwalk-sub":
        return D.longwalk_submatrix(g, perron, _label_id(labels, u, "--u"),
                                    _label_id(labels, v, "--v"))
    if method == "resistance":
        return D.resistance_distance(laplacian_matrix(g), "det")
    if method == "longwalk-gprime":
        return D.longwalk_via_gprime(g, perron)
    if method == "rescaled":
        return D.rescaled_longwalk(g, perron)
    raise InputError(f"unknown method {method!r}")


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_dist(args):
    g, labels = read_edge_list(args.input)
    d = compute(args.method, g, labels, args.t, args.u, args.v)
    if args.format == "json":
        text = matrix_to_json(d.values, labels, d.method, d.params) + "\n"
    else:
        text = matrix_to_csv(d.values, labels)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args):
    g, _ = read_edge_list(args.input)
    report = V.run_full_report(g, seed=args.seed, tol_exact=args.tol_exact,
                               tol_limit=args.tol_limit)
    _emit(report.to_json(indent=1) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_NUMERIC


def cmd_limits(args):
    if args.steps < 2:
        raise InputError("--steps must be at least 2")
    g, _ = read_edge_list(args.input)
    ks = range(args.start, args.start + args.steps)
    rows = V.limit_deviations(g, ks=ks)
    lines = ["k,t,relative_deviation"]
    lines += [f"{k},{fmt(t)},{fmt(dev)}" for k, t, dev in rows]
    _emit("\n".join(lines) + "\n", args.out)
    devs = [dev for _, _, dev in rows]
    if any(b > a for a, b in zip(devs, devs[1:])):
        print("error: deviation sequence is not non-increasing", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="longwalk", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="compute a distance matrix")
    d.add_argument("input", help="edge list: one 'u v weight' per line, '#' comments")
    d.add_argument("--method", choices=METHODS, default="longwalk-det")
    d.add_argument("--t", type=float, help="walk parameter, required for --method walk")
    d.add_argument("--u", help="deleted column label for longwalk-sub (default: first vertex)")
    d.add_argument("--v", help="deleted row label for longwalk-sub (default: first vertex)")
    d.add_argument("--format", choices=("csv", "json"), default="csv")
    d.add_argument("--out", help="write here instead of stdout")
    d.set_defaults(func=cmd_dist)

    v = sub.add_parser("verify", help="run all identity checks, print a JSON report")
    v.add_argument("input", help="edge list file")
    v.add_argument("--seed", type=int, default=0, help="seed for sampled (u, v) pairs")
    v.add_argument("--tol-exact", type=float, default=V.TOL_EXACT,
                   help="relative tolerance for exact identities (default %(default)g)")
    v.add_argument("--tol-limit", type=float, default=V.TOL_LIMIT,
                   help="relative tolerance for the limit estimate (default %(default)g)")
    v.add_argument("--out", help="write here instead of stdout")
    v.set_defaults(func=cmd_verify)

    lm = sub.add_parser("limits", help="convergence table of the scaled walk distance")
    lm.add_argument("input", help="edge list file")
    lm.add_argument("--steps", type=int, default=9, help="number of rows (default %(default)s)")
    lm.add_argument("--start", type=int, default=4,
                    help="first k in t_k = (1 - 2^-k)/rho (default %(default)s)")
    lm.add_argument("--out", help="write here instead of stdout")
    lm.set_defaults(func=cmd_limits)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
