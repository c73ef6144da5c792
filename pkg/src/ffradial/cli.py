"""
Command line entry point: ``ffradial <subcommand> ...``.

Reports go to ``--output`` (default: stdout, or ``$FFRADIAL_OUTPUT_DIR/<cmd>.<fmt>``
when that variable is set).  ``verify`` exits with status 1 if any checked
instance violates its bound or hits an internal error; precondition skips
do not count.
"""

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

import numpy as np

from .ambient import AmbientSpace
from .errors import ConfigInvalid, FFRadialError
from .experiment import FAMILIES, ExperimentConfig, generate_set, run_experiment, summarize
from .grassmann import (enumerate_grassmannian, gaussian_binomial, parse_subspace,
                        sample_uniform_subspace)
from .pointfile import format_pointset, parse_pointset
from .projections import QuotientMap, radial_projection, radial_sizes
from .theorems import (BoundReport, Conjecture, FullDim, TheoremId,
                       check_expectation_identity, check_markov_fraction,
                       collision_expectation, format_rational, reduction_pipeline)

OUTPUT_DIR_ENV = "FFRADIAL_OUTPUT_DIR"

REPORT_COLUMNS = list(BoundReport(TheoremId.LargeESC, False).to_dict())


def int_list(text):
    """``"2,3"`` or an inclusive range ``"2:5"``, or a mix: ``"2,4:6"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            lo, hi = part.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def rational_list(text):
    return [Fraction(part.strip()) for part in text.split(",") if part.strip()]


def point_arg(text):
    return tuple(int(v) for v in text.split(","))


def theorem_arg(text):
    for t in TheoremId:
        if t.value.lower() == text.lower().replace("-", "").replace("_", ""):
            return t
    raise argparse.ArgumentTypeError(
        f"unknown theorem {text!r}; choose from {', '.join(t.value for t in TheoremId)}")


def _single(values, name):
    if len(values) != 1:
        raise ConfigInvalid(f"--{name} takes a single value for this subcommand")
    return values[0]


def _open_output(args, command):
    if args.output:
        return open(args.output, "w", encoding="utf-8", newline="")
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory:
        ext = getattr(args, "format", None) or "txt"
        return open(os.path.join(directory, f"{command}.{ext}"), "w",
                    encoding="utf-8", newline="")
    return None


def _emit_rows(rows, columns, fmt, out):
    if fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore",
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if v is None else v for k, v in row.items()})
    else:
        for row in rows:
            out.write(json.dumps(row, sort_keys=False) + "\n")


def _space(args):
    return AmbientSpace(_single(args.q, "q"), _single(args.n, "n"))


def _input_or_generated(args, space, rng):
    if args.input:
        return parse_pointset(args.input, space)
    size = _single(args.size, "size") if args.size else 0
    k = _single(args.k, "k") if args.k else space.n - 1
    return generate_set(space, args.family, size, k, rng)


# -- subcommands ----------------------------------------------------------------

def cmd_verify(args, out):
    config = ExperimentConfig(
        theorem=args.theorem, q=args.q, n=args.n, k=args.k, size=args.size, M=args.M,
        C=args.C, family=args.family, trials=args.trials, seed=args.seed,
        time_limit=args.time_limit, jobs=args.jobs)
    if args.max_space_size:
        config.max_space_size = args.max_space_size
    if args.grassmann_budget:
        config.grassmann_budget = args.grassmann_budget
    reports = list(run_experiment(config))
    summary = summarize(reports, config.theorem)
    if args.format == "csv":
        _emit_rows([r.to_dict() for r in reports], REPORT_COLUMNS, "csv", out)
        out.write("# " + json.dumps(summary.to_dict()) + "\n")
    else:
        _emit_rows([r.to_dict() for r in reports] + [summary.to_dict()], None, "json", out)
    for msg in summary.error_messages:
        print(f"error: {msg}", file=sys.stderr)
    return 0 if summary.ok else 1


def cmd_pipeline(args, out):
    space = _space(args)
    rng = np.random.default_rng(args.seed)
    E = _input_or_generated(args, space, rng)
    k = _single(args.k, "k")
    if args.mode == "fulldim":
        mode = FullDim(int(_single(args.M, "M")), k)
    else:
        mode = Conjecture(k)
    trace = reduction_pipeline(E, mode, rng, check_preconditions=not args.relaxed)
    out.write(json.dumps(trace.to_dict(), indent=2) + "\n")
    return 0 if trace.all_checks_pass else 1


def cmd_expectation(args, out):
    space = _space(args)
    rng = np.random.default_rng(args.seed)
    k = _single(args.k, "k")
    X = parse_pointset(args.input, space) if args.input else generate_set(
        space, args.family, _single(args.size, "size"), k, rng)
    rows = [check_expectation_identity(X, k).to_dict(), check_markov_fraction(X, k).to_dict()]
    rows[0]["closed_form"] = format_rational(collision_expectation(space.n, k, space.q, len(X)))
    _emit_rows(rows, REPORT_COLUMNS, args.format, out)
    return 0 if all(r["holds"] for r in rows) else 1


def cmd_grassmannian(args, out):
    q, n, k = _single(args.q, "q"), _single(args.n, "n"), _single(args.k, "k")
    if args.action == "count":
        out.write(f"{gaussian_binomial(n, k, q)}\n")
        return 0
    space = AmbientSpace(q, n)
    if args.action == "enum":
        for gamma in enumerate_grassmannian(space, k):
            out.write(gamma.serialize() + "\n")
    else:
        rng = np.random.default_rng(args.seed)
        for _ in range(args.trials):
            out.write(sample_uniform_subspace(space, k, rng).serialize() + "\n")
    return 0


def cmd_project(args, out):
    space = _space(args)
    rng = np.random.default_rng(args.seed)
    E = _input_or_generated(args, space, rng)
    if args.gamma:
        gamma = parse_subspace(space, args.gamma)
    else:
        gamma = sample_uniform_subspace(space, space.n - _single(args.k, "k") - 1, rng)
    qm = QuotientMap(gamma)
    print(f"# projected by {gamma.serialize()}", file=sys.stderr)
    out.write(format_pointset(qm.project_set(E)))
    return 0


def cmd_radial(args, out):
    space = _space(args)
    rng = np.random.default_rng(args.seed)
    E = _input_or_generated(args, space, rng)
    if args.center:
        img = radial_projection(E, args.center)
        row = {"center": ",".join(map(str, img.center)), "size": img.size,
               "directions": ";".join(sorted(",".join(map(str, d)) for d in img.directions))}
        _emit_rows([row], ["center", "size", "directions"], args.format, out)
        return 0
    sizes = radial_sizes(E, jobs=args.jobs)
    rows = ({"index": i, "center": ",".join(map(str, space.point(i))), "size": int(s)}
            for i, s in enumerate(sizes))
    _emit_rows(rows, ["index", "center", "size"], args.format, out)
    return 0


def cmd_gen(args, out):
    space = _space(args)
    rng = np.random.default_rng(args.seed)
    k = _single(args.k, "k") if args.k else space.n - 1
    size = _single(args.size, "size") if args.size else 0
    out.write(format_pointset(generate_set(space, args.family, size, k, rng)))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int_list, required=True, help="field orders, e.g. 7,8,9")
    common.add_argument("--n", type=int_list, required=True, help="dimensions, e.g. 2:3")
    common.add_argument("--k", type=int_list, default=None)
    common.add_argument("--size", type=int_list, default=None, help="set sizes")
    common.add_argument("--M", type=int_list, default=None)
    common.add_argument("--C", type=rational_list, default=None, help="e.g. 3/2,2,3")
    common.add_argument("--family", choices=FAMILIES, default="random")
    common.add_argument("--trials", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", default=None)
    common.add_argument("--input", default=None, help="point-set file")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="ffradial", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="sweep a bound over a parameter grid")
    p.add_argument("theorem", type=theorem_arg)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--max-space-size", type=int, default=None)
    p.add_argument("--grassmann-budget", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pipeline", parents=[common], help="trace the projection reduction")
    p.add_argument("--mode", choices=("fulldim", "conjecture"), default="conjecture")
    p.add_argument("--relaxed", action="store_true",
                   help="only enforce the sampling lemma's size requirements")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("expectation", parents=[common], help="exact collision average")
    p.set_defaults(func=cmd_expectation)

    p = sub.add_parser("grassmannian", parents=[common], help="count, list or sample subspaces")
    p.add_argument("action", choices=("count", "enum", "sample"))
    p.set_defaults(func=cmd_grassmannian)

    p = sub.add_parser("project", parents=[common], help="quotient-project a point set")
    p.add_argument("--gamma", default=None, help="subspace as G(q,n,k):row;row")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("radial", parents=[common], help="radial image sizes")
    p.add_argument("--center", type=point_arg, default=None)
    p.set_defaults(func=cmd_radial)

    p = sub.add_parser("gen", parents=[common], help="generate a point set")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handle = None
    try:
        handle = _open_output(args, args.command)
        out = handle or sys.stdout
        return args.func(args, out)
    except FFRadialError as exc:
        print(f"ffradial: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        if handle is not None:
            handle.close()


if __name__ == "__main__":
    sys.exit(main())
