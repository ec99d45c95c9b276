"""Command-line front end.

    bbd compute  -p SPEC -q SPEC [--alpha A] [--measures m1,m2,...]
    bbd multi    SPEC SPEC [SPEC ...] [--weights w1,w2,...] [--alpha A]
    bbd bounds   (-p SPEC -q SPEC | --rho R | --from-bbd B|-) [--alpha A] [--prior PI1]
    bbd curvature --family F --theta T [--alpha A] [--h H] [--fixed k=v,...]
    bbd table    [--alphas 2,-1,inf] [--rho-steps N]
    bbd verify   [--suite NAME] [--trials N] [--seed S] [--tol key=value ...]

SPEC is a parametric string such as ``gaussian:mu=0,sigma=1`` or a path to a
JSON/CSV distribution file.  Exit status: 0 success, 1 bad input, 2 a verify
suite recorded a violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .bayes_error import PriorPair, bayes_error, bounds_from_bbd, kailath_bounds
from .distributions import (
    FAMILIES,
    DiscreteDistribution,
    GriddedDensity,
    align,
    closed_form_rho,
    load_distribution,
    numeric_rho,
    parse_model,
)
from .divergences import (
    Alpha,
    bbd,
    bhattacharyya_distance,
    chernoff,
    hellinger_squared,
    jsd,
    kld,
    kld_symmetrized,
    rho,
)
from .errors import BBDError, UnsupportedError
from .info_geometry import curvature_check, curvature_matrix
from .multiway import WeightVector, generalized_bbd, generalized_rho
from .report import dumps, emit_figure_table, figure_columns, record_to_csv, to_csv
from .verify import SUITES, run_suites

BASIC_MEASURES = ("rho", "bbd", "zeta", "hellinger_sq", "bhattacharyya")
DISCRETE_MEASURES = ("kld", "kld_symmetrized", "jsd", "jsd_unsymmetrized", "chernoff")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1, not argparse's 2
        raise UsageError(message)


def _alpha(text: str) -> Alpha:
    try:
        return Alpha.parse(text)
    except BBDError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bbd", description="Bounded Bhattacharyya distance toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, default="json"):
        p.add_argument("--format", choices=("json", "csv"), default=default)

    p = sub.add_parser("compute", help="rho, B_alpha and companion measures for a pair")
    p.add_argument("-p", required=True, help="first distribution (spec or file)")
    p.add_argument("-q", required=True, help="second distribution (spec or file)")
    p.add_argument("--alpha", type=_alpha, default=Alpha(2))
    p.add_argument("--measures", help=f"subset of {BASIC_MEASURES + DISCRETE_MEASURES}")
    p.add_argument("--t", type=float, default=0.5, help="Chernoff order in (0, 1)")
    p.add_argument("--steps", type=int, default=1 << 14, help="grid steps for continuous fallbacks")
    fmt(p)

    p = sub.add_parser("multi", help="generalized coefficient over n distributions")
    p.add_argument("specs", nargs="+")
    p.add_argument("--weights", type=_floats)
    p.add_argument("--alpha", type=_alpha, default=Alpha(2))
    p.add_argument("--steps", type=int, default=1 << 14)
    fmt(p)

    p = sub.add_parser("bounds", help="Bayes-error bounds from rho or from B_alpha")
    p.add_argument("-p")
    p.add_argument("-q")
    p.add_argument("--rho", type=float)
    p.add_argument("--from-bbd", dest="from_bbd", help="B_alpha value, or '-' to read compute JSON on stdin")
    p.add_argument("--alpha", type=_alpha)
    p.add_argument("--prior", type=float, default=0.5, help="pi1; pi2 = 1 - pi1")
    p.add_argument("--steps", type=int, default=1 << 14)
    fmt(p)

    p = sub.add_parser("curvature", help="finite-difference curvature vs C(alpha) * Fisher information")
    p.add_argument("--family", required=True,
                   help="poisson, gaussian_mean, gaussian_sigma, exponential, binomial, pareto, or gaussian (2-d)")
    p.add_argument("--theta", required=True, type=_floats, help="parameter value; 'mu,sigma' for gaussian")
    p.add_argument("--alpha", type=_alpha, default=Alpha(2))
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--fixed", default="", help="fixed parameters, e.g. sigma=2 or n=20")
    fmt(p)

    p = sub.add_parser("table", help="H^2 and B_alpha over a rho grid")
    p.add_argument("--alphas", default="2,-1,inf")
    p.add_argument("--rho-steps", dest="rho_steps", type=int, default=101)
    fmt(p, default="csv")

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"])
    p.add_argument("--trials", type=int, help="override random-trial counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", action="append", default=[], metavar="KEY=VALUE")
    fmt(p)
    return parser


# ---------------------------------------------------------------------------


def _looks_parametric(text: str) -> bool:
    head, sep, _ = text.partition(":")
    return bool(sep) and head.strip().lower() in FAMILIES


def _load(text: str):
    if _looks_parametric(text) or (":" in text and not os.path.exists(text)):
        return parse_model(text)
    return load_distribution(text)


def _materialize(objs: Sequence, steps: int) -> tuple[list, str, list]:
    """Return explicit distributions on a common support, the method name and tail masses."""
    parametric = [not isinstance(o, (DiscreteDistribution, GriddedDensity)) for o in objs]
    if all(parametric):
        aligned = align(objs, steps=steps)
        method = "sum" if isinstance(aligned.dists[0], DiscreteDistribution) else "quadrature"
        return aligned.dists, method, aligned.tail
    if any(parametric):
        raise UsageError("cannot mix parametric specs with distribution files")
    method = "sum" if isinstance(objs[0], DiscreteDistribution) else "quadrature"
    return list(objs), method, [0.0] * len(objs)


def _pair_rho(p_obj, q_obj, steps: int) -> tuple[float, str, float]:
    if not isinstance(p_obj, (DiscreteDistribution, GriddedDensity)) and not isinstance(
        q_obj, (DiscreteDistribution, GriddedDensity)
    ):
        try:
            return closed_form_rho(p_obj, q_obj), "closed_form", 0.0
        except UnsupportedError:
            value, err = numeric_rho(p_obj, q_obj, steps=steps)
            method = "sum" if p_obj.discrete else "quadrature"
            return value, method, err
    (p, q), method, _ = _materialize([p_obj, q_obj], steps)
    return rho(p, q), method, 0.0


def cmd_compute(args) -> dict:
    p_obj, q_obj = _load(args.p), _load(args.q)
    r, method, err = _pair_rho(p_obj, q_obj, args.steps)
    record = {"p": args.p, "q": args.q, "alpha": args.alpha.value, "method": method, "rho_error_bound": err}
    values = {
        "rho": r,
        "bbd": bbd(r, args.alpha),
        "zeta": bbd(r, 2),
        "hellinger_sq": hellinger_squared(r),
        "bhattacharyya": bhattacharyya_distance(r),
    }
    requested = args.measures.split(",") if args.measures else None
    discrete_wanted = [m for m in (requested or DISCRETE_MEASURES) if m in DISCRETE_MEASURES]
    unknown = [m for m in (requested or []) if m not in BASIC_MEASURES + DISCRETE_MEASURES]
    if unknown:
        raise UsageError(f"unknown measure(s) {unknown}")
    if discrete_wanted:
        try:
            (p, q), _, _ = _materialize([p_obj, q_obj], args.steps)
        except UnsupportedError:
            p = q = None
        if isinstance(p, DiscreteDistribution):
            values.update(
                kld=kld(p, q),
                kld_symmetrized=kld_symmetrized(p, q),
                jsd=jsd(p, q),
                jsd_unsymmetrized=jsd(p, q, symmetrized=False),
                chernoff=chernoff(p, q, args.t),
            )
        elif requested:
            raise UsageError(f"{discrete_wanted} need discrete distributions")
    for name in requested or list(values):
        if name in values:
            record[name] = values[name]
    return record


def cmd_multi(args) -> dict:
    if len(args.specs) < 2:
        raise UsageError("multi needs at least two distributions")
    dists, method, _ = _materialize([_load(s) for s in args.specs], args.steps)
    weights = WeightVector(args.weights) if args.weights else WeightVector.uniform(len(dists))
    rb = generalized_rho(dists, weights)
    return {
        "specs": args.specs,
        "weights": weights.betas.tolist(),
        "alpha": args.alpha.value,
        "method": method,
        "rho_beta": rb,
        "bbd": generalized_bbd(rb, args.alpha),
    }


def cmd_bounds(args, stdin) -> dict:
    prior = PriorPair(args.prior)
    sources = sum(x is not None for x in (args.rho, args.from_bbd)) + (args.p is not None or args.q is not None)
    if sources != 1:
        raise UsageError("give exactly one of -p/-q, --rho or --from-bbd")
    if args.from_bbd is not None:
        alpha = args.alpha
        if args.from_bbd == "-":
            data = json.loads(stdin.read())
            value = float(data["bbd"])
            if alpha is None and "alpha" in data:
                alpha = Alpha(data["alpha"])
        else:
            value = float(args.from_bbd)
        if alpha is None:
            raise UsageError("--from-bbd needs --alpha")
        return bounds_from_bbd(value, alpha, prior).to_dict()
    if args.rho is not None:
        return kailath_bounds(args.rho, prior).to_dict()
    if args.p is None or args.q is None:
        raise UsageError("need both -p and -q")
    p_obj, q_obj = _load(args.p), _load(args.q)
    r, _, _ = _pair_rho(p_obj, q_obj, args.steps)
    try:
        (p, q), _, _ = _materialize([p_obj, q_obj], args.steps)
        pe = bayes_error(p, q, prior)
    except UnsupportedError:
        pe = None
    return kailath_bounds(r, prior, pe=pe).to_dict()


def _fixed(text: str) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise UsageError(f"bad --fixed entry {item!r}")
        out[key.strip()] = int(value) if key.strip() == "n" else float(value)
    return out


def cmd_curvature(args) -> dict:
    if args.family == "gaussian":
        if len(args.theta) != 2:
            raise UsageError("gaussian curvature needs --theta mu,sigma")
        return curvature_matrix(tuple(args.theta), args.alpha, h=args.h).to_dict()
    if len(args.theta) != 1:
        raise UsageError("scalar families take a single --theta")
    return curvature_check(args.family, args.theta[0], args.alpha, h=args.h, **_fixed(args.fixed)).to_dict()


def cmd_verify(args) -> tuple[dict, bool]:
    tol = {}
    for item in args.tol:
        key, eq, value = item.partition("=")
        if not eq:
            raise UsageError(f"bad --tol entry {item!r}")
        tol[key.strip()] = float(value)
    results = run_suites(args.suite or ["all"], trials=args.trials, seed=args.seed, tol=tol)
    passed = all(r.passed for r in results)
    return {
        "seed": args.seed,
        "trials": args.trials,
        "passed": passed,
        "suites": [r.to_dict() for r in results],
    }, passed


def _emit(record, fmt: str, out) -> None:
    if fmt == "json":
        out.write(dumps(record) + "\n")
    elif "suites" in record:
        rows = [[s["suite"], s["passed"], s["checks"], s["violations"]] for s in record["suites"]]
        out.write(to_csv(["suite", "passed", "checks", "violations"], rows))
    else:
        out.write(record_to_csv(record))


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
        if args.command == "table":
            alphas = [Alpha.parse(a) for a in args.alphas.split(",") if a.strip()]
            if args.format == "csv":
                stdout.write(emit_figure_table(alphas, args.rho_steps))
            else:
                cols = figure_columns(alphas, args.rho_steps)
                stdout.write(dumps({k: v.tolist() for k, v in cols.items()}) + "\n")
            return 0
        if args.command == "verify":
            record, passed = cmd_verify(args)
            _emit(record, args.format, stdout)
            return 0 if passed else 2
        handler = {"compute": cmd_compute, "multi": cmd_multi, "curvature": cmd_curvature}.get(args.command)
        record = handler(args) if handler else cmd_bounds(args, stdin)
        _emit(record, args.format, stdout)
        return 0
    except (UsageError, BBDError, ValueError, TypeError, OSError, KeyError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        stderr.write(f"bbd: error: {msg}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
