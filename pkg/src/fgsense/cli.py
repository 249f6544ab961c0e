"""Command-line entry point ``fgsense``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import analysis, geometry as geo, incidence
from .gf import field_create
from .harness import DEFAULT_TRIALS, ExperimentConfig, compare, gaussian_like, run_experiment
from .recovery import gaussian_matrix, rng_stream

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _add_geometry_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--geom", choices=["eg", "pg"], type=str.lower, required=required)
    p.add_argument("--r", type=int, required=required)
    p.add_argument("--q", type=int, required=required)
    p.add_argument("--mu1", type=int, required=required)
    p.add_argument("--mu2", type=int, required=required)


def _add_build_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    _add_geometry_flags(p, required)
    p.add_argument("--type", type=int, choices=[1, 2], default=1)
    p.add_argument("--bundles", type=int, help="keep only the first C row bundles (EG, type 1)")
    p.add_argument("--delete-lines", type=int, metavar="J",
                   help="drop the points on the first J lines of the next bundle")


def _geometry(args) -> geo.GeometrySpec:
    return geo.make_geometry(args.geom, args.r, args.q)


def _build(args) -> incidence.BinaryMatrix:
    g = _geometry(args)
    H = incidence.build_incidence(g, args.mu1, args.mu2, 1)
    if args.bundles is not None:
        H = incidence.select_row_bundles(H, args.bundles)
    if args.delete_lines is not None:
        if args.bundles is None:
            raise UsageError("--delete-lines needs --bundles")
        nxt = geo.parallel_bundles(g, args.mu2)[args.bundles]
        H = incidence.delete_covered_columns(H, nxt, args.delete_lines)
    return incidence.transpose(H) if args.type == 2 else H


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)


# --- subcommands ---------------------------------------------------------------------

def cmd_field(args) -> int:
    f = field_create(args.p, args.m)
    print(f"q={f.q}")
    print("modulus=" + " ".join(map(str, f.modulus)))
    print("elements=" + " ".join("".join(map(str, f.coeffs(a))) for a in range(f.q)))
    return EXIT_OK


def cmd_count(args) -> int:
    g = _geometry(args)
    a, b, r = args.mu1, args.mu2, g.r
    if not 0 <= a < b <= r:
        raise UsageError("need 0 <= mu1 < mu2 <= r")
    print(f"N(r,mu1)={geo.count_N(g, r, a)}")
    print(f"N(r,mu2)={geo.count_N(g, r, b)}")
    print(f"N(mu2,mu1)={geo.count_N(g, b, a)}")
    print(f"A(mu2,mu1)={geo.count_A(g, b, a)}")
    print(f"A(mu2,mu2-1)={geo.count_A(g, b, b - 1)}")
    print(f"N(mu1+1,mu1)={geo.count_N(g, a + 1, a)}")
    return EXIT_OK


def cmd_build(args) -> int:
    H = _build(args)
    incidence.write_bmm(H, args.output)
    print(f"wrote {H.rows}x{H.cols} matrix to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_analyze(args) -> int:
    H = incidence.read_bmm(args.file)
    report = analysis.analyze(H, args.exact_spark_limit, args.stopping_limit)
    sys.stdout.write(report.to_text())
    return EXIT_OK


def _parse_size(text: str) -> tuple[int, int]:
    try:
        m, n = text.lower().split("x")
        return int(m), int(n)
    except ValueError:
        raise UsageError(f"--gaussian expects MxN, got {text!r}") from None


def _matrix_from_args(args):
    sources = [args.matrix is not None, args.gaussian is not None, args.geom is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --matrix, --gaussian or geometry flags")
    if args.matrix is not None:
        return incidence.read_bmm(args.matrix)
    if args.gaussian is not None:
        m, n = _parse_size(args.gaussian)
        return gaussian_matrix(m, n, rng_stream(args.seed, "matrix"))
    missing = [f for f in ("r", "q", "mu1", "mu2") if getattr(args, f) is None]
    if missing:
        raise UsageError("missing geometry flags: " + ", ".join("--" + f for f in missing))
    return _build(args)


def _config(args) -> ExperimentConfig:
    A = _matrix_from_args(args)
    k_max = args.kmax if args.kmax is not None else args.kmin
    return ExperimentConfig(A, args.kmin, k_max, args.kstep, args.trials, args.seed, args.workers)


def cmd_simulate(args) -> int:
    cfg = _config(args)
    curve = run_experiment(cfg)
    _emit(curve.to_csv(), args.output)
    if args.dat:
        _emit(curve.to_dat(), args.dat)
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _config(args)
    paired = compare(cfg, gaussian_like(cfg, args.gaussian_seed))
    _emit(paired.to_csv(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        for check in run_suite(name):
            print(f"[{name}] {check.line()}")
            failed += not check.ok
    print(f"{'FAILED' if failed else 'OK'}: {failed} failing check(s)")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fgsense", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="describe GF(p^m)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("count", help="flat counting formulas")
    _add_geometry_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("build", help="write an incidence matrix as BMM")
    _add_build_flags(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="structural report for a BMM file")
    p.add_argument("file")
    p.add_argument("--exact-spark-limit", type=int, metavar="S")
    p.add_argument("--stopping-limit", type=int, metavar="S")
    p.set_defaults(func=cmd_analyze)

    for name, func, help_ in [
        ("simulate", cmd_simulate, "OMP recovery curve"),
        ("compare", cmd_compare, "recovery curve against a same-size Gaussian matrix"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--matrix", metavar="FILE")
        if name == "simulate":
            p.add_argument("--gaussian", metavar="MxN")
        else:
            p.set_defaults(gaussian=None)
            p.add_argument("--gaussian-seed", type=int, help="seed of the baseline (default: --seed)")
        _add_build_flags(p, required=False)
        p.add_argument("--kmin", type=int, default=1)
        p.add_argument("--kmax", type=int)
        p.add_argument("--kstep", type=int, default=1)
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("-o", "--output")
        if name == "simulate":
            p.add_argument("--dat", metavar="FILE", help="also write a two-column k/percent file")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=["fields", "small-geometries", "bounds-chain", "oracle", "paper-values", "all"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except incidence.BMMFormatError as exc:
        print(f"fgsense: {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"fgsense: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError, NotImplementedError, IndexError) as exc:
        print(f"fgsense: {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
