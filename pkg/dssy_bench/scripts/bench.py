import argparse
import sys
from typing import List, Optional

from dssy_bench.errors import DssyError
from dssy_bench.handlers import BenchHandler
from dssy_bench.services import SolverService, load_settings, setup_logging


def parse_levels(text: str) -> List[int]:
    """'4,8,16' -> [4, 8, 16]"""
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"levels must be comma separated integers, got {text!r}")


def _add_mesh_arguments(parser):
    parser.add_argument('--mesh', choices=['theta', 'random'],
                        help="Mesh family (default: theta).")
    parser.add_argument('--theta', type=float,
                        help="Trapezoid parameter in [0, 1) (default: 0.7).")
    parser.add_argument('--alpha', type=float,
                        help="Random node displacement in [0, 0.5) "
                             "(default: 0.25).")
    parser.add_argument('--seed', type=int,
                        help="Random mesh seed (default: 1).")


def _add_problem_arguments(parser):
    parser.add_argument('--problem',
                        choices=['poisson', 'stokes', 'elasticity'],
                        help="Manufactured problem (default: poisson).")
    parser.add_argument('--element', choices=['np', 'p'],
                        help="np: nonparametric DSSY, p: parametric DSSY "
                             "with static condensation (default: np).")
    parser.add_argument('--ctilde', type=float,
                        help="Nonparametric family parameter c~ "
                             "(default: dssy.ctilde).")
    parser.add_argument('--l', type=int, help="Parametric variant, 1 or 2.")
    parser.add_argument('--mu', type=float, help="Lame parameter mu.")
    parser.add_argument('--lambda', type=float,
                        help="Lame parameter lambda.")
    parser.add_argument('--quad', type=int,
                        help="Assembly Gauss points per axis "
                             "(default: dssy.quad).")
    parser.add_argument('--tol', type=float,
                        help="Relative residual tolerance "
                             "(default: dssy.tol).")


def _add_output_arguments(parser, formats=True):
    parser.add_argument('--out', help="Write the result to this file.")
    if formats:
        parser.add_argument('--format', choices=['csv', 'md'],
                            help="Table format (default: csv).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='dssy-bench',
        description="Convergence and timing benchmarks for DSSY "
                    "nonconforming quadrilateral elements.",
        epilog="Example: dssy-bench study --problem poisson --mesh theta "
               "--theta 0.7 --element np --ctilde 0")
    parser.add_argument('--config',
                        help="PasteDeploy .ini with an [app:dssy_bench] "
                             "section and logging configuration.")

    subparsers = parser.add_subparsers(
        dest='command',
        required=True,
        help="The benchmark command to run.")

    # --- Command: mesh ---
    parser_mesh = subparsers.add_parser(
        'mesh', help="Generate a mesh and print or save it.")
    _add_mesh_arguments(parser_mesh)
    parser_mesh.add_argument('--n', type=int, help="Cells per side.")
    _add_output_arguments(parser_mesh, formats=False)

    # --- Command: solve ---
    parser_solve = subparsers.add_parser(
        'solve', help="Solve one problem on one mesh and report errors.")
    _add_mesh_arguments(parser_solve)
    parser_solve.add_argument('--n', type=int, help="Cells per side.")
    parser_solve.add_argument('--mesh-file',
                              help="Solve on a mesh saved by 'mesh --out'.")
    _add_problem_arguments(parser_solve)
    _add_output_arguments(parser_solve)

    # --- Command: study ---
    parser_study = subparsers.add_parser(
        'study', help="Convergence table over several levels.")
    _add_mesh_arguments(parser_study)
    parser_study.add_argument('--levels', type=parse_levels,
                              help="Cells per side, e.g. 4,8,16 "
                                   "(default: 4,...,128).")
    _add_problem_arguments(parser_study)
    _add_output_arguments(parser_study)

    # --- Command: timing ---
    parser_timing = subparsers.add_parser(
        'timing', help="Time ratio of nonparametric over parametric solves.")
    _add_mesh_arguments(parser_timing)
    parser_timing.add_argument('--levels', type=parse_levels,
                               help="Cells per side (default: 32,...,256).")
    parser_timing.add_argument('--ctilde', type=float)
    parser_timing.add_argument('--repeats', type=int,
                               help="Runs per measurement, at least 3 "
                                    "(default: dssy.timing_repeats).")
    _add_output_arguments(parser_timing)

    # --- Command: verify ---
    parser_verify = subparsers.add_parser(
        'verify', help="Run the element and assembly property checks.")
    parser_verify.add_argument('--samples', type=int,
                               help="Random samples per check "
                                    "(default: dssy.verify_samples).")
    parser_verify.add_argument('--seed', type=int)

    return parser


def run_cli(argv: Optional[List[str]] = None, stdout=None,
            stderr=None) -> int:
    """
    Run one sub-command and return the process exit code: 0 on success,
    2 on bad flags, 1 on any other failure.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        settings = load_settings(args.config)
        setup_logging(args.config)
        handler = BenchHandler(SolverService(settings), settings, stdout)
        run = getattr(handler, f"{args.command}_handler")
        payload = run(args)
    except DssyError as exc:
        print(f"error: {exc.message}", file=stderr)
        return exc.exit_code

    if payload.get('message'):
        print(payload['message'], file=stdout)
    return 1 if payload['error'] else 0


def main():  # pragma: no cover
    sys.exit(run_cli())


if __name__ == "__main__":  # pragma: no cover
    main()
