import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import List, Optional, Sequence

from mpmath import mp

from oscint.integrands import integrand_catalog
from oscint.methods import EulerMethod, HyperfunctionMethod, IntegrationMethod

from .reporting import ReportRow, SweepRow, get_formatter
from .run_config import FORMATS, METHODS, SWEEP_AXES, RunConfig, default_digits, parse_complex

logger = logging.getLogger(__name__)


def _method(name: str, config: RunConfig) -> IntegrationMethod:
    if name == HyperfunctionMethod.name:
        return HyperfunctionMethod(config.hyperfunction_config())
    return EulerMethod(config.euler_config())


def run_one(config: RunConfig, id: int, method: str) -> ReportRow:
    """Integrate one catalog entry with one method; stage errors end up in the row."""
    ctx = config.precision
    start = time.perf_counter()
    try:
        entry = integrand_catalog.get(id)
        reference = entry.reference(ctx)
        result = _method(method, config).integrate(entry.integrand)
    except Exception as err:
        logger.error(f"integral ({id}) with {method} failed: {type(err).__name__}: {err}")
        wall_time_ms = (time.perf_counter() - start) * 1e3
        return ReportRow(id=id, method=method, wall_time_ms=f"{wall_time_ms:.3f}", error=str(err))
    wall_time_ms = (time.perf_counter() - start) * 1e3
    return ReportRow.from_result(id, result, reference, wall_time_ms, ctx)


def _run_task(task) -> ReportRow:
    return run_one(*task)


def run(config: RunConfig) -> List[ReportRow]:
    """All requested (integral, method) pairs, ordered by id as given in the configuration."""
    tasks = [(config, id, method) for id in config.integrals for method in config.methods]
    if config.workers == 1:
        return [_run_task(task) for task in tasks]
    # mpmath keeps its precision in a process global context
    with ProcessPoolExecutor(max_workers=config.workers) as executor:
        return list(executor.map(_run_task, tasks))


def sweep(config: RunConfig, axis: str, values: Sequence[str]) -> List[SweepRow]:
    """One run per axis value, each row tagged with the axis and value."""
    if not values:
        raise ValueError("sweep needs at least one axis value")
    configs = [config.with_axis(axis, str(value)) for value in values]
    rows = []
    for value, swept in zip(values, configs):
        for row in run(swept):
            rows.append(SweepRow(**asdict(row), sweep_axis=axis, sweep_value=str(value)))
    return rows


def list_catalog(digits: int = 30) -> str:
    lines = []
    for id in integrand_catalog.ids():
        entry = integrand_catalog.get(id)
        reference = mp.nstr(entry.reference(), digits)
        lines.append(f"({id}) {entry.integrand.name}")
        lines.append(f"    {entry.description}")
        lines.append(f"    reference = {reference}")
    return "\n".join(lines) + "\n"


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    selection = parser.add_mutually_exclusive_group(required=True)
    selection.add_argument(
        "--integral", type=int, action="append", metavar="ID", help="catalog id (repeatable)"
    )
    selection.add_argument("--all", action="store_true", help="every catalog integral")
    parser.add_argument("--method", choices=METHODS, default="hyperfunction")
    parser.add_argument(
        "--digits",
        type=int,
        default=None,
        help="decimal digits (default: $OSCINT_DIGITS or 100)",
    )
    parser.add_argument("-N", "--n-coefficients", type=int, default=100, dest="n_coefficients")
    parser.add_argument("--zeta0", type=parse_complex, default=1j, help="expansion center, e.g. 1j")
    parser.add_argument("--panels", type=int, default=50, help="Euler panels K")
    parser.add_argument("--gl-points", type=int, default=100, dest="gl_points")
    parser.add_argument("--tol", default=None, help="convergent agreement tolerance")
    parser.add_argument("--format", choices=FORMATS, default="text", dest="output_format")
    parser.add_argument("--output", default=None, help="write the report to this file")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscint",
        description="Oscillatory integrals over (0, inf) by analytic continuation of the "
        "Fourier-Laplace transform, with an Euler-transform baseline.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="integrate catalog entries")
    _add_run_arguments(run_parser)

    sweep_parser = commands.add_parser("sweep", help="repeat a run over one parameter axis")
    _add_run_arguments(sweep_parser)
    sweep_parser.add_argument("--axis", choices=SWEEP_AXES, required=True)
    sweep_parser.add_argument("--values", nargs="+", required=True)

    list_parser = commands.add_parser("list", help="list the integral catalog")
    list_parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    integrals = tuple(integrand_catalog.ids()) if args.all else tuple(args.integral)
    return RunConfig(
        integrals=integrals,
        method=args.method,
        digits=args.digits if args.digits is not None else default_digits(),
        n_coefficients=args.n_coefficients,
        zeta0=args.zeta0,
        panels=args.panels,
        gl_points=args.gl_points,
        tol=args.tol,
        output_format=args.output_format,
        output=args.output,
        workers=args.workers,
    )


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        print(text, end="")
        return
    with open(output, "w", newline="") as f:
        f.write(text)
    logger.info(f"report written to {output}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    if args.command == "list":
        print(list_catalog(), end="")
        return 0

    try:
        config = config_from_args(args)
        if args.command == "sweep":
            for value in args.values:
                config.with_axis(args.axis, value)
    except ValueError as err:
        parser.error(str(err))

    if args.command == "run":
        rows = run(config)
    else:
        rows = sweep(config, args.axis, args.values)

    _emit(get_formatter(config.output_format).format(rows), config.output)
    failed = [row for row in rows if not row.ok]
    if failed:
        logger.warning(f"{len(failed)} of {len(rows)} runs failed")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
