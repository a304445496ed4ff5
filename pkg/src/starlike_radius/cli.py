"""Command-line entry point: ``starlike-radius <command> [options]``."""

from __future__ import annotations

import argparse
import sys
from typing import List, NoReturn

from . import api
from .config.schema import StarlikeConfig
from .core.context import ContextAdapter
from .core.errors import DomainError, StarlikeError, exit_code_for
from .envelope import Family, check_supported
from .formatters.table import RECORD_FIELDS, SWEEP_FIELDS, TABLE_FIELDS, render
from .jobs import METHODS, JobSpec, oracle_radius, radius_record, solve, table_records
from .regions import ALL_KINDS, RegionSpec
from .sweep import SWEEP_PARAMS, SweepPlan, run_sweep
from .utils.paths import write_output
from .verify import raise_for_failures, render_report, run_verification
from .version import __version__

__all__ = ["build_parser", "main"]

_FAMILIES = [family.value for family in Family]
_REGIONS = [kind.value for kind in ALL_KINDS]


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--log-level", default=None, help="logging level name (default from configuration)")
    common.add_argument("--log-format", choices=("text", "jsonl"), default=None)
    common.add_argument("--tol", type=float, default=None, help="root bracket width")
    common.add_argument("--scan-n", type=int, default=None, help="scan intervals for the first sign change")
    return common


def _point_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, choices=_FAMILIES)
    parser.add_argument("--b", type=float, required=True)
    parser.add_argument("--c", type=float, default=0.0, help="ignored for f3")


def _region_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--region", required=True, choices=_REGIONS)
    parser.add_argument("--alpha", type=float, default=0.0, help="half-plane order")
    parser.add_argument("--gamma", type=float, default=1.0, help="sector order")


def _output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--output", default=None, help="output file (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="starlike-radius", description="Radii of starlikeness for quotient classes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    radius = sub.add_parser("radius", parents=[common], help="radius for one class and region")
    _point_arguments(radius)
    _region_arguments(radius)
    radius.add_argument("--method", choices=METHODS, default="crossing")
    radius.add_argument("--oracle", action="store_true", help="also measure the extremal by brute force")
    _output_arguments(radius)

    table = sub.add_parser("table", parents=[common], help="every supported region for one class")
    _point_arguments(table)
    table.add_argument("--alpha", type=float, default=0.0)
    table.add_argument("--gamma", type=float, default=1.0)
    table.add_argument("--no-oracle", action="store_true", help="skip the brute-force column")
    _output_arguments(table)

    sweep = sub.add_parser("sweep", parents=[common], help="radius along a one-parameter grid")
    _point_arguments(sweep)
    _region_arguments(sweep)
    sweep.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    sweep.add_argument("--from", dest="start", type=float, required=True)
    sweep.add_argument("--to", dest="stop", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--method", choices=METHODS, default="crossing")
    sweep.add_argument("--workers", type=int, default=None)
    _output_arguments(sweep)

    verify = sub.add_parser("verify", parents=[common], help="run the self-verification suite")
    verify.add_argument("--skip-oracle", action="store_true")
    verify.add_argument("--output", default=None)

    plot = sub.add_parser("plot", parents=[common], help="SVG of the extremal image at the radius")
    _point_arguments(plot)
    _region_arguments(plot)
    plot.add_argument("--output", required=True)
    return parser


def _with_oracle(args: argparse.Namespace) -> bool:
    if args.command == "radius":
        return bool(args.oracle)
    if args.command == "table":
        return not args.no_oracle
    if args.command == "verify":
        return not args.skip_oracle
    return False


def _job(args: argparse.Namespace) -> JobSpec:
    """Translate parsed arguments into a job; region parameters are validated here."""

    family = getattr(args, "family", None)
    region = getattr(args, "region", None)
    alpha = getattr(args, "alpha", 0.0)
    gamma = getattr(args, "gamma", 1.0)
    return JobSpec(
        command=args.command,
        family=Family(family) if family else None,
        b=getattr(args, "b", 0.0),
        c=getattr(args, "c", 0.0),
        region=RegionSpec.parse(region, alpha=alpha, gamma=gamma) if region else None,
        alpha=alpha,
        gamma=gamma,
        output=getattr(args, "output", None),
        format=getattr(args, "format", None),
        tol=args.tol,
        scan_n=args.scan_n,
        log_level=args.log_level,
        log_format=args.log_format,
        method=getattr(args, "method", "crossing"),
        with_oracle=_with_oracle(args),
        param=getattr(args, "param", None),
        start=getattr(args, "start", 0.0),
        stop=getattr(args, "stop", 0.0),
        steps=getattr(args, "steps", 0),
        workers=getattr(args, "workers", None),
    )


def _cmd_radius(job: JobSpec, config: StarlikeConfig, log: ContextAdapter) -> None:
    params, region = job.params(), job.target()
    check_supported(params, region)
    result = solve(params, region, config, job.method)
    oracle = oracle_radius(params, region, config) if job.with_oracle else None
    record = radius_record(params, region, result, oracle=oracle)
    lo, hi = result.bracket
    log.info(
        "%s on %s: radius %.12g (%s, residual %.3g, bracket [%.12g, %.12g])",
        params.describe(),
        region.label(),
        result.radius,
        result.method.value,
        result.residual,
        lo,
        hi,
    )
    write_output(render([record], RECORD_FIELDS, config.output.format, config.output.digits), job.output)


def _cmd_table(job: JobSpec, config: StarlikeConfig, log: ContextAdapter) -> None:
    rows = table_records(job.params(), config, alpha=job.alpha, gamma=job.gamma, with_oracle=job.with_oracle)
    log.info("%d regions tabulated", len(rows))
    write_output(render(rows, TABLE_FIELDS, config.output.format, config.output.digits), job.output)


def _cmd_sweep(job: JobSpec, config: StarlikeConfig, log: ContextAdapter) -> None:
    plan = SweepPlan(
        family=job.require_family(),
        b=job.b,
        c=job.c,
        region=job.target(),
        param=job.param or "",
        start=job.start,
        stop=job.stop,
        steps=job.steps,
        method=job.method,
    )
    rows = run_sweep(plan, config)
    log.info("swept %s over %d points", plan.param, len(rows))
    write_output(render(rows, SWEEP_FIELDS, config.output.format, config.output.digits), job.output)


def _cmd_verify(job: JobSpec, config: StarlikeConfig, log: ContextAdapter) -> None:
    report = run_verification(config, skip_oracle=not job.with_oracle)
    write_output(render_report(report), job.output)
    log.info("%d checks, %d failed", len(report.checks), len(report.failures))
    raise_for_failures(report)


def _cmd_plot(job: JobSpec, config: StarlikeConfig, log: ContextAdapter) -> None:
    from .plot import render_contact_plot

    params, region = job.params(), job.target()
    result = solve(params, region, config)
    if result.whole_disk:
        raise DomainError(f"no finite radius for {params.describe()} on {region.label()}")
    target = render_contact_plot(params, region, result.radius, job.output)
    log.info("contact plot at r=%.12g written to %s", result.radius, target)


_COMMANDS = {
    "radius": _cmd_radius,
    "table": _cmd_table,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "plot": _cmd_plot,
}


def main(argv: List[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = _job(args)
        config = api.configure(job.overrides())
        log = api.get_context_logger(__name__, command=job.command)
        if job.family is not None:
            log.add_context(family=job.family.value, b=job.b)
        if job.region is not None:
            log.add_context(region=job.region.name)
        log.debug("running %s", job.command)
        _COMMANDS[job.command](job, config, log)
    except StarlikeError as exc:
        code = exit_code_for(exc)
        print(f"starlike-radius: {exc}", file=sys.stderr)
        return code
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
