"""CLI entry point for pearcey-gap."""

import argparse
import asyncio
import logging
import sys
import traceback
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from .asymptotics import FitReport, fit_constant, synthetic_samples
from .checks import CheckRegistry
from .config import SUITES, RunConfig, load_config
from .context import ComputeContext
from .errors import ContourIntegralError, DiscretizationError, FitError, QuadratureError
from .fredholm import GapResult, convergence_table, fredholm_logdet
from .pearcey_fn import PearceyParams
from .report import CHART_COLUMNS, FIT_COLUMNS, GAP_COLUMNS, TABLE_COLUMNS, to_csv, to_json, verify_payload
from .surface import sign_chart

# Setup logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler(sys.stderr)],
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_FAILURE = 2

CONVERGENCE_ERRORS = (QuadratureError, DiscretizationError, ContourIntegralError, FitError)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with default settings")
    common.add_argument("--out", type=Path, help="Output file (stdout otherwise)")
    common.add_argument("--format", choices=["csv", "json"], help="Output format")
    common.add_argument("--threads", type=int, help="Worker threads (overrides PEARCEY_THREADS)")
    common.add_argument("--tolerance", type=float, help="Pearcey quadrature tolerance")
    common.add_argument("--verbose", action="store_true", default=None, help="Debug logging")
    common.add_argument("--quiet", action="store_true", default=None, help="Warnings and errors only")
    return common


def _gap_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s", type=float, help="Half-length of the gap interval")
    parser.add_argument("--s-range", dest="s_range", help="Grid of s values as a:b:n")
    parser.add_argument("--rho", type=float, help="Pearcey parameter")
    parser.add_argument("--m", type=int, help="Nystrom node count (even)")


def create_parser() -> argparse.ArgumentParser:
    """Create and configure argument parser for the CLI.

    Returns:
        argparse.ArgumentParser: Configured argument parser
    """
    parser = argparse.ArgumentParser(description="Pearcey gap probability toolkit")
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    gap = sub.add_parser("gap", parents=[common], help="ln det(I - K) on (-s, s) with derivatives")
    _gap_options(gap)

    fit = sub.add_parser("fit-c", parents=[common], help="Fit the constant of the large-gap expansion")
    _gap_options(fit)
    fit.add_argument("--synthetic", action="store_true", default=None, help="Fit generated data")
    fit.add_argument("--inject-c", dest="inject_c", type=float, help="Constant used by --synthetic")
    fit.add_argument("--extra-terms", dest="extra_terms", type=int, help="Further s^(-2k/3) powers")
    fit.add_argument(
        "--allow-window", dest="allow_window", action="store_true", default=None, help="Accept s outside [4, 8]"
    )

    verify = sub.add_parser("verify", parents=[common], help="Run the verification suites")
    verify.add_argument("--only", nargs="+", choices=SUITES, help="Restrict to these suites")
    verify.add_argument("--tol-scale", dest="tol_scale", type=float, help="Multiply every tolerance")

    chart = sub.add_parser("chart", parents=[common], help="Sign chart of Re(lambda_a* - lambda_b*)")
    for name in ("x-min", "x-max", "y-min", "y-max"):
        chart.add_argument(f"--{name}", dest=name.replace("-", "_"), type=float)
    chart.add_argument("--nx", type=int)
    chart.add_argument("--ny", type=int)

    table = sub.add_parser("table", parents=[common], help="Nystrom convergence table")
    _gap_options(table)
    table.add_argument("--ms", type=int, nargs="+", help="Node counts to tabulate")

    return parser


def _configure_logging(config: RunConfig) -> None:
    level = logging.DEBUG if config.verbose else logging.WARNING if config.quiet else logging.INFO
    logging.getLogger().setLevel(level)


def _emit(config: RunConfig, text: str) -> None:
    if config.out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        config.out.write_text(text)
        logger.info(f"📄 Wrote {config.out}")


def _gap_row(result: GapResult) -> dict[str, Any]:
    return {
        "s": result.s,
        "rho": result.rho,
        "m": result.m,
        "F": result.F,
        "est_error": result.est_error,
        "dF_ds": result.dF_ds,
        "dF_drho": result.dF_drho,
    }


async def cmd_gap(config: RunConfig, context: ComputeContext) -> int:
    params = PearceyParams(config.rho)

    def one(s: float) -> GapResult:
        return fredholm_logdet(s, params, config.m, config.tolerance, derivatives=True)

    results = await context.map(one, config.s_values)
    rows = [_gap_row(r) for r in results]
    if config.format == "json":
        _emit(config, to_json({"command": "gap", "rows": rows}))
    else:
        _emit(config, to_csv(GAP_COLUMNS, rows))
    return EXIT_OK


async def cmd_fit_c(config: RunConfig, context: ComputeContext) -> int:
    s_values = config.s_values
    if config.synthetic:
        samples = synthetic_samples(s_values, config.rho, config.inject_c)
    else:
        params = PearceyParams(config.rho)

        def one(s: float) -> tuple[float, float]:
            return s, fredholm_logdet(s, params, config.m, config.tolerance).F

        samples = await context.map(one, s_values)
    report: FitReport = fit_constant(samples, config.rho, config.extra_terms, config.allow_window)
    logger.info(f"✅ c_hat = {report.c_hat:.10g} ± {report.c_stderr:.2e}")
    if config.format == "csv":
        _emit(config, to_csv(FIT_COLUMNS, report.samples))
    else:
        _emit(config, to_json({"command": "fit-c", "rho": config.rho, **report.to_dict()}))
    return EXIT_OK


async def cmd_verify(config: RunConfig, context: ComputeContext) -> int:
    registry = CheckRegistry(context)
    results = await registry.run_all(config.only)
    payload = verify_payload(results)
    _emit(config, to_json({"command": "verify", **payload}))
    if payload["tolerance_limited"]:
        logger.warning(f"⚠️ Tolerance-limited checks: {', '.join(payload['tolerance_limited'])}")
    if not payload["passed"]:
        logger.error(f"❌ {len(payload['failed'])} check(s) failed: {', '.join(payload['failed'])}")
        return EXIT_CHECKS_FAILED
    logger.info(f"✅ All {len(results)} checks passed")
    return EXIT_OK


async def cmd_chart(config: RunConfig, context: ComputeContext) -> int:
    rows = await context.run(
        sign_chart, config.x_min, config.x_max, config.y_min, config.y_max, config.nx, config.ny
    )
    if config.format == "json":
        _emit(config, to_json({"command": "chart", "rows": [dict(zip(CHART_COLUMNS, r)) for r in rows]}))
    else:
        _emit(config, to_csv(CHART_COLUMNS, rows))
    return EXIT_OK


async def cmd_table(config: RunConfig, context: ComputeContext) -> int:
    s = config.s_values[0]
    half = config.m // 2 - (config.m // 2) % 2
    ms = config.ms or [max(4, half), config.m, 2 * config.m]
    rows = await context.run(convergence_table, s, PearceyParams(config.rho), ms, config.tolerance)
    if config.format == "json":
        _emit(config, to_json({"command": "table", "s": s, "rows": [dict(zip(TABLE_COLUMNS, r)) for r in rows]}))
    else:
        _emit(config, to_csv(TABLE_COLUMNS, rows))
    return EXIT_OK


COMMANDS = {
    "gap": cmd_gap,
    "fit-c": cmd_fit_c,
    "verify": cmd_verify,
    "chart": cmd_chart,
    "table": cmd_table,
}


async def async_main(argv: list[str] | None = None) -> int:
    """Async main entry point for the CLI application."""
    parser = create_parser()
    args = vars(parser.parse_args(argv))
    config_path = args.pop("config")
    try:
        config = load_config(config_path, args)
    except (ValidationError, ValueError, OSError) as e:
        logger.error(f"❌ Invalid configuration: {e}")
        return EXIT_FAILURE

    _configure_logging(config)
    logger.info(f"🚀 Running {config.command} with {config.resolved_threads} threads")

    context = ComputeContext(threads=config.threads, tol_scale=config.tol_scale)
    try:
        async with context:
            return await COMMANDS[config.command](config, context)
    except CONVERGENCE_ERRORS as e:
        logger.error(f"❌ {config.command} failed: {e}")
        logger.error(traceback.format_exc())
        return EXIT_FAILURE


def main(argv: list[str] | None = None) -> None:
    """Synchronous main entry point that runs the async main."""
    try:
        code = asyncio.run(async_main(argv))
    except KeyboardInterrupt:
        logger.info("👋 Stopped by user")
        code = EXIT_FAILURE
    except Exception as e:
        logger.error(f"❌ Fatal error: {e}")
        logger.error(traceback.format_exc())
        code = EXIT_FAILURE
    sys.exit(code)


if __name__ == "__main__":
    main()
