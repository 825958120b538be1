"""
Command-Line Interface

Usage:
    python -m madstat estimate --input data.csv --column x
    python -m madstat ci --input data.csv --column x --regime iid --level 95
    python -m madstat ci --input data.csv --regime mixing --bandwidth auto
    python -m madstat ci --input data.csv --regime iid --atom yes --mu 0
    python -m madstat ci --input data.csv --regime stable --alpha 1.5 --p 0.5 --xm 1
    python -m madstat mc-verify study.json --out report.json
    python -m madstat expansion-check --input data.csv --mu 0
    python -m madstat expansion-check --generator '{"kind": "iid_normal"}' --n 1000 --mu 0
    python -m madstat decay-curve --generator '{"kind": "iid_normal"}' --n-grid 100,1000,10000 --reps 200
    python -m madstat serve --port 8000

Reports are JSON on stdout (or --out). Logs go to stderr.

Exit codes:
    0  success
    2  validation or configuration error (bad flags, CSV cells, study files)
    3  numeric or domain error (regime mismatch, parameter outside its domain)
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from madstat import __version__
from madstat.config import Settings, configure_logging, load_settings
from madstat.models.generators import parse_generator
from madstat.models.interval import Regime
from madstat.models.limits import TailModel, TailShape
from madstat.models.study import VerifyConfig
from madstat.models.window import KernelType, LagWindowSpec
from madstat.services.data_io import artifact_path, read_column, write_column, write_report
from madstat.services.errors import ConfigError, DomainError, InputValidationError
from madstat.services.expansion import decompose, remainder_decay_curve
from madstat.services.intervals import gaussian_interval, stable_interval
from madstat.services.laws import law_mean
from madstat.services.mad_core import sample_mad, sign_balance
from madstat.services.simulate import generate
from madstat.services.verification import mc_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def parse_level(text: str) -> float:
    """Accept 95, 95% or 0.95."""
    value = float(text.rstrip("%"))
    if value > 1.0:
        value /= 100.0
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"level must be in (0, 1) or (0, 100): {text}")
    return value


def parse_grid(text: str) -> List[int]:
    try:
        return [int(float(part)) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text}")


def _add_input_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--input", type=Path, required=required, help="CSV file")
    parser.add_argument("--column", default=None, help="Column name or 0-based index")
    parser.add_argument("--no-header", action="store_true", help="The CSV has no header row")


def _add_generator_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--generator", default=None, help="Generator spec as JSON text")
    parser.add_argument("--generator-file", type=Path, default=None, help="Generator spec JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m madstat", description="Sample mean absolute deviation toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, default=None, help="KEY=value settings file")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    parser.add_argument("--seed", type=int, default=None, help="Seed (default from settings)")
    parser.add_argument("--out", type=Path, default=None, help="Write the JSON report here")
    commands = parser.add_subparsers(dest="command", required=True)

    estimate = commands.add_parser("estimate", help="Sample MAD and sign balance of a CSV column")
    _add_input_arguments(estimate)
    estimate.add_argument("--mu", type=float, default=None, help="Centre for the sign balance")

    ci = commands.add_parser("ci", help="Confidence interval for theta")
    _add_input_arguments(ci)
    ci.add_argument("--regime", choices=[regime.value for regime in Regime], required=True)
    ci.add_argument("--atom", choices=["yes", "no"], default="no", help="Declare an atom at --mu")
    ci.add_argument("--level", type=parse_level, default=0.95)
    ci.add_argument("--mu", type=float, default=None, help="Known population mean")
    ci.add_argument("--bandwidth", default="auto", help="'auto' or a lag count (mixing regime)")
    ci.add_argument("--kernel", choices=[kernel.value for kernel in KernelType], default="bartlett")
    ci.add_argument("--alpha", type=float, default=None, help="Tail index (stable regime)")
    ci.add_argument("--p", type=float, default=0.5, help="Right-tail share (stable regime)")
    ci.add_argument("--xm", type=float, default=1.0, help="Tail scale constant (stable regime)")
    ci.add_argument("--tail-shape", choices=[shape.value for shape in TailShape], default="pareto")
    ci.add_argument("--draws", type=int, default=None, help="Draws of the simulated limit")

    verify = commands.add_parser("mc-verify", help="Run a study and compare it with its limit law")
    verify.add_argument("study", type=Path, help="Verification config (JSON)")
    verify.add_argument("--workers", type=int, default=None, help="Processes for the replications")

    expansion = commands.add_parser("expansion-check", help="Exact expansion of sample_mad - oracle_mad")
    _add_input_arguments(expansion, required=False)
    _add_generator_arguments(expansion)
    expansion.add_argument("--n", type=int, default=None, help="Sample size for a generated sample")
    expansion.add_argument("--mu", type=float, default=None, help="Population mean (default: law mean)")

    decay = commands.add_parser("decay-curve", help="Empirical decay of |K_n|/n and the remainder")
    _add_generator_arguments(decay)
    decay.add_argument("--mu", type=float, default=None, help="Population mean (default: law mean)")
    decay.add_argument("--n-grid", type=parse_grid, default=[100, 1000, 10000])
    decay.add_argument("--reps", type=int, default=200)

    serve = commands.add_parser("serve", help="Run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


# ============================================================================
# COMMANDS
# ============================================================================

def _load_generator(args: argparse.Namespace):
    if args.generator_file is not None:
        return parse_generator(args.generator_file.read_text(encoding="utf-8"))
    if args.generator is not None:
        return parse_generator(args.generator)
    return None


def cmd_estimate(args: argparse.Namespace, settings: Settings, seed: int) -> dict:
    series = read_column(args.input, args.column, has_header=not args.no_header)
    centre = series.mean if args.mu is None else args.mu
    return {
        "command": "estimate",
        "n": series.n,
        "mean": series.mean,
        "sample_mad": sample_mad(series),
        "sign_balance": {"mu": centre, **sign_balance(series, centre).to_dict()},
    }


def cmd_ci(args: argparse.Namespace, settings: Settings, seed: int) -> dict:
    series = read_column(args.input, args.column, has_header=not args.no_header)
    regime = Regime(args.regime)
    draws = args.draws or settings.reference_draws
    if regime is Regime.STABLE:
        if args.alpha is None:
            raise ConfigError("--regime stable needs the tail index --alpha")
        if args.atom == "yes":
            raise ConfigError("the stable regime does not support an atom at the mean")
        tail = TailModel(alpha=args.alpha, p=args.p, x_m=args.xm, shape=TailShape(args.tail_shape))
        report = stable_interval(series, tail, args.level, args.mu, draws, seed)
    else:
        window = LagWindowSpec.parse(args.bandwidth, KernelType(args.kernel))
        report = gaussian_interval(series, args.level, regime, args.atom == "yes", args.mu, window, draws, seed)
    return {"command": "ci", "seed": seed, **report.to_dict()}


def cmd_mc_verify(args: argparse.Namespace, settings: Settings, seed: int) -> dict:
    if not args.study.is_file():
        raise InputValidationError(f"study config not found: {args.study}")
    cfg = VerifyConfig.load(args.study)
    outcome = mc_verify(cfg, workers=args.workers or settings.workers)
    study_csv = write_column(outcome.study.results, artifact_path(args.out, "study"), "statistic",
                             settings.csv_float_format)
    reference_csv = write_column(outcome.reference, artifact_path(args.out, "reference"), "reference",
                                 settings.csv_float_format)
    return {**outcome.report, "artifacts": {"study_csv": study_csv.name, "reference_csv": reference_csv.name}}


def cmd_expansion_check(args: argparse.Namespace, settings: Settings, seed: int) -> dict:
    gen = _load_generator(args)
    if args.input is not None:
        if args.mu is None:
            raise ConfigError("expansion-check on a CSV needs --mu")
        series = read_column(args.input, args.column, has_header=not args.no_header)
        mu = args.mu
    elif gen is not None:
        if args.n is None:
            raise ConfigError("expansion-check with a generator needs --n")
        series = generate(gen, args.n, seed)
        mu = law_mean(gen) if args.mu is None else args.mu
    else:
        raise ConfigError("expansion-check needs --input or --generator/--generator-file")
    report = decompose(series, mu)
    return {"command": "expansion-check", "mu": mu, **report.to_dict()}


def cmd_decay_curve(args: argparse.Namespace, settings: Settings, seed: int) -> dict:
    gen = _load_generator(args)
    if gen is None:
        raise ConfigError("decay-curve needs --generator or --generator-file")
    mu = law_mean(gen) if args.mu is None else args.mu
    rows = remainder_decay_curve(gen, mu, args.n_grid, args.reps, seed)
    return {
        "command": "decay-curve",
        "generator": gen.model_dump(mode="json"),
        "mu": mu,
        "seed": seed,
        "rows": [row.model_dump(mode="json") for row in rows],
    }


def cmd_serve(args: argparse.Namespace, settings: Settings, seed: int) -> Optional[dict]:
    import uvicorn

    uvicorn.run("madstat.main:app", host=args.host, port=args.port, log_level=settings.log_level.lower())
    return None


COMMANDS = {
    "estimate": cmd_estimate,
    "ci": cmd_ci,
    "mc-verify": cmd_mc_verify,
    "expansion-check": cmd_expansion_check,
    "decay-curve": cmd_decay_curve,
    "serve": cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(args.config, log_level=args.log_level)
    except ValidationError as exc:
        sys.stderr.write(f"error: invalid settings: {exc}\n")
        return EXIT_VALIDATION
    configure_logging(settings.log_level)
    seed = args.seed if args.seed is not None else settings.default_seed

    try:
        report = COMMANDS[args.command](args, settings, seed)
        if report is not None:
            write_report(report, args.out)
        return EXIT_OK
    except (InputValidationError, ConfigError, ValidationError, FileNotFoundError) as exc:
        logger.warning(f"Validation failed: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except DomainError as exc:
        logger.error(f"Domain error: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
