"""Command-line entry point: bound, sweep and verify subcommands.

    python -m src.main bound --eps 2 --mean 0 --variance 1 --sup 0.05399
    python -m src.main sweep --oracle poisson --lambda 4 --format json
    python -m src.main verify --only entropy
"""

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Optional, Sequence

from .bounds.core import (
    MomentSpec1D,
    MomentSpecMulti,
    bound_multivariate_improved,
    build_bound_report,
    validate_epsilon,
)
from .bounds.discrete import build_discrete_report
from .config import Config, load_config
from .oracles.base import OracleKind
from .oracles.montecarlo import MIN_SAMPLES
from .oracles.registry import ORACLES, build_oracle
from .report.serialize import FORMATS, quantize, serialize, write_output
from .report.sweep import (
    BoundViolationError,
    OracleRef,
    SweepConfig,
    SweepConfigError,
    grid_values,
    parse_grid,
    run_sweep,
)
from .ui.terminal import TerminalReporter
from .verify.suite import GROUPS, VerificationSuite, failed

logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# CLI flag -> oracle constructor parameter
ORACLE_FLAGS = {
    "mu": "mu",
    "sigma": "sigma",
    "scale": "scale",
    "lo": "lo",
    "hi": "hi",
    "rate": "rate",
    "lam": "lam",
    "n": "n",
    "p": "p",
    "pmf": "pmf",
    "dim": "dim",
}

DEFAULT_SWEEP_BOUNDS = {
    OracleKind.CONTINUOUS_1D: ["theorem", "corollary", "chebyshev"],
    OracleKind.CONTINUOUS_MULTI: ["chen", "multivariate"],
    OracleKind.DISCRETE: ["chebyshev", "discrete_theorem", "discrete_corollary"],
}


class UsageError(ValueError):
    """Invalid combination of command-line inputs."""


def setup_logging(config: Config, verbosity: int):
    """Configure the root logger on stderr (plus optional file); stdout stays for results."""
    level = getattr(logging, config.logging.level)
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = min(level, logging.INFO)

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.logging.file is not None:
        handlers.append(logging.FileHandler(config.logging.file))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _scalar_or_list(values):
    if values is None:
        return None
    return values[0] if len(values) == 1 else list(values)


def oracle_params(args: argparse.Namespace) -> dict:
    """Collect the oracle parameters given on the command line."""
    params = {}
    for attr, name in ORACLE_FLAGS.items():
        value = getattr(args, attr, None)
        if value is None:
            continue
        if attr in ("lo", "hi"):
            value = _scalar_or_list(value)
        elif attr == "pmf":
            try:
                value = json.loads(value)
            except json.JSONDecodeError as e:
                raise UsageError(f"--pmf is not valid JSON: {e}") from e
            if not isinstance(value, dict):
                raise UsageError('--pmf must be a JSON object such as {"0": 0.5, "1": 0.5}')
        params[name] = value
    return params


def _quantized(payload, digits: int):
    if isinstance(payload, dict):
        return {k: _quantized(v, digits) for k, v in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_quantized(v, digits) for v in payload]
    if isinstance(payload, float):
        return quantize(payload, digits)
    return payload


def _emit_json(payload: dict, digits: int):
    sys.stdout.write(json.dumps(_quantized(payload, digits), indent=2) + "\n")


def cmd_bound(args: argparse.Namespace, config: Config) -> int:
    eps = validate_epsilon(args.eps)
    raw_flags = [args.mean, args.variance, args.sup, args.cov_det]
    raw_mode = any(v is not None for v in raw_flags)
    if raw_mode and args.oracle:
        raise UsageError("give either --oracle or raw moments (--mean/--variance/--sup), not both")
    if not raw_mode and not args.oracle:
        raise UsageError("give --oracle NAME or raw moments --mean, --variance and --sup")

    solver_options = config.solver_options()
    if raw_mode:
        if args.cov_det is not None or args.dim is not None:
            if args.dim is None or args.cov_det is None or args.sup is None:
                raise UsageError("multivariate raw input needs --dim, --cov-det and --sup")
            spec = MomentSpecMulti(dim=args.dim, cov_det=args.cov_det, sup_density_on_tail=args.sup)
            payload = {"epsilon": eps, **asdict(bound_multivariate_improved(eps, spec))}
        else:
            if args.mean is None or args.variance is None or args.sup is None:
                raise UsageError("raw input needs --mean, --variance and --sup")
            spec = MomentSpec1D(mean=args.mean, variance=args.variance, sup_density_on_tail=args.sup)
            payload = build_bound_report(eps, spec, **solver_options).to_dict()
    else:
        oracle = build_oracle(args.oracle, oracle_params(args))
        if oracle.kind == OracleKind.CONTINUOUS_1D:
            payload = build_bound_report(eps, oracle.moment_spec(eps), **solver_options).to_dict()
        elif oracle.kind == OracleKind.CONTINUOUS_MULTI:
            payload = {"epsilon": eps, **asdict(bound_multivariate_improved(eps, oracle.moment_spec(eps)))}
        else:
            payload = build_discrete_report(eps, oracle.spec, **solver_options).to_dict()

    _emit_json(payload, config.output.significant_digits)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, config: Config) -> int:
    if args.oracle not in ORACLES:
        raise SweepConfigError(f"unknown oracle {args.oracle!r}; choose from {', '.join(sorted(ORACLES))}")
    kind = ORACLES[args.oracle].kind

    if args.grid:
        eps_grid = parse_grid(args.grid)
    else:
        grid = config.sweeps.discrete if kind == OracleKind.DISCRETE else config.sweeps.continuous
        eps_grid = grid_values(grid.start, grid.stop, grid.step)

    if args.bounds is None:
        bounds = DEFAULT_SWEEP_BOUNDS[kind]
    else:
        bounds = [b.strip() for b in args.bounds.split(",") if b.strip()]

    sweep_config = SweepConfig(
        oracle=OracleRef(name=args.oracle, params=oracle_params(args)),
        eps_grid=eps_grid,
        bounds=bounds,
        output_format=args.format,
        validity_slack=config.tolerances.validity_slack,
        workers=args.workers or config.sweeps.workers,
    )
    rows = run_sweep(sweep_config, config.solver_options())
    payload = serialize(rows, sweep_config.output_format, config.output.significant_digits)

    if args.output:
        path = Path(args.output)
        if not path.is_absolute():
            path = config.output.directory / path
        write_output(payload, path)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    if args.mc_samples is not None and args.mc_samples < MIN_SAMPLES:
        raise UsageError(f"--mc-samples must be at least {MIN_SAMPLES}")
    suite = VerificationSuite(config, seed=args.seed, mc_samples=args.mc_samples)
    results = suite.run(args.only)
    TerminalReporter().show_checks(results)
    failures = failed(results)
    if failures:
        logger.error(f"{len(failures)} of {len(results)} checks failed")
        return EXIT_FAILURE
    return EXIT_OK


def _add_oracle_arguments(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("oracle parameters")
    group.add_argument("--oracle", choices=sorted(ORACLES), help="Distribution from the zoo")
    group.add_argument("--mu", type=float, help="Location (normal, laplace)")
    group.add_argument("--sigma", type=float, help="Standard deviation (normal)")
    group.add_argument("--scale", type=float, help="Scale b (laplace)")
    group.add_argument("--lo", type=float, nargs="+", help="Lower edge(s) (uniform, bivariate_uniform)")
    group.add_argument("--hi", type=float, nargs="+", help="Upper edge(s) (uniform, bivariate_uniform)")
    group.add_argument("--rate", type=float, help="Rate (exponential)")
    group.add_argument("--lambda", dest="lam", type=float, help="Mean (poisson)")
    group.add_argument("--n", type=int, help="Trials (binomial)")
    group.add_argument("--p", type=float, help="Success probability (binomial, geometric)")
    group.add_argument("--pmf", help='Explicit pmf as JSON, e.g. \'{"0": 0.25, "1": 0.5, "2": 0.25}\'')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML config (default: ./config.yaml if present)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(
        prog="chebyshev-bounds",
        description="Chebyshev tail bounds sharpened by a density supremum on the tail set",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", parents=[common], help="Compute every bound for one epsilon")
    bound.add_argument("--eps", type=float, required=True, help="Deviation threshold in standard deviations")
    raw = bound.add_argument_group("raw moments")
    raw.add_argument("--mean", type=float)
    raw.add_argument("--variance", type=float)
    raw.add_argument("--sup", type=float, help="Density supremum on the tail set")
    raw.add_argument("--cov-det", dest="cov_det", type=float, help="det(Sigma) for multivariate raw input")
    raw.add_argument("--dim", type=int, help="Dimension (raw multivariate input, or mvnormal)")
    _add_oracle_arguments(bound)
    bound.set_defaults(func=cmd_bound)

    sweep = sub.add_parser("sweep", parents=[common], help="Tabulate exact tails and bounds over a grid")
    _add_oracle_arguments(sweep)
    sweep.add_argument("--dim", type=int, help="Dimension (mvnormal)")
    sweep.add_argument("--grid", help="start:stop:step or a comma list (default from config)")
    sweep.add_argument("--bounds", help="Comma list of bound columns (default depends on oracle kind)")
    sweep.add_argument("--format", choices=FORMATS, default="csv")
    sweep.add_argument("--output", help="Output file; relative paths resolve against output.directory")
    sweep.add_argument("--workers", type=int, help="Threads for row evaluation")
    sweep.set_defaults(func=cmd_sweep)

    verify = sub.add_parser("verify", parents=[common], help="Run the property suite")
    verify.add_argument("--only", action="append", choices=GROUPS, help="Run only this group (repeatable)")
    verify.add_argument("--seed", type=int, help="Monte Carlo and property-suite seed")
    verify.add_argument("--mc-samples", dest="mc_samples", type=int, help="Monte Carlo draws per check")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.command == "sweep" and args.oracle is None:
        sys.stderr.write("error: sweep needs --oracle\n")
        return EXIT_USAGE

    try:
        config = load_config(args.config)
    except (FileNotFoundError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE

    setup_logging(config, args.verbose)

    try:
        return args.func(args, config)
    except BoundViolationError as e:
        logger.error(f"Bound violation: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAILURE
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
