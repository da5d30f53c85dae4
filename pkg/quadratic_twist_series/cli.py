import argparse
import json
import logging
import sys
from typing import Any, Optional, Sequence

from quadratic_twist_series.config import (
    RunConfig,
    build_curve,
    run_config_from_args,
    validate_run_config,
)
from quadratic_twist_series.constants import (
    DEFAULT_REPLICATES,
    DEFAULT_SEED,
    EXIT_CONFIG_ERROR,
    EXIT_DOMAIN_ERROR,
    EXIT_OK,
    MEMBERSHIP_MODES,
    OUTPUT_FORMATS,
    RNG_NAME,
    SERIES_NAMES,
    ZETA_DEFAULT_TOLERANCE,
)
from quadratic_twist_series.exceptions import (
    ConfigError,
    DomainError,
    OutputInvalidException,
)
from quadratic_twist_series.export import (
    report_to_dict,
    write_report_json,
    write_rows_to_csv,
)
from quadratic_twist_series.heuristics import (
    default_annulus_model,
    heuristic_bound_report,
    run_stats,
)
from quadratic_twist_series.lattice import (
    decompose_pair,
    omega_d,
    q_partial,
    r_via_lattices,
    shortest_vectors,
)
from quadratic_twist_series.objects import Curve, SumReport, TwistTriple
from quadratic_twist_series.parse.string_cleaning import format_window
from quadratic_twist_series.psi import histogram_rows, rank_mine
from quadratic_twist_series.series import r_partial, s_partial
from quadratic_twist_series.validation.suite import run_verification

logger = logging.getLogger(__name__)

STATS_COLUMNS = ("B", "C", "observed", "model_mean", "model_std", "log4_reference")
RANK_COLUMNS = ("D", "count", "sample_witnesses", "sample_points")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--curve",
        required=True,
        help="Coefficients 'a,b,c' of y^2 = x^3 + ax^2 + bx + c, e.g. '0,-1,0'",
    )
    parser.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default="json",
        help="Report format. CSV is written with a stable column order",
    )
    parser.add_argument(
        "-o",
        "--output",
        help="Path to which the report will be written. If omitted, the report goes to standard output",
    )
    parser.add_argument(
        "-s",
        "--sep",
        default=",",
        help="Character used to separate fields in CSV output. If this character appears within the output cells themselves, an error is raised",
    )
    parser.add_argument(
        "--workers",
        type=int,
        help="Number of worker processes (default: the TWIST_SERIES_WORKERS environment variable, else 1)",
    )
    parser.add_argument(
        "-q",
        "--quiet",
        help="Add this flag to only log warnings and errors",
        action="store_true",
    )
    parser.add_argument(
        "--debug",
        help="Enable debug logging",
        action="store_true",
    )


def build_arg_parser() -> argparse.ArgumentParser:
    arg_parser = argparse.ArgumentParser(
        prog="twist-series",
        description="Truncated twist-counting series of the elliptic curve y^2 = x^3 + ax^2 + bx + c",
    )
    subparsers = arg_parser.add_subparsers(dest="command", required=True)

    sum_parser = subparsers.add_parser("sum", help="Evaluate a truncated series S, R, RL or Q")
    sum_parser.add_argument("--series", choices=SERIES_NAMES, default="S")
    sum_parser.add_argument("--j", type=float, default=1.0, help="Exponent of the height")
    sum_parser.add_argument("--k", type=float, default=1.0, help="Exponent of the twist, k > 1/2")
    sum_parser.add_argument("--box", type=int, default=10, help="Box size N for S, R and RL")
    sum_parser.add_argument("--B", type=int, default=10, help="Truncation dd' <= B for Q")
    sum_parser.add_argument(
        "--window",
        help="Open intervals for x = u/v, e.g. '-inf..-2,2..inf'. Omit for the whole line",
    )
    sum_parser.add_argument("--membership", choices=MEMBERSHIP_MODES, default="strict_psi")
    sum_parser.add_argument(
        "--breakdown",
        action="store_true",
        help="Also report the contribution of every twist D (S, R) or every t (RL)",
    )

    rank_parser = subparsers.add_parser("rank", help="Histogram of the twists met in a box")
    rank_parser.add_argument("--box", type=int, default=100)
    rank_parser.add_argument("--window")
    rank_parser.add_argument("--top", type=int, help="Keep only the most frequent twists")

    omega_parser = subparsers.add_parser("omega", help="Roots of f modulo d^2")
    omega_parser.add_argument("--d", type=int, required=True)

    reduce_parser = subparsers.add_parser("reduce", help="Successive minima of L(alpha, d, d')")
    reduce_parser.add_argument("--alpha", type=int, required=True)
    reduce_parser.add_argument("--d", type=int, required=True)
    reduce_parser.add_argument("--d-prime", dest="d_prime", type=int, required=True)

    decompose_parser = subparsers.add_parser(
        "decompose", help="The triple (alpha, d, d') whose lattice holds (u, v) for t"
    )
    decompose_parser.add_argument("--u", type=int, required=True)
    decompose_parser.add_argument("--v", type=int, required=True)
    decompose_parser.add_argument("--t", type=int, required=True)

    stats_parser = subparsers.add_parser(
        "stats", help="Observed short vectors against the random-annulus model"
    )
    stats_parser.add_argument(
        "--B", dest="B_values", default="10,20,40", help="Comma-separated truncations B"
    )
    stats_parser.add_argument("--C", type=float, default=1.0)
    stats_parser.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    stats_parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Seed of {RNG_NAME}")
    stats_parser.add_argument("--j", type=float, default=5.0, help="j of the heuristic bound")
    stats_parser.add_argument("--k", type=float, default=1.0, help="k of the heuristic bound")
    stats_parser.add_argument("--T", type=int, default=1000, help="Range of the heuristic bound")

    verify_parser = subparsers.add_parser("verify", help="Run the invariant suite")
    verify_parser.add_argument(
        "--zeta-tolerance", dest="zeta_tolerance", type=float, default=ZETA_DEFAULT_TOLERANCE
    )

    for parser in subparsers.choices.values():
        _add_common_arguments(parser)
    return arg_parser


def _sum_report(curve: Curve, config: RunConfig) -> SumReport:
    if config.series == "Q":
        return q_partial(curve, config.j, config.k, config.B, config.membership, config.workers)
    if config.series == "RL":
        return r_via_lattices(curve, config.sum_params, config.workers)
    evaluate = s_partial if config.series == "S" else r_partial
    return evaluate(curve, config.sum_params, config.breakdown, config.workers)


def _sum_rows(report: SumReport) -> list[dict]:
    if report.breakdown is None:
        return [{"key": "value", "value": repr(report.value)}]
    return [{"key": key, "value": repr(value)} for key, value in report.breakdown.items()]


def _rank_rows_for_csv(rows: list[dict]) -> list[dict]:
    return [
        {
            "D": row["D"],
            "count": row["count"],
            "sample_witnesses": " ".join(f"({u} {v})" for u, v in row["sample_witnesses"]),
            "sample_points": " ".join(f"({x} {y})" for x, y in row["sample_points"]),
        }
        for row in rows
    ]


def _document(config: RunConfig, params: dict, result: Any, **extra: Any) -> dict:
    """Wraps a command result together with the curve and parameters that produced it"""
    return {
        "curve": list(config.curve),
        "command": config.command,
        "params": params,
        **extra,
        "result": report_to_dict(result),
    }


def _emit(config: RunConfig, document, rows: list[dict], fieldnames: Sequence[str]) -> None:
    if config.output_format == "csv":
        write_rows_to_csv(rows, fieldnames, config.output_path, config.sep)
    else:
        write_report_json(document, config.output_path)


def run(config: RunConfig) -> int:
    """Dispatches a validated configuration and writes its report; returns the exit status"""
    validate_run_config(config)
    curve = build_curve(config)
    logger.info("curve y^2 = x^3 + %dx^2 + %dx + %d, command '%s'", *config.curve, config.command)

    if config.command == "sum":
        report = _sum_report(curve, config)
        _emit(config, report, _sum_rows(report), ("key", "value"))
    elif config.command == "rank":
        histogram = rank_mine(curve, config.N, config.window, config.top, workers=config.workers)
        rows = histogram_rows(curve, histogram)
        document = _document(
            config,
            {"box": config.N, "window": format_window(config.window), "top": config.top},
            rows,
            total_pairs=histogram.total_pairs,
        )
        _emit(config, document, _rank_rows_for_csv(rows), RANK_COLUMNS)
    elif config.command == "omega":
        root_set = omega_d(curve, config.d)
        document = _document(config, {"d": config.d}, root_set)
        _emit(config, document, [{"alpha": alpha} for alpha in root_set.residues], ("alpha",))
    elif config.command == "reduce":
        reduced = shortest_vectors(curve, TwistTriple(config.alpha, config.d, config.d_prime))
        row = {
            "omega": f"({reduced.omega[0]} {reduced.omega[1]})",
            "omega_prime": f"({reduced.omega_prime[0]} {reduced.omega_prime[1]})",
            "norm_sq": reduced.norm_sq,
            "in_psi": reduced.in_psi,
            "F_nonzero": reduced.F_nonzero,
            "tied": reduced.tied,
        }
        document = _document(
            config, {"alpha": config.alpha, "d": config.d, "d_prime": config.d_prime}, reduced
        )
        _emit(config, document, [row], tuple(row))
    elif config.command == "decompose":
        triple = decompose_pair(curve, config.u, config.v, config.t)
        document = _document(config, {"u": config.u, "v": config.v, "t": config.t}, triple)
        _emit(config, document, [triple._asdict()], triple._fields)
    elif config.command == "stats":
        model = default_annulus_model(curve, config.seed)
        rows = run_stats(
            curve, config.B_values, config.C, config.replicates, model=model, workers=config.workers
        )
        bound = heuristic_bound_report(config.j, config.k, model.C1, config.T)
        params = {
            "B": list(config.B_values),
            "C": config.C,
            "replicates": config.replicates,
            "seed": config.seed,
            "j": config.j,
            "k": config.k,
            "T": config.T,
        }
        document = _document(
            config,
            params,
            rows,
            rng=RNG_NAME,
            model=report_to_dict(model),
            bound=report_to_dict(bound),
        )
        _emit(config, document, rows, STATS_COLUMNS)
    elif config.command == "verify":
        verification = run_verification(curve, config.workers, config.zeta_tolerance)
        rows = [
            {"check": result["check"], "passed": result["passed"]}
            for result in verification["checks"]
        ]
        document = {
            **verification,
            "command": config.command,
            "params": {"zeta_tolerance": config.zeta_tolerance},
        }
        _emit(config, document, rows, ("check", "passed"))
        if not verification["passed"]:
            logger.error(
                "first counterexample: %s", json.dumps(verification["first_counterexample"])
            )
            return EXIT_DOMAIN_ERROR
    return EXIT_OK


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.quiet:
        level = logging.WARNING
    if args.debug:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return run(run_config_from_args(args))
    except (ConfigError, OutputInvalidException) as e:
        logger.error("ERROR: %s", e)
        return EXIT_CONFIG_ERROR
    except DomainError as e:
        logger.error("ERROR: %s", e)
        if args.debug:
            logger.exception("traceback")
        return EXIT_DOMAIN_ERROR


def run_cli() -> None:
    """The entrypoint of the CLI tool 'twist-series'"""
    sys.exit(main())


if __name__ == "__main__":
    run_cli()
