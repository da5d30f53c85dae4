"""Run configuration assembled from the command line and validated before dispatch"""

from typing import NamedTuple, Optional

from quadratic_twist_series.constants import (
    DEFAULT_REPLICATES,
    DEFAULT_SEED,
    MEMBERSHIP_MODES,
    OUTPUT_FORMATS,
    SERIES_NAMES,
    ZETA_DEFAULT_TOLERANCE,
)
from quadratic_twist_series.curve import make_curve
from quadratic_twist_series.exceptions import ConfigError, RepeatedRootError
from quadratic_twist_series.objects import Curve, SumParams, WindowX
from quadratic_twist_series.parse.string_cleaning import (
    clean_curve_string,
    clean_window_string,
)
from quadratic_twist_series.utils.parallel import resolve_workers

SUBCOMMANDS = ("sum", "rank", "omega", "reduce", "decompose", "stats", "verify")


class RunConfig(NamedTuple):
    command: str
    curve: tuple[int, int, int]
    series: str = "S"
    j: float = 1.0
    k: float = 1.0
    N: int = 10
    B: int = 10
    B_values: tuple[int, ...] = (10,)
    C: float = 1.0
    T: int = 1000
    window: Optional[WindowX] = None
    membership: str = "strict_psi"
    breakdown: bool = False
    top: Optional[int] = None
    d: int = 1
    alpha: int = 0
    d_prime: int = 1
    u: int = 0
    v: int = 1
    t: int = 1
    seed: int = DEFAULT_SEED
    replicates: int = DEFAULT_REPLICATES
    zeta_tolerance: float = ZETA_DEFAULT_TOLERANCE
    workers: Optional[int] = None
    output_format: str = "json"
    output_path: Optional[str] = None
    sep: str = ","

    @property
    def sum_params(self) -> SumParams:
        return SumParams(j=self.j, k=self.k, N=self.N, window=self.window)


def _require(condition: bool, field: str, message: str) -> None:
    if not condition:
        raise ConfigError(field, message)


def validate_run_config(config: RunConfig) -> None:
    """Rejects a configuration with a ConfigError naming the offending field"""
    _require(config.command in SUBCOMMANDS, "command", f"unknown subcommand '{config.command}'")
    _require(config.series in SERIES_NAMES, "series", f"must be one of {SERIES_NAMES}")
    _require(config.j >= 0, "j", f"must be >= 0, got {config.j}")
    _require(config.k > 0.5, "k", f"must be > 1/2, got {config.k}")
    _require(config.N >= 1, "box", f"must be >= 1, got {config.N}")
    _require(config.B >= 1, "B", f"must be >= 1, got {config.B}")
    _require(
        len(config.B_values) > 0 and min(config.B_values) >= 2,
        "B",
        f"stats needs every B >= 2, got {config.B_values}",
    )
    _require(config.C > 0, "C", f"must be positive, got {config.C}")
    _require(config.T >= 2, "T", f"must be >= 2, got {config.T}")
    _require(
        config.membership in MEMBERSHIP_MODES,
        "membership",
        f"must be one of {MEMBERSHIP_MODES}",
    )
    _require(config.top is None or config.top >= 1, "top", f"must be >= 1, got {config.top}")
    _require(config.d >= 1, "d", f"must be >= 1, got {config.d}")
    _require(config.d_prime >= 1, "d_prime", f"must be >= 1, got {config.d_prime}")
    _require(config.t >= 1, "t", f"must be >= 1, got {config.t}")
    _require(0 <= config.seed < 2**64, "seed", f"must fit in 64 unsigned bits, got {config.seed}")
    _require(config.replicates >= 1, "replicates", f"must be >= 1, got {config.replicates}")
    _require(config.zeta_tolerance > 0, "zeta_tolerance", "must be positive")
    _require(
        config.output_format in OUTPUT_FORMATS,
        "format",
        f"must be one of {OUTPUT_FORMATS}",
    )
    _require(len(config.sep) == 1, "sep", f"must be a single character, got '{config.sep}'")
    resolve_workers(config.workers)


def build_curve(config: RunConfig) -> Curve:
    """A degenerate cubic on the command line is a configuration error"""
    try:
        return make_curve(*config.curve)
    except RepeatedRootError as e:
        raise ConfigError("curve", str(e)) from e


def _clean_int_list(raw_str: str, field: str) -> tuple[int, ...]:
    """
    Examples:
        >>> _clean_int_list("10, 20,40", "B")
        (10, 20, 40)
    """
    try:
        return tuple(int(part) for part in raw_str.split(",") if part.strip())
    except ValueError as e:
        raise ConfigError(field, f"expected comma-separated integers, got '{raw_str}'") from e


def run_config_from_args(args) -> RunConfig:
    """Builds a RunConfig from an argparse namespace; flags a subcommand does not
    define keep their defaults"""
    defaults = RunConfig(command=args.command, curve=(0, 0, 0))
    given = vars(args)

    def pick(name: str, field: Optional[str] = None):
        value = given.get(name)
        return getattr(defaults, field or name) if value is None else value

    B_values = given.get("B_values")
    return RunConfig(
        command=args.command,
        curve=clean_curve_string(args.curve),
        series=pick("series"),
        j=pick("j"),
        k=pick("k"),
        N=pick("box", "N"),
        B=pick("B"),
        B_values=_clean_int_list(B_values, "B") if B_values else defaults.B_values,
        C=pick("C"),
        T=pick("T"),
        window=clean_window_string(given.get("window")),
        membership=pick("membership"),
        breakdown=bool(given.get("breakdown")),
        top=given.get("top"),
        d=pick("d"),
        alpha=pick("alpha"),
        d_prime=pick("d_prime"),
        u=pick("u"),
        v=pick("v"),
        t=pick("t"),
        seed=pick("seed"),
        replicates=pick("replicates"),
        zeta_tolerance=pick("zeta_tolerance"),
        workers=given.get("workers"),
        output_format=pick("format", "output_format"),
        output_path=given.get("output"),
        sep=pick("sep"),
    )
