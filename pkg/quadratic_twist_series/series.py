"""Truncated evaluation of the twist series S and R over the box |u|, |v| <= N

S = sum over Psi of |s(F(u, v))|^-k h(u/v)^-j
R = sum over Psi and t >= 1 with t^2 | F(u, v) of t^2k |F(u, v)|^-k h(u/v)^-j

Only pairs with v > 0 are enumerated; each term is doubled for (-u, -v).
"""

import logging
import math
from functools import partial
from typing import Optional

from sympy import divisors

from quadratic_twist_series.arith import divisor_power_sum, squarefree_part
from quadratic_twist_series.curve import height_h
from quadratic_twist_series.exceptions import PreconditionError
from quadratic_twist_series.objects import Curve, SumParams, SumReport
from quadratic_twist_series.parse.string_cleaning import format_window
from quadratic_twist_series.psi import stripe_pairs
from quadratic_twist_series.utils.parallel import ordered_map, v_stripes
from quadratic_twist_series.utils.summation import CompensatedSum

logger = logging.getLogger(__name__)


def validate_params(params: SumParams) -> None:
    if params.j < 0:
        raise PreconditionError(f"j must be >= 0, got {params.j}")
    if params.k <= 0.5:
        raise PreconditionError(f"k must be > 1/2, got {params.k}")
    if params.N < 1:
        raise PreconditionError(f"box size N must be >= 1, got {params.N}")


def params_record(curve: Curve, params: SumParams) -> dict:
    return {
        "curve": list(curve.coefficients),
        "j": params.j,
        "k": params.k,
        "N": params.N,
        "window": format_window(params.window),
    }


def r_term(F: int, k: float) -> float:
    """Inner t-sum of R for one value F, through F = s m^2 and t^2 | F <=> t | m"""
    s, m = squarefree_part(F)
    return abs(s) ** -k * divisor_power_sum(m, 2 * k)


def r_term_direct(F: int, k: float) -> float:
    """Inner t-sum of R for one value F, looping over the divisors t of |F|

    Examples:
        >>> round(r_term_direct(24, 1), 12) == round(5 / 24, 12)
        True
    """
    magnitude = abs(F)
    return math.fsum(
        (t * t / magnitude) ** k for t in divisors(magnitude) if F % (t * t) == 0
    )


def _series_stripe(
    curve: Curve,
    params: SumParams,
    series: str,
    with_breakdown: bool,
    stripe: tuple[int, int],
) -> tuple[CompensatedSum, dict[int, CompensatedSum]]:
    accumulator = CompensatedSum()
    per_twist: dict[int, CompensatedSum] = {}
    for pair in stripe_pairs(curve, params.N, params.window, stripe):
        s, m = squarefree_part(pair.F)
        term = 2.0 * abs(s) ** -params.k * height_h(pair.u, pair.v) ** -params.j
        if series == "R":
            term *= divisor_power_sum(m, 2 * params.k)
        accumulator.add(term)
        if with_breakdown:
            per_twist.setdefault(s, CompensatedSum()).add(term)
    return accumulator, per_twist


def _evaluate(
    curve: Curve,
    params: SumParams,
    series: str,
    breakdown: bool,
    workers: Optional[int],
) -> SumReport:
    validate_params(params)
    stripes = v_stripes(params.N)
    results = ordered_map(
        partial(_series_stripe, curve, params, series, breakdown), stripes, workers
    )
    total = CompensatedSum()
    per_twist: dict[int, CompensatedSum] = {}
    for accumulator, stripe_twists in results:
        total.merge(accumulator)
        for D, twist_sum in stripe_twists.items():
            per_twist.setdefault(D, CompensatedSum()).merge(twist_sum)
    logger.info(
        "%s(j=%s, k=%s) over box N=%d: %d terms, value %.15g",
        series,
        params.j,
        params.k,
        params.N,
        total.term_count,
        total.value,
    )
    return SumReport(
        series=series,
        params=params_record(curve, params),
        value=total.value,
        term_count=total.term_count,
        kahan_error_bound=total.error_bound,
        breakdown=(
            {D: per_twist[D].value for D in sorted(per_twist)} if breakdown else None
        ),
        diagnostics={"stripes": len(stripes)},
    )


def s_partial(
    curve: Curve,
    params: SumParams,
    breakdown: bool = False,
    workers: Optional[int] = None,
) -> SumReport:
    """Truncation of S to the box. With breakdown=True the report also carries the
    contribution of every twist D, i.e. 2 |D|^-k times the sum of h^-j over its pairs."""
    return _evaluate(curve, params, "S", breakdown, workers)


def r_partial(
    curve: Curve,
    params: SumParams,
    breakdown: bool = False,
    workers: Optional[int] = None,
) -> SumReport:
    """Truncation of R to the box, with the inner t-sum taken exactly as
    |s|^-k times the sum of e^-2k over the divisors e of m"""
    return _evaluate(curve, params, "R", breakdown, workers)


def t_bounds(
    curve: Curve, params: SumParams, workers: Optional[int] = None
) -> tuple[float, float]:
    """Bracket [S, 4^j S] for the canonical-height sum over the same lifted points.

    Holds only when h/4 <= canonical height <= h for every boxed pair, which is
    guaranteed once |u| or |v| is large enough; no threshold is computed here.
    """
    low = s_partial(curve, params, workers=workers).value
    return low, 4.0**params.j * low
