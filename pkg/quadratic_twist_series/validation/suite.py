"""The `verify` runner: every invariant check at its default scale, one result per check"""

import logging
import time
from functools import partial
from typing import Any, Callable, Optional

from quadratic_twist_series.constants import (
    VERIFY_AREA_DRAWS,
    VERIFY_AREA_T,
    VERIFY_ARITH_MAX_N,
    VERIFY_BOUND_J_VALUES,
    VERIFY_BOUND_LADDER,
    VERIFY_CURVE_BOX,
    VERIFY_IDENTITY_BOX,
    VERIFY_J_VALUES,
    VERIFY_K_VALUES,
    VERIFY_LATTICE_ROUTE_BOX,
    VERIFY_MONOTONICITY_BOXES,
    VERIFY_MULTIPLICATIVITY_BOX,
    VERIFY_NU_MAX_D,
    VERIFY_OMEGA_MAX_D,
    VERIFY_PARTITION_BOX,
    VERIFY_PARTITION_MAX_T,
    VERIFY_PRIME_POWER_MAX_E,
    VERIFY_PRIME_POWER_MAX_P,
    VERIFY_Q_MAX_B,
    VERIFY_REDUCTION_MAX_T,
    VERIFY_SANDWICH_BOX,
    VERIFY_SQUARE_MAX_K,
    VERIFY_ZETA_M_VALUES,
    ZETA_DEFAULT_TOLERANCE,
)
from quadratic_twist_series.exceptions import ValidationTestFailedException
from quadratic_twist_series.heuristics import default_annulus_model
from quadratic_twist_series.objects import Curve, SumParams
from quadratic_twist_series.series import s_partial
from quadratic_twist_series.validation import invariants

logger = logging.getLogger(__name__)


def _round_trip_check(curve: Curve) -> None:
    params = SumParams(j=1.0, k=1.0, N=VERIFY_IDENTITY_BOX)
    invariants.validate_report_round_trip(s_partial(curve, params, breakdown=True))


def _checks(
    curve: Curve, workers: Optional[int], zeta_tolerance: float
) -> list[tuple[str, Callable[[], None]]]:
    grid = [(j, k) for j in VERIFY_J_VALUES for k in VERIFY_K_VALUES]
    largest_box = max(VERIFY_MONOTONICITY_BOXES)
    return [
        (
            "squarefree_products",
            partial(invariants.validate_squarefree_products, VERIFY_ARITH_MAX_N),
        ),
        (
            "squarefree_square_classes",
            partial(
                invariants.validate_squarefree_square_classes,
                VERIFY_ARITH_MAX_N,
                VERIFY_SQUARE_MAX_K,
            ),
        ),
        ("nu_bound", partial(invariants.validate_nu_bound, VERIFY_NU_MAX_D)),
        (
            "zeta_bracket",
            partial(
                invariants.validate_zeta_bracket,
                [2 * k for k in VERIFY_K_VALUES],
                VERIFY_ZETA_M_VALUES,
                zeta_tolerance,
            ),
        ),
        (
            "quartic_symmetry",
            partial(invariants.validate_quartic_symmetry, curve, VERIFY_CURVE_BOX),
        ),
        (
            "dehomogenization",
            partial(invariants.validate_dehomogenization, curve, VERIFY_CURVE_BOX),
        ),
        (
            "rational_twist_class",
            partial(invariants.validate_rational_twist_class, curve, VERIFY_CURVE_BOX),
        ),
        (
            "lift_injectivity",
            partial(invariants.validate_lift_injectivity, curve, VERIFY_MULTIPLICATIVITY_BOX),
        ),
        (
            "histogram_completeness",
            partial(
                invariants.validate_histogram_completeness,
                curve,
                VERIFY_MULTIPLICATIVITY_BOX,
                workers,
            ),
        ),
        (
            "per_term_identity",
            partial(
                invariants.validate_per_term_identity,
                curve,
                VERIFY_IDENTITY_BOX,
                VERIFY_K_VALUES,
            ),
        ),
        (
            "sandwich",
            partial(
                invariants.validate_sandwich,
                curve,
                VERIFY_SANDWICH_BOX,
                VERIFY_J_VALUES,
                VERIFY_K_VALUES,
                workers,
                zeta_tolerance,
            ),
        ),
        (
            "lattice_route",
            partial(
                invariants.validate_lattice_route,
                curve,
                VERIFY_LATTICE_ROUTE_BOX,
                grid,
                workers,
            ),
        ),
        (
            "partition",
            partial(
                invariants.validate_partition,
                curve,
                VERIFY_PARTITION_BOX,
                VERIFY_PARTITION_MAX_T,
            ),
        ),
        ("omega", partial(invariants.validate_omega, curve, VERIFY_OMEGA_MAX_D)),
        (
            "reduction",
            partial(invariants.validate_reduction, curve, VERIFY_REDUCTION_MAX_T),
        ),
        (
            "multiplicativity",
            partial(
                invariants.validate_multiplicativity, curve, VERIFY_MULTIPLICATIVITY_BOX
            ),
        ),
        (
            "twist_mining",
            partial(
                invariants.validate_twist_mining,
                curve,
                VERIFY_MULTIPLICATIVITY_BOX,
                workers,
            ),
        ),
        (
            "q_truncations",
            partial(invariants.validate_q_truncations, curve, VERIFY_Q_MAX_B, workers),
        ),
        ("annulus", partial(invariants.validate_annulus, curve, VERIFY_REDUCTION_MAX_T)),
        (
            "determinism",
            partial(
                invariants.validate_determinism,
                curve,
                VERIFY_IDENTITY_BOX,
                VERIFY_Q_MAX_B,
            ),
        ),
        (
            "box_monotonicity",
            partial(
                invariants.validate_box_monotonicity,
                curve,
                VERIFY_MONOTONICITY_BOXES,
                VERIFY_J_VALUES[0],
                VERIFY_K_VALUES[0],
                workers,
            ),
        ),
        (
            "k_monotonicity",
            partial(
                invariants.validate_k_monotonicity,
                curve,
                largest_box,
                VERIFY_J_VALUES[0],
                VERIFY_K_VALUES,
                workers,
            ),
        ),
        (
            "window_domination",
            partial(
                invariants.validate_window_domination,
                curve,
                largest_box,
                VERIFY_J_VALUES[0],
                VERIFY_K_VALUES[0],
                workers,
            ),
        ),
        (
            "omega_multiplicativity",
            partial(invariants.validate_omega_multiplicativity, curve, VERIFY_OMEGA_MAX_D),
        ),
        (
            "omega_prime_power_bound",
            partial(
                invariants.validate_omega_prime_power_bound,
                curve,
                VERIFY_PRIME_POWER_MAX_P,
                VERIFY_PRIME_POWER_MAX_E,
            ),
        ),
        (
            "area_uniform_mean",
            partial(
                invariants.validate_area_uniform_mean,
                default_annulus_model(curve),
                VERIFY_AREA_T,
                VERIFY_AREA_DRAWS,
            ),
        ),
        (
            "bound_ladder",
            partial(
                invariants.validate_bound_ladder, VERIFY_BOUND_J_VALUES, VERIFY_BOUND_LADDER
            ),
        ),
        ("round_trip", partial(_round_trip_check, curve)),
    ]


def run_verification(
    curve: Curve,
    workers: Optional[int] = None,
    zeta_tolerance: float = ZETA_DEFAULT_TOLERANCE,
) -> dict[str, Any]:
    """Runs every check and collects {check, passed, message, counterexample} results.
    The first failure's counterexample is repeated at the top level."""
    results = []
    first_failure = None
    for name, check in _checks(curve, workers, zeta_tolerance):
        started = time.perf_counter()
        try:
            check()
        except ValidationTestFailedException as e:
            logger.error("check '%s' failed: %s", name, e)
            result = {
                "check": name,
                "passed": False,
                "message": str(e),
                "counterexample": e.counterexample,
            }
            if first_failure is None:
                first_failure = result
        else:
            logger.info("check '%s' passed in %.2fs", name, time.perf_counter() - started)
            result = {
                "check": name,
                "passed": True,
                "message": "",
                "counterexample": None,
            }
        results.append(result)
    return {
        "curve": list(curve.coefficients),
        "passed": first_failure is None,
        "checks": results,
        "first_counterexample": first_failure,
    }
