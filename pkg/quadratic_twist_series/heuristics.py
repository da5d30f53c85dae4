"""Random-annulus model for the shortest vectors, the observed counts it is compared with,
and the growth sums behind the heuristic bound for Q"""

import logging
import math
from functools import partial
from typing import Iterable, Optional

import numpy as np
from sympy import primerange

from quadratic_twist_series.constants import ANNULUS_WIDENING_FACTOR, DEFAULT_SEED
from quadratic_twist_series.exceptions import PreconditionError
from quadratic_twist_series.lattice.annulus import annulus_constants
from quadratic_twist_series.lattice.reduction import shortest_vectors
from quadratic_twist_series.lattice.roots import omega_d
from quadratic_twist_series.lattice.sums import triples_with_d, validate_membership
from quadratic_twist_series.objects import (
    AnnulusModel,
    BoundReport,
    Curve,
    ExperimentReport,
    TwistTriple,
)
from quadratic_twist_series.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

INNER_EDGE_BINS = np.linspace(0.0, 4.0, 17)


def validate_annulus_model(model: AnnulusModel) -> None:
    if model.C1 <= 0 or model.C2 <= 0:
        raise PreconditionError(f"annulus radii must be positive, got {model}")
    if model.C1 >= model.C2:
        raise PreconditionError(
            f"annulus is empty at t=1: C1={model.C1} must be below C2={model.C2}"
        )
    if not 0 <= model.seed < 2**64:
        raise PreconditionError(f"seed must be a 64-bit unsigned integer, got {model.seed}")


def default_annulus_model(curve: Curve, seed: int = DEFAULT_SEED) -> AnnulusModel:
    """The model with the curve's proven annulus constants. When the inner constant
    reaches the outer one the outer radius is widened to a multiple of C1."""
    C1, C2 = annulus_constants(curve)
    if C1 >= C2:
        widened = ANNULUS_WIDENING_FACTOR * C1
        logger.warning(
            "inner annulus constant %.6f exceeds outer %.6f; widening C2 to %.6f",
            C1,
            C2,
            widened,
        )
        C2 = widened
    model = AnnulusModel(C1=C1, C2=C2, seed=seed)
    validate_annulus_model(model)
    return model


def annulus_radii(model: AnnulusModel, t: int) -> tuple[float, float]:
    return model.C1 * math.sqrt(t), model.C2 * t


def triple_generator(model: AnnulusModel, triple: TwistTriple) -> np.random.Generator:
    """Philox stream owned by one triple, so draws do not depend on visiting order"""
    key = np.random.SeedSequence([model.seed, triple.alpha, triple.d, triple.d_prime])
    return np.random.Generator(np.random.Philox(key))


def draw_annulus_points(
    rng: np.random.Generator, inner: float, outer: float, size: int = 1
) -> np.ndarray:
    """`size` points uniform with respect to area in inner <= |z| <= outer, shape (size, 2)"""
    radius = np.sqrt(rng.uniform(inner * inner, outer * outer, size))
    angle = rng.uniform(0.0, 2 * np.pi, size)
    return np.column_stack((radius * np.cos(angle), radius * np.sin(angle)))


def _check_experiment(B: int, C: float) -> None:
    if B < 2:
        raise PreconditionError(f"B must be >= 2, got {B}")
    if C <= 0:
        raise PreconditionError(f"C must be positive, got {C}")


def _model_count_for_d(
    curve: Curve, model: AnnulusModel, B: int, C: float, d: int
) -> int:
    count = 0
    for triple in triples_with_d(curve, d, (B - 1) // d):
        t = triple.t
        z = draw_annulus_points(triple_generator(model, triple), *annulus_radii(model, t))[0]
        count += float(z @ z) <= C * C * t
    return count


def random_annulus_count(
    curve: Curve,
    model: AnnulusModel,
    B: int,
    C: float,
    workers: Optional[int] = None,
) -> ExperimentReport:
    """Draws one point per triple with dd' < B in its annulus and counts those with
    |z| <= C sqrt(dd')"""
    _check_experiment(B, C)
    validate_annulus_model(model)
    counts = ordered_map(
        partial(_model_count_for_d, curve, model, B, C), list(range(1, B)), workers
    )
    return ExperimentReport(
        kind="model",
        B=B,
        C=C,
        count=sum(counts),
        reference=math.log(B) ** 4,
        seed=model.seed,
        diagnostics={"C1": model.C1, "C2": model.C2},
    )


def expected_annulus_count(curve: Curve, model: AnnulusModel, B: int, C: float) -> float:
    """Mean of random_annulus_count over seeds: the sum over triples of the chance that
    an area-uniform point of the annulus lies within C sqrt(dd')"""
    _check_experiment(B, C)
    validate_annulus_model(model)
    probabilities = []
    for d in range(1, B):
        for triple in triples_with_d(curve, d, (B - 1) // d):
            inner, outer = annulus_radii(model, triple.t)
            covered = (C * C * triple.t - inner * inner) / (outer * outer - inner * inner)
            probabilities.append(min(1.0, max(0.0, covered)))
    return math.fsum(probabilities)


def _observed_for_d(
    curve: Curve, B: int, C: float, membership: Optional[str], d: int
) -> tuple[int, int, list[float]]:
    count = excluded = 0
    ratios = []
    for triple in triples_with_d(curve, d, (B - 1) // d):
        reduced = shortest_vectors(curve, triple)
        if membership == "strict_psi" and not reduced.in_psi:
            excluded += 1
            continue
        if membership == "F_nonzero" and not reduced.F_nonzero:
            excluded += 1
            continue
        ratio = math.sqrt(reduced.norm_sq / triple.t)
        ratios.append(ratio)
        count += reduced.norm_sq <= C * C * triple.t
    return count, excluded, ratios


def observed_short_count(
    curve: Curve,
    B: int,
    C: float,
    membership: Optional[str] = "strict_psi",
    rank_hint: Optional[int] = None,
    workers: Optional[int] = None,
) -> ExperimentReport:
    """Exact number of triples with dd' < B whose shortest vector has |omega| <= C sqrt(dd').

    membership=None counts every triple. The reference is log^(r/2) B when a rank r
    is hinted, else the log^4 B of the random model. The diagnostics carry the
    histogram of |omega| / sqrt(dd'): counts close to the inner edge dominate Q.
    """
    _check_experiment(B, C)
    if membership is not None:
        validate_membership(membership)
    results = ordered_map(
        partial(_observed_for_d, curve, B, C, membership), list(range(1, B)), workers
    )
    count = sum(result[0] for result in results)
    excluded = sum(result[1] for result in results)
    ratios = np.array([ratio for result in results for ratio in result[2]], dtype=float)
    histogram, edges = np.histogram(
        np.minimum(ratios, INNER_EDGE_BINS[-1]), bins=INNER_EDGE_BINS
    )
    reference = math.log(B) ** (rank_hint / 2 if rank_hint is not None else 4)
    logger.info(
        "observed %d short vectors among %d triples with dd' < %d",
        count,
        len(ratios) + excluded,
        B,
    )
    return ExperimentReport(
        kind="observed",
        B=B,
        C=C,
        count=count,
        reference=reference,
        diagnostics={
            "membership": membership,
            "excluded_count": excluded,
            "inner_edge_histogram": {
                "edges": [float(edge) for edge in edges],
                "counts": [int(n) for n in histogram],
            },
            "min_ratio": float(ratios.min()) if ratios.size else None,
        },
    )


def nu_table(T: int) -> np.ndarray:
    """nu(t) for 0 <= t <= T (index 0 unused)

    Examples:
        >>> nu_table(12).tolist()
        [0, 0, 1, 1, 1, 1, 2, 1, 1, 1, 2, 1, 2]
    """
    nu = np.zeros(T + 1, dtype=np.int64)
    for prime in primerange(2, T + 1):
        nu[prime::prime] += 1
    return nu


def four_power_nu_sums(T: int) -> np.ndarray:
    """Cumulative sums of 4^nu(t) for 1 <= t <= T, position x - 1 holding the sum up to x

    Examples:
        >>> int(four_power_nu_sums(10)[-1])
        61
        >>> int(four_power_nu_sums(1)[0])
        1
    """
    if T < 1:
        raise PreconditionError(f"T must be >= 1, got {T}")
    return np.cumsum(4 ** nu_table(T)[1:])


def bound_partial_sum(j: float, T: int) -> float:
    """Sum of 1 / (t log^(j-3) t) over 2 <= t <= T; the summand has no value at t = 1"""
    if T < 2:
        raise PreconditionError(f"T must be >= 2, got {T}")
    t = np.arange(2, T + 1, dtype=np.float64)
    return math.fsum(1.0 / (t * np.log(t) ** (j - 3)))


def heuristic_bound_report(
    j: float,
    k: float,
    C1: float,
    T: int,
    checkpoints: Optional[Iterable[int]] = None,
) -> BoundReport:
    """Heuristic upper bound for the Q partial sum up to T, with prefactor
    1 / (C1^4k (2k - 1)), and the sums of 4^nu(t) at the checkpoints against x log^3 x"""
    if k <= 0.5:
        raise PreconditionError(f"k must be > 1/2, got {k}")
    if C1 <= 0:
        raise PreconditionError(f"C1 must be positive, got {C1}")
    partial_sum = bound_partial_sum(j, T)
    points = sorted(set(checkpoints)) if checkpoints is not None else _decades(T)
    if points and not 1 <= points[0] <= points[-1] <= T:
        raise PreconditionError(f"checkpoints must lie in [1, {T}], got {points}")
    cumulative = four_power_nu_sums(T)
    nu_rows = tuple(
        (x, int(cumulative[x - 1]), _log_cubed_ratio(int(cumulative[x - 1]), x))
        for x in points
    )
    return BoundReport(
        j=j,
        k=k,
        C1=C1,
        T=T,
        prefactor=1.0 / (C1 ** (4 * k) * (2 * k - 1)),
        partial_sum=partial_sum,
        nu_rows=nu_rows,
    )


def _log_cubed_ratio(total: int, x: int) -> Optional[float]:
    return total / (x * math.log(x) ** 3) if x > 1 else None


def _decades(T: int) -> list[int]:
    points, x = [], 10
    while x <= T:
        points.append(x)
        x *= 10
    if not points or points[-1] != T:
        points.append(T)
    return points


def triple_counts(curve: Curve, T: int) -> list[tuple[int, int, int]]:
    """(t, number of triples with dd' = t, 4^nu(t)) for 1 <= t <= T"""
    if T < 1:
        raise PreconditionError(f"T must be >= 1, got {T}")
    nu = nu_table(T)
    rows = []
    for t in range(1, T + 1):
        count = sum(
            len(omega_d(curve, d).residues)
            for d in range(1, t + 1)
            if t % d == 0 and math.gcd(d, t // d) == 1
        )
        rows.append((t, count, 4 ** int(nu[t])))
    return rows


def run_stats(
    curve: Curve,
    B_values: Iterable[int],
    C: float,
    replicates: int,
    seed: int = DEFAULT_SEED,
    model: Optional[AnnulusModel] = None,
    workers: Optional[int] = None,
) -> list[dict]:
    """Rows {B, C, observed, model_mean, model_std, log4_reference} for the `stats`
    report; replicate r of the random model runs with seed + r"""
    if replicates < 1:
        raise PreconditionError(f"replicates must be >= 1, got {replicates}")
    base = model if model is not None else default_annulus_model(curve, seed)
    rows = []
    for B in sorted(B_values):
        observed = observed_short_count(curve, B, C, workers=workers)
        draws = np.array(
            [
                random_annulus_count(
                    curve, base._replace(seed=base.seed + r), B, C, workers
                ).count
                for r in range(replicates)
            ],
            dtype=float,
        )
        rows.append(
            {
                "B": B,
                "C": C,
                "observed": observed.count,
                "model_mean": float(draws.mean()),
                "model_std": float(draws.std(ddof=1)) if replicates > 1 else 0.0,
                "log4_reference": math.log(B) ** 4,
            }
        )
        logger.info(
            "stats B=%d: observed %d, model mean %.3f",
            B,
            observed.count,
            rows[-1]["model_mean"],
        )
    return rows
