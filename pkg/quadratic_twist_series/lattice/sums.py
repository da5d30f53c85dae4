"""Sums indexed by triples (alpha, d, d'): the truncated Q series and the lattice route to R"""

import logging
import math
from functools import partial
from typing import Iterator, Optional

from quadratic_twist_series.constants import MEMBERSHIP_MODES
from quadratic_twist_series.curve import cubic_part, eval_F, height_h
from quadratic_twist_series.exceptions import PreconditionError
from quadratic_twist_series.lattice.reduction import shortest_vectors
from quadratic_twist_series.lattice.roots import omega_d
from quadratic_twist_series.objects import Curve, SumParams, SumReport, TwistTriple
from quadratic_twist_series.psi import stripe_pairs
from quadratic_twist_series.series import params_record, validate_params
from quadratic_twist_series.utils.parallel import ordered_map, v_stripes
from quadratic_twist_series.utils.summation import CompensatedSum

logger = logging.getLogger(__name__)


def triples_with_d(curve: Curve, d: int, d_prime_max: int) -> Iterator[TwistTriple]:
    residues = omega_d(curve, d).residues
    for d_prime in range(1, d_prime_max + 1):
        if math.gcd(d, d_prime) != 1:
            continue
        for alpha in residues:
            yield TwistTriple(alpha=alpha, d=d, d_prime=d_prime)


def triples_up_to(curve: Curve, B: int, strict: bool = False) -> Iterator[TwistTriple]:
    """Every (alpha, d, d') with gcd(d, d') = 1, alpha in Omega_d and dd' <= B
    (dd' < B when strict), ordered by d, then d', then alpha"""
    limit = B - 1 if strict else B
    for d in range(1, limit + 1):
        yield from triples_with_d(curve, d, limit // d)


def validate_membership(membership: str) -> None:
    if membership not in MEMBERSHIP_MODES:
        raise PreconditionError(
            f"membership must be one of {MEMBERSHIP_MODES}, got '{membership}'"
        )


def _q_for_d(
    curve: Curve, j: float, k: float, B: int, membership: str, d: int
) -> tuple[CompensatedSum, int, int, int]:
    accumulator = CompensatedSum()
    triple_count = excluded_count = tie_count = 0
    for triple in triples_with_d(curve, d, B // d):
        reduced = shortest_vectors(curve, triple)
        triple_count += 1
        tie_count += reduced.tied
        admitted = reduced.in_psi if membership == "strict_psi" else reduced.F_nonzero
        if not admitted:
            excluded_count += 1
            continue
        t = triple.t
        # (dd')^2k / max(1, log dd')^j * |omega|^-4k
        accumulator.add(
            (t * t / (reduced.norm_sq * reduced.norm_sq)) ** k
            / max(1.0, math.log(t)) ** j
        )
    return accumulator, triple_count, excluded_count, tie_count


def q_partial(
    curve: Curve,
    j: float,
    k: float,
    B: int,
    membership: str = "strict_psi",
    workers: Optional[int] = None,
) -> SumReport:
    """Truncation of Q to the triples with dd' <= B.

    membership 'strict_psi' keeps triples whose shortest vector lies in Psi;
    'F_nonzero' only asks F(omega) != 0. Excluded triples are counted in the
    diagnostics.
    """
    if B < 1:
        raise PreconditionError(f"B must be >= 1, got {B}")
    if k <= 0.5:
        raise PreconditionError(f"k must be > 1/2, got {k}")
    if j < 0:
        raise PreconditionError(f"j must be >= 0, got {j}")
    validate_membership(membership)
    results = ordered_map(
        partial(_q_for_d, curve, j, k, B, membership), list(range(1, B + 1)), workers
    )
    total = CompensatedSum()
    triple_count = excluded_count = tie_count = 0
    for accumulator, triples, excluded, ties in results:
        total.merge(accumulator)
        triple_count += triples
        excluded_count += excluded
        tie_count += ties
    logger.info(
        "Q(j=%s, k=%s) up to B=%d: %d triples, %d excluded, value %.15g",
        j,
        k,
        B,
        triple_count,
        excluded_count,
        total.value,
    )
    return SumReport(
        series="Q",
        params={
            "curve": list(curve.coefficients),
            "j": j,
            "k": k,
            "B": B,
            "membership": membership,
        },
        value=total.value,
        term_count=total.term_count,
        kahan_error_bound=total.error_bound,
        breakdown=None,
        diagnostics={
            "triple_count": triple_count,
            "excluded_count": excluded_count,
            "tie_count": tie_count,
        },
    )


def _lattice_points_in_box(triple: TwistTriple, N: int) -> Iterator[tuple[int, int]]:
    """(u, v) in L(alpha, d, d') with |u| <= N and 0 < v <= N"""
    d_sq, step_v = triple.d**2, triple.d_prime**2
    for v in range(step_v, N + 1, step_v):
        residue = (triple.alpha * v) % d_sq
        first_u = residue - ((residue + N) // d_sq) * d_sq
        yield from ((u, v) for u in range(first_u, N + 1, d_sq))


def _r_for_d(
    curve: Curve, params: SumParams, d_prime_max: int, d: int
) -> dict[int, CompensatedSum]:
    per_t: dict[int, CompensatedSum] = {}
    for triple in triples_with_d(curve, d, d_prime_max):
        t = triple.t
        for u, v in _lattice_points_in_box(triple, params.N):
            if math.gcd(u, v) != 1:
                continue
            F = eval_F(curve, u, v)
            if F == 0:
                continue
            if params.window is not None and not params.window.contains(u, v):
                continue
            per_t.setdefault(t, CompensatedSum()).add(
                2.0 * (t * t / abs(F)) ** params.k * height_h(u, v) ** -params.j
            )
    return per_t


def r_via_lattices(
    curve: Curve, params: SumParams, workers: Optional[int] = None
) -> SumReport:
    """R over the same box as series.r_partial, regrouped by triples:
    sum of (dd')^2k over triples, then of |F|^-k h^-j over the boxed points of
    Psi in each lattice. The breakdown holds the contribution of every t = dd'."""
    validate_params(params)
    # d^2 divides v^3 f(u/v) and d'^2 divides v, which bounds the triples that can meet the box
    cubic_max = max(
        (
            abs(cubic_part(curve, pair.u, pair.v))
            for stripe in v_stripes(params.N)
            for pair in stripe_pairs(curve, params.N, params.window, stripe)
        ),
        default=0,
    )
    d_max, d_prime_max = math.isqrt(cubic_max), math.isqrt(params.N)
    results = ordered_map(
        partial(_r_for_d, curve, params, d_prime_max), list(range(1, d_max + 1)), workers
    )
    total = CompensatedSum()
    per_t: dict[int, CompensatedSum] = {}
    for d_result in results:
        for t in sorted(d_result):
            total.merge(d_result[t])
            per_t.setdefault(t, CompensatedSum()).merge(d_result[t])
    logger.info(
        "R via lattices over box N=%d: d <= %d, d' <= %d, %d terms",
        params.N,
        d_max,
        d_prime_max,
        total.term_count,
    )
    return SumReport(
        series="RL",
        params=params_record(curve, params),
        value=total.value,
        term_count=total.term_count,
        kahan_error_bound=total.error_bound,
        breakdown={t: per_t[t].value for t in sorted(per_t)},
        diagnostics={"d_max": d_max, "d_prime_max": d_prime_max},
    )
