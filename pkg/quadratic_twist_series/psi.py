"""Enumeration of the coprime pairs Psi, their twist classification and lifts to twist points"""

import logging
import math
from fractions import Fraction
from functools import partial
from typing import Iterator, Optional

import numpy as np

from quadratic_twist_series.arith import factorize, squarefree_part
from quadratic_twist_series.constants import COPRIME_SIEVE_THRESHOLD, WITNESS_CAP
from quadratic_twist_series.curve import eval_F, eval_f
from quadratic_twist_series.exceptions import (
    NotInPsiError,
    PreconditionError,
    ValidationTestFailedException,
)
from quadratic_twist_series.objects import (
    CoprimePair,
    Curve,
    DHistogram,
    HistogramEntry,
    SquarefreeDecomposition,
    TwistPoint,
    WindowX,
)
from quadratic_twist_series.utils.parallel import ordered_map, v_stripes

logger = logging.getLogger(__name__)


def _coprime_u_values(v: int, N: int) -> Iterator[int]:
    """u in [-N, N] with gcd(u, v) = 1, ascending"""
    if N <= COPRIME_SIEVE_THRESHOLD:
        return (u for u in range(-N, N + 1) if math.gcd(u, v) == 1)
    mask = np.ones(2 * N + 1, dtype=bool)  # index i stands for u = i - N
    for prime, _ in factorize(v).factors:
        mask[N % prime :: prime] = False
    return (int(i) - N for i in np.flatnonzero(mask))


def stripe_pairs(
    curve: Curve, N: int, window: Optional[WindowX], stripe: tuple[int, int]
) -> list[CoprimePair]:
    """Elements of Psi in the box with v in the (inclusive) stripe, v then u ascending"""
    v_lo, v_hi = stripe
    pairs = []
    for v in range(v_lo, v_hi + 1):
        for u in _coprime_u_values(v, N):
            F = eval_F(curve, u, v)
            if F == 0:
                continue
            if window is not None and not window.contains(u, v):
                continue
            pairs.append(CoprimePair(u=u, v=v, F=F))
    return pairs


def enumerate_psi(
    curve: Curve, N: int, window: Optional[WindowX] = None
) -> Iterator[CoprimePair]:
    """Yields every (u, v) in Psi with |u| <= N, 0 < v <= N (and u/v in the window),
    ordered by v then u"""
    if N < 1:
        raise PreconditionError(f"box size must be >= 1, got {N}")
    for stripe in v_stripes(N):
        yield from stripe_pairs(curve, N, window, stripe)


def classify_pair(curve: Curve, u: int, v: int) -> SquarefreeDecomposition:
    """Returns (D, m) with F(u, v) = D m^2, D squarefree: (u/v, m/v^2) lies on D y^2 = f(x)

    Examples:
        >>> from quadratic_twist_series.curve import make_curve
        >>> classify_pair(make_curve(0, -1, 0), 3, 1)
        SquarefreeDecomposition(s=6, m=2)
    """
    if math.gcd(u, v) != 1:
        raise NotInPsiError(f"not in Psi: gcd({u}, {v}) != 1")
    F = eval_F(curve, u, v)
    if F == 0:
        raise NotInPsiError(f"not in Psi: F({u}, {v}) = 0")
    return squarefree_part(F)


def lift_point(curve: Curve, u: int, v: int) -> TwistPoint:
    """The bijection (u, v) -> (u/v, sqrt(F(u, v)/D)/v^2) onto twist points modulo +/-1

    Examples:
        >>> from quadratic_twist_series.curve import make_curve
        >>> lift_point(make_curve(0, 0, -2), 3, 1)
        TwistPoint(D=1, x=Fraction(3, 1), y=Fraction(5, 1))
    """
    if v <= 0:
        raise PreconditionError(f"canonical pairs have v > 0, got v={v}")
    D, m = classify_pair(curve, u, v)
    point = TwistPoint(D=D, x=Fraction(u, v), y=Fraction(m, v * v))
    if D * point.y**2 != eval_f(curve, point.x):
        raise ValidationTestFailedException(
            "lift_point",
            f"D*y^2 != f(x) for {point}",
            {"u": u, "v": v, "D": D},
        )
    return point


def unlift_point(curve: Curve, point: TwistPoint) -> tuple[int, int]:
    """Recovers the canonical pair (u, v), v > 0, of a lifted point

    Examples:
        >>> from quadratic_twist_series.curve import make_curve
        >>> curve = make_curve(0, 0, -2)
        >>> unlift_point(curve, lift_point(curve, 3, 1))
        (3, 1)
    """
    if point.D * point.y**2 != eval_f(curve, point.x):
        raise PreconditionError(f"{point} does not lie on its twist")
    return point.x.numerator, point.x.denominator


def _mine_stripe(
    curve: Curve,
    N: int,
    window: Optional[WindowX],
    witness_cap: int,
    stripe: tuple[int, int],
) -> dict[int, tuple[int, list[CoprimePair]]]:
    found: dict[int, tuple[int, list[CoprimePair]]] = {}
    for pair in stripe_pairs(curve, N, window, stripe):
        D = squarefree_part(pair.F).s
        count, witnesses = found.get(D, (0, []))
        if len(witnesses) < witness_cap:
            witnesses.append(pair)
        found[D] = (count + 1, witnesses)
    return found


def _histogram_order(entry: HistogramEntry) -> tuple[int, int, int]:
    return (-entry.count, abs(entry.D), 0 if entry.D > 0 else 1)


def rank_mine(
    curve: Curve,
    N: int,
    window: Optional[WindowX] = None,
    top: Optional[int] = None,
    witness_cap: int = WITNESS_CAP,
    workers: Optional[int] = None,
) -> DHistogram:
    """Counts how often each twist D occurs among the boxed pairs. Twists of
    high rank should rise to the top.

    Ties in count are broken by |D| ascending, then D > 0 first.
    """
    if N < 1:
        raise PreconditionError(f"box size must be >= 1, got {N}")
    if top is not None and top < 1:
        raise PreconditionError(f"top must be positive, got {top}")
    stripe_results = ordered_map(
        partial(_mine_stripe, curve, N, window, witness_cap), v_stripes(N), workers
    )
    counts: dict[int, int] = {}
    witnesses: dict[int, list[CoprimePair]] = {}
    for found in stripe_results:
        for D, (count, stripe_witnesses) in found.items():
            counts[D] = counts.get(D, 0) + count
            kept = witnesses.setdefault(D, [])
            kept.extend(stripe_witnesses[: witness_cap - len(kept)])
    entries = sorted(
        (
            HistogramEntry(D=D, count=count, witnesses=tuple(witnesses[D]))
            for D, count in counts.items()
        ),
        key=_histogram_order,
    )
    total_pairs = sum(counts.values())
    logger.info(
        "mined %d pairs into %d twists (box N=%d)", total_pairs, len(entries), N
    )
    if top is not None:
        entries = entries[:top]
    return DHistogram(
        entries=tuple(entries),
        box=N,
        window=window,
        total_pairs=total_pairs,
        counts=counts,
    )


def histogram_rows(
    curve: Curve, histogram: DHistogram, sample_size: int = 5
) -> list[dict]:
    """Rows {D, count, sample_witnesses, sample_points} for the `rank` report"""
    rows = []
    for entry in histogram.entries:
        sample = entry.witnesses[:sample_size]
        rows.append(
            {
                "D": entry.D,
                "count": entry.count,
                "sample_witnesses": [[pair.u, pair.v] for pair in sample],
                "sample_points": [
                    [str(point.x), str(point.y)]
                    for point in (lift_point(curve, pair.u, pair.v) for pair in sample)
                ],
            }
        )
    return rows
