"""Exact integer arithmetic: factorizations, squarefree parts, divisor sums and zeta values"""

import logging
import math
from functools import lru_cache

import numpy as np
from sympy import factorint

from quadratic_twist_series.exceptions import DomainError
from quadratic_twist_series.objects import Factorization, SquarefreeDecomposition

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1 << 16)
def _factor_positive(n: int) -> tuple[tuple[int, int], ...]:
    # sympy.factorint trial-divides small primes and then runs Pollard rho with a fixed seed
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def factorize(n: int) -> Factorization:
    """Factorizes a nonzero integer into sign * product of prime powers

    Examples:
        >>> factorize(24)
        Factorization(n=24, sign=1, factors=((2, 3), (3, 1)))
        >>> factorize(-9991).factors
        ((97, 1), (103, 1))
        >>> factorize(1).factors
        ()
    """
    if n == 0:
        raise DomainError("cannot factorize 0")
    return Factorization(n=n, sign=1 if n > 0 else -1, factors=_factor_positive(abs(n)))


def prime_omega(d: int) -> int:
    """nu(d), the number of distinct primes dividing d >= 1"""
    if d < 1:
        raise DomainError(f"nu(d) needs d >= 1, got {d}")
    return factorize(d).nu


def squarefree_part(n: int) -> SquarefreeDecomposition:
    """Writes n = s * m^2 with s squarefree (carrying the sign of n) and m > 0

    Examples:
        >>> squarefree_part(24)
        SquarefreeDecomposition(s=6, m=2)
        >>> squarefree_part(-8)
        SquarefreeDecomposition(s=-2, m=2)
    """
    if n == 0:
        raise DomainError("the squarefree part of 0 is undefined")
    factorization = factorize(n)
    s, m = factorization.sign, 1
    for prime, exponent in factorization.factors:
        if exponent % 2:
            s *= prime
        m *= prime ** (exponent // 2)
    return SquarefreeDecomposition(s=s, m=m)


def divisor_power_sum(m: int, w: float) -> float:
    """Returns the sum of e^(-w) over the positive divisors e of m

    Examples:
        >>> divisor_power_sum(2, 2)
        1.25
        >>> round(divisor_power_sum(6, 2), 10)
        1.3888888889
    """
    if m < 1:
        raise DomainError(f"divisor sums need m >= 1, got {m}")
    if w <= 0:
        raise DomainError(f"divisor sums need w > 0, got {w}")
    total = 1.0
    for prime, exponent in factorize(m).factors:
        ratio = float(prime) ** -w
        total *= math.fsum(ratio**i for i in range(exponent + 1))
    return total


def _zeta_partial_sum(w: float, M: int) -> float:
    return math.fsum(np.arange(1, M + 1, dtype=np.float64) ** -w)


def zeta_bracket(w: float, M: int) -> tuple[float, float]:
    """Encloses zeta(w) between the partial sum up to M plus the lower and upper
    integral tail bounds"""
    if w <= 1:
        raise DomainError(f"zeta(w) diverges for w <= 1, got w={w}")
    if M < 1:
        raise DomainError(f"partial sums need M >= 1, got {M}")
    partial = _zeta_partial_sum(w, M)
    return (
        partial + (M + 1) ** (1 - w) / (w - 1),
        partial + M ** (1 - w) / (w - 1),
    )


def zeta_even(w: float, tol: float) -> float:
    """zeta(w) to within tol: a direct sum up to M, the integral tail M^(1-w)/(w-1)
    and its first two Euler-Maclaurin corrections

    Examples:
        >>> round(zeta_even(2, 1e-12), 10)
        1.6449340668
        >>> round(zeta_even(4, 1e-12), 10)
        1.0823232337
    """
    if w <= 1:
        raise DomainError(f"zeta(w) diverges for w <= 1, got w={w}")
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    # remainder after the f'(M) term is at most w(w+1)(w+2) / (720 M^(w+3))
    M = max(
        10, math.ceil((w * (w + 1) * (w + 2) / (360 * tol)) ** (1 / (w + 3)))
    )
    tail = M ** (1 - w) / (w - 1) - M**-w / 2 + w * M ** (-w - 1) / 12
    logger.debug("zeta(%s): summing to M=%d for tol=%g", w, M, tol)
    return _zeta_partial_sum(w, M) + tail
