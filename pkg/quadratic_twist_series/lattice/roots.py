"""Root sets Omega_d = {alpha mod d^2 : f(alpha) = 0 mod d^2} via Hensel lifting and CRT"""

import itertools
import logging
from functools import lru_cache

from sympy.ntheory.modular import crt

from quadratic_twist_series.arith import factorize
from quadratic_twist_series.curve import eval_f
from quadratic_twist_series.exceptions import PreconditionError
from quadratic_twist_series.objects import Curve, RootSet

logger = logging.getLogger(__name__)


def _derivative(curve: Curve, x: int) -> int:
    return 3 * x * x + 2 * curve.a * x + curve.b


def roots_mod_prime_power(curve: Curve, p: int, exponent: int) -> list[int]:
    """Roots of f modulo p^exponent, lifted one power of p at a time.

    A root r with f'(r) a unit mod p lifts uniquely (Newton step); a singular
    root is lifted by testing all p candidates r + i p^n.
    """
    roots = [r for r in range(p) if eval_f(curve, r) % p == 0]
    modulus = p
    for _ in range(1, exponent):
        next_modulus = modulus * p
        lifted = []
        for r in roots:
            slope = _derivative(curve, r)
            if slope % p:
                lifted.append(
                    (r - eval_f(curve, r) * pow(slope, -1, next_modulus)) % next_modulus
                )
            else:
                lifted.extend(
                    candidate
                    for candidate in range(r, next_modulus, modulus)
                    if eval_f(curve, candidate) % next_modulus == 0
                )
        roots, modulus = lifted, next_modulus
    return sorted(roots)


@lru_cache(maxsize=1 << 14)
def omega_d(curve: Curve, d: int) -> RootSet:
    """Complete root set of f modulo d^2

    Examples:
        >>> from quadratic_twist_series.curve import make_curve
        >>> omega_d(make_curve(0, -1, 0), 2).residues
        (0, 1, 3)
        >>> omega_d(make_curve(0, 0, -2), 5).residues
        (3,)
        >>> omega_d(make_curve(0, 0, -2), 1).residues
        (0,)
    """
    if d < 1:
        raise PreconditionError(f"d must be >= 1, got {d}")
    moduli: list[int] = []
    local_roots: list[list[int]] = []
    for prime, exponent in factorize(d).factors:
        moduli.append(prime ** (2 * exponent))
        local_roots.append(roots_mod_prime_power(curve, prime, 2 * exponent))
    if not moduli:
        return RootSet(d=1, residues=(0,))
    residues = sorted(
        int(crt(moduli, list(combination))[0])
        for combination in itertools.product(*local_roots)
    )
    logger.debug("Omega_%d has %d residues", d, len(residues))
    return RootSet(d=d, residues=tuple(residues))
