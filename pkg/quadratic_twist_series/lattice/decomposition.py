"""Unique triple decomposition: for (u, v) in Psi and t^2 | F(u, v) there is exactly
one (alpha, d, d') with dd' = t, gcd(d, d') = 1, alpha in Omega_d and (u, v) in L(alpha, d, d')"""

import math

from quadratic_twist_series.curve import cubic_part
from quadratic_twist_series.exceptions import NotInPsiError, PreconditionError
from quadratic_twist_series.objects import Curve, TwistTriple


def _exact_sqrt(n: int) -> int:
    root = math.isqrt(n)
    if root * root != n:
        raise PreconditionError(f"{n} is not a perfect square")
    return root


def decompose_pair(curve: Curve, u: int, v: int, t: int) -> TwistTriple:
    """d = sqrt(gcd(t^2, v^3 f(u/v))), d' = sqrt(gcd(t^2, v)), alpha = u / v mod d^2

    Examples:
        >>> from quadratic_twist_series.curve import make_curve
        >>> decompose_pair(make_curve(0, 0, -2), 3, 1, 5)
        TwistTriple(alpha=3, d=5, d_prime=1)
        >>> decompose_pair(make_curve(0, -1, 0), 3, 1, 2)
        TwistTriple(alpha=3, d=2, d_prime=1)
    """
    if t < 1:
        raise PreconditionError(f"t must be positive, got {t}")
    G = cubic_part(curve, u, v)
    F = v * G
    if math.gcd(u, v) != 1 or F == 0:
        raise NotInPsiError(f"not in Psi: ({u}, {v})")
    t_sq = t * t
    if F % t_sq:
        raise PreconditionError(f"t^2 = {t_sq} does not divide F({u}, {v}) = {F}")
    d = _exact_sqrt(math.gcd(t_sq, G))
    d_prime = _exact_sqrt(math.gcd(t_sq, v))
    modulus = d * d
    alpha = (u * pow(v, -1, modulus)) % modulus if modulus > 1 else 0
    return TwistTriple(alpha=alpha, d=d, d_prime=d_prime)
