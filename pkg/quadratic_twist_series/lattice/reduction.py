"""Lagrange-Gauss reduction of the lattices L(alpha, d, d')"""

import math

from quadratic_twist_series.curve import eval_F, eval_f
from quadratic_twist_series.exceptions import PreconditionError
from quadratic_twist_series.objects import Curve, ReducedLattice, TwistTriple, Vector


def norm_sq(w: Vector) -> int:
    return w[0] * w[0] + w[1] * w[1]


def _dot(w1: Vector, w2: Vector) -> int:
    return w1[0] * w2[0] + w1[1] * w2[1]


def _sub(w1: Vector, w2: Vector, q: int) -> Vector:
    return (w1[0] - q * w2[0], w1[1] - q * w2[1])


def _independent(w1: Vector, w2: Vector) -> bool:
    return w1[0] * w2[1] - w1[1] * w2[0] != 0


def lagrange_gauss(b1: Vector, b2: Vector) -> tuple[Vector, Vector]:
    """Reduced basis realising both successive minima, in exact integer arithmetic

    Examples:
        >>> lagrange_gauss((4, 0), (3, 1))
        ((1, -1), (2, 2))
    """
    if norm_sq(b1) > norm_sq(b2):
        b1, b2 = b2, b1
    while True:
        n1 = norm_sq(b1)
        # nearest integer to <b1, b2> / |b1|^2
        q = (2 * _dot(b1, b2) + n1) // (2 * n1)
        b2 = _sub(b2, b1, q)
        if norm_sq(b2) >= n1:
            return b1, b2
        b1, b2 = b2, b1


def canonical_choice(candidates: list[Vector]) -> Vector:
    """Among equally short vectors prefer v > 0 with the smallest u;
    if every candidate has v = 0, take the one with u > 0"""
    upper = [w for w in candidates if w[1] > 0]
    if upper:
        return min(upper, key=lambda w: w[0])
    return max(candidates, key=lambda w: w[0])


def initial_basis(triple: TwistTriple) -> tuple[Vector, Vector]:
    """{(d^2, 0), (alpha d'^2, d'^2)}, of determinant (dd')^2"""
    d_sq, d_prime_sq = triple.d**2, triple.d_prime**2
    return (d_sq, 0), (triple.alpha * d_prime_sq, d_prime_sq)


def validate_triple(curve: Curve, triple: TwistTriple) -> None:
    if triple.d < 1 or triple.d_prime < 1:
        raise PreconditionError(f"d and d' must be positive in {triple}")
    if math.gcd(triple.d, triple.d_prime) != 1:
        raise PreconditionError(f"gcd(d, d') != 1 in {triple}")
    if not 0 <= triple.alpha < triple.d**2 or eval_f(curve, triple.alpha) % triple.d**2:
        raise PreconditionError(f"alpha is not in Omega_d for {triple}")


def lattice_contains(triple: TwistTriple, u: int, v: int) -> bool:
    """(u, v) in L: u = alpha v mod d^2 and v = 0 mod d'^2"""
    return (u - triple.alpha * v) % triple.d**2 == 0 and v % triple.d_prime**2 == 0


def shortest_vectors(curve: Curve, triple: TwistTriple) -> ReducedLattice:
    """First and second minima of L(alpha, d, d') with the canonical tie rule

    Examples:
        >>> from quadratic_twist_series.curve import make_curve
        >>> reduced = shortest_vectors(make_curve(0, 0, -2), TwistTriple(3, 5, 1))
        >>> reduced.omega, reduced.norm_sq, reduced.in_psi
        ((3, 1), 10, True)
    """
    validate_triple(curve, triple)
    basis = initial_basis(triple)
    b1, b2 = lagrange_gauss(*basis)
    candidates = []
    for w in (b1, b2, (b1[0] + b2[0], b1[1] + b2[1]), (b1[0] - b2[0], b1[1] - b2[1])):
        candidates.extend((w, (-w[0], -w[1])))
    first_minimum = min(norm_sq(w) for w in candidates)
    shortest = [w for w in candidates if norm_sq(w) == first_minimum]
    omega = canonical_choice(shortest)
    independent = [w for w in candidates if _independent(w, omega)]
    second_minimum = min(norm_sq(w) for w in independent)
    omega_prime = canonical_choice(
        [w for w in independent if norm_sq(w) == second_minimum]
    )
    F_value = eval_F(curve, *omega)
    return ReducedLattice(
        triple=triple,
        basis=basis,
        omega=omega,
        omega_prime=omega_prime,
        norm_sq=first_minimum,
        in_psi=math.gcd(*omega) == 1 and F_value != 0,
        F_nonzero=F_value != 0,
        tied=len(set(shortest)) > 2,
    )
