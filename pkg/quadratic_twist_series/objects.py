"""Records shared across the package. All of them are immutable and picklable."""

from fractions import Fraction
from typing import Any, NamedTuple, Optional

Endpoint = Fraction | float  # rational, or +/- math.inf
Vector = tuple[int, int]


class Factorization(NamedTuple):
    n: int
    sign: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes increasing

    @property
    def nu(self) -> int:
        """Number of distinct prime divisors"""
        return len(self.factors)


class SquarefreeDecomposition(NamedTuple):
    s: int  # squarefree, carries the sign of n
    m: int


class Curve(NamedTuple):
    """The curve y^2 = x^3 + ax^2 + bx + c"""

    a: int
    b: int
    c: int
    e_min: float
    e_max: float
    real_root_count: int

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


class Interval(NamedTuple):
    """Open interval (lo, hi)"""

    lo: Endpoint
    hi: Endpoint

    def contains(self, x: Fraction) -> bool:
        return self.lo < x < self.hi


class WindowX(NamedTuple):
    intervals: tuple[Interval, ...]

    def contains(self, u: int, v: int) -> bool:
        x = Fraction(u, v)
        return any(interval.contains(x) for interval in self.intervals)


class CoprimePair(NamedTuple):
    u: int
    v: int
    F: int


class TwistPoint(NamedTuple):
    """A point (x, y) on D*y^2 = f(x), with y >= 0"""

    D: int
    x: Fraction
    y: Fraction


class HistogramEntry(NamedTuple):
    D: int
    count: int
    witnesses: tuple[CoprimePair, ...]


class DHistogram(NamedTuple):
    entries: tuple[HistogramEntry, ...]
    box: int
    window: Optional[WindowX]
    total_pairs: int
    counts: dict[int, int]

    def count(self, D: int) -> int:
        return self.counts.get(D, 0)


class SumParams(NamedTuple):
    j: float
    k: float
    N: int
    window: Optional[WindowX] = None


class SumReport(NamedTuple):
    series: str
    params: dict[str, Any]
    value: float
    term_count: int
    kahan_error_bound: float
    breakdown: Optional[dict[int, float]] = None
    diagnostics: dict[str, Any] = {}


class RootSet(NamedTuple):
    d: int
    residues: tuple[int, ...]  # sorted, in [0, d^2)


class TwistTriple(NamedTuple):
    alpha: int
    d: int
    d_prime: int

    @property
    def t(self) -> int:
        return self.d * self.d_prime


class ReducedLattice(NamedTuple):
    triple: TwistTriple
    basis: tuple[Vector, Vector]
    omega: Vector
    omega_prime: Vector
    norm_sq: int
    in_psi: bool
    F_nonzero: bool
    tied: bool  # more than one shortest vector up to sign


class AnnulusModel(NamedTuple):
    C1: float
    C2: float
    seed: int


class ExperimentReport(NamedTuple):
    kind: str  # "model" or "observed"
    B: int
    C: float
    count: int
    reference: float
    seed: Optional[int] = None
    diagnostics: dict[str, Any] = {}


class BoundReport(NamedTuple):
    """Partial sum of the heuristic bound for Q plus the growth of the sums of 4^nu(t)"""

    j: float
    k: float
    C1: float
    T: int
    prefactor: float
    partial_sum: float  # over 2 <= t <= T, without the prefactor
    # (x, sum of 4^nu(t) for t <= x, ratio to x log^3 x or None at x = 1)
    nu_rows: tuple[tuple[int, int, Optional[float]], ...]
