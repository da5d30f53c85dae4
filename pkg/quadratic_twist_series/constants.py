from typing import Final

ROOT_TOLERANCE: Final[float] = 1e-12  # precision of e_min / e_max
WINDOW_SNAP_DENOMINATOR: Final[int] = 10**12  # window endpoints are snapped outward to this grid
NEWTON_MAX_STEPS: Final[int] = 60

WITNESS_CAP: Final[int] = 64  # witnesses retained per D in rank mining
COPRIME_SIEVE_THRESHOLD: Final[int] = 10**3  # above this box size gcd filtering is sieved per v
STRIPE_WIDTH: Final[int] = 8  # number of v-values per work unit; fixed so results do not depend on worker count

ZETA_DEFAULT_TOLERANCE: Final[float] = 1e-10
PER_TERM_RELATIVE_TOLERANCE: Final[float] = 1e-12
LATTICE_ROUTE_RELATIVE_TOLERANCE: Final[float] = 1e-12

HERMITE_CONSTANT_SQ: Final[float] = 2 / 3**0.5  # gamma_2: ||omega||^2 <= gamma_2 * det
ANNULUS_INNER_SAFETY: Final[float] = 0.99
ANNULUS_CIRCLE_SAMPLES: Final[int] = 200_000
ANNULUS_WIDENING_FACTOR: Final[float] = 2.0  # outer constant is set to factor * C1 when the proven constants cross

RNG_NAME: Final[str] = "numpy.random.Philox (4x64, keyed by SeedSequence([seed, alpha, d, d_prime]))"
DEFAULT_SEED: Final[int] = 20240611
DEFAULT_REPLICATES: Final[int] = 16

MEMBERSHIP_MODES: Final[tuple[str, ...]] = ("strict_psi", "F_nonzero")
SERIES_NAMES: Final[tuple[str, ...]] = ("S", "R", "RL", "Q")
OUTPUT_FORMATS: Final[tuple[str, ...]] = ("json", "csv")

WORKERS_ENV_VAR: Final[str] = "TWIST_SERIES_WORKERS"

EXIT_OK: Final[int] = 0
EXIT_DOMAIN_ERROR: Final[int] = 1
EXIT_CONFIG_ERROR: Final[int] = 2

# default scales of the `verify` suite (kept small enough for an interactive run)
VERIFY_IDENTITY_BOX: Final[int] = 40
VERIFY_SANDWICH_BOX: Final[int] = 40
VERIFY_LATTICE_ROUTE_BOX: Final[int] = 20
VERIFY_PARTITION_BOX: Final[int] = 40
VERIFY_PARTITION_MAX_T: Final[int] = 30
VERIFY_OMEGA_MAX_D: Final[int] = 60
VERIFY_REDUCTION_MAX_T: Final[int] = 40
VERIFY_MULTIPLICATIVITY_BOX: Final[int] = 60
VERIFY_Q_MAX_B: Final[int] = 40
VERIFY_J_VALUES: Final[tuple[float, ...]] = (1.0, 2.0)
VERIFY_K_VALUES: Final[tuple[float, ...]] = (1.0, 1.5)
VERIFY_ARITH_MAX_N: Final[int] = 60
VERIFY_SQUARE_MAX_K: Final[int] = 12
VERIFY_NU_MAX_D: Final[int] = 10**4
VERIFY_ZETA_M_VALUES: Final[tuple[int, ...]] = (1, 10, 100, 1000)
VERIFY_CURVE_BOX: Final[int] = 30
VERIFY_MONOTONICITY_BOXES: Final[tuple[int, ...]] = (5, 10, 20, 40)
VERIFY_PRIME_POWER_MAX_P: Final[int] = 50
VERIFY_PRIME_POWER_MAX_E: Final[int] = 3
VERIFY_AREA_T: Final[int] = 7
VERIFY_AREA_DRAWS: Final[int] = 100_000
VERIFY_BOUND_LADDER: Final[tuple[int, ...]] = (10, 100, 1000, 10_000)
VERIFY_BOUND_J_VALUES: Final[tuple[float, ...]] = (2.0, 5.0, 6.0)
