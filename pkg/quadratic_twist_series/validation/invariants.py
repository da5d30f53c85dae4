"""Utilities for validating computed results against independent oracles.
Every check raises ValidationTestFailedException on its first counterexample."""

import json
import math
from collections import defaultdict
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import numpy as np
from sympy import primerange

from quadratic_twist_series.arith import (
    prime_omega,
    squarefree_part,
    zeta_bracket,
    zeta_even,
)
from quadratic_twist_series.constants import (
    LATTICE_ROUTE_RELATIVE_TOLERANCE,
    PER_TERM_RELATIVE_TOLERANCE,
    ZETA_DEFAULT_TOLERANCE,
)
from quadratic_twist_series.curve import default_broad_window, discriminant, eval_F, eval_f
from quadratic_twist_series.exceptions import ValidationTestFailedException
from quadratic_twist_series.export import report_from_dict, report_to_json
from quadratic_twist_series.heuristics import (
    annulus_radii,
    bound_partial_sum,
    default_annulus_model,
    draw_annulus_points,
    four_power_nu_sums,
    random_annulus_count,
)
from quadratic_twist_series.lattice.annulus import (
    annulus_constants,
    fit_annulus_constants,
)
from quadratic_twist_series.lattice.decomposition import decompose_pair
from quadratic_twist_series.lattice.reduction import lattice_contains, shortest_vectors
from quadratic_twist_series.lattice.roots import omega_d
from quadratic_twist_series.lattice.sums import q_partial, r_via_lattices, triples_up_to
from quadratic_twist_series.objects import AnnulusModel, Curve, SumParams, SumReport
from quadratic_twist_series.psi import enumerate_psi, lift_point, rank_mine, unlift_point
from quadratic_twist_series.series import r_partial, r_term, r_term_direct, s_partial

CONGRUENT_CURVE = (0, -1, 0)


def _relative_gap(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def validate_per_term_identity(curve: Curve, N: int, k_values: Sequence[float]) -> None:
    """The inner t-sum from the squarefree split equals the sum over divisors of |F|"""
    for pair in enumerate_psi(curve, N):
        for k in k_values:
            via_split, direct = r_term(pair.F, k), r_term_direct(pair.F, k)
            if _relative_gap(via_split, direct) > PER_TERM_RELATIVE_TOLERANCE:
                raise ValidationTestFailedException(
                    "per_term_identity",
                    f"{via_split!r} != {direct!r}",
                    {"u": pair.u, "v": pair.v, "F": pair.F, "k": k},
                )


def validate_sandwich(
    curve: Curve,
    N: int,
    j_values: Sequence[float],
    k_values: Sequence[float],
    workers: Optional[int] = None,
    zeta_tolerance: float = ZETA_DEFAULT_TOLERANCE,
) -> None:
    """S <= R <= zeta(2k) S over the same box"""
    for j in j_values:
        for k in k_values:
            params = SumParams(j=j, k=k, N=N)
            low = s_partial(curve, params, workers=workers).value
            middle = r_partial(curve, params, workers=workers).value
            high = zeta_even(2 * k, zeta_tolerance) * low
            slack = PER_TERM_RELATIVE_TOLERANCE * high
            if not low - slack <= middle <= high + slack:
                raise ValidationTestFailedException(
                    "sandwich",
                    f"S={low!r}, R={middle!r}, zeta(2k) S={high!r}",
                    {"j": j, "k": k, "N": N},
                )


def validate_lattice_route(
    curve: Curve,
    N: int,
    params_grid: Sequence[tuple[float, float]],
    workers: Optional[int] = None,
) -> None:
    """R regrouped over the lattices agrees with R summed pair by pair"""
    for j, k in params_grid:
        params = SumParams(j=j, k=k, N=N)
        by_pairs = r_partial(curve, params, workers=workers)
        by_lattices = r_via_lattices(curve, params, workers=workers)
        gap = _relative_gap(by_pairs.value, by_lattices.value)
        if gap > LATTICE_ROUTE_RELATIVE_TOLERANCE:
            raise ValidationTestFailedException(
                "lattice_route",
                f"pairwise {by_pairs.value!r} != by lattices {by_lattices.value!r}",
                {"j": j, "k": k, "N": N},
            )


def validate_partition(curve: Curve, N: int, max_t: int) -> None:
    """For every boxed pair and t <= max_t, exactly one lattice with dd' = t holds the pair
    when t^2 | F, none otherwise, and it is the one decompose_pair names"""
    triples_by_t = defaultdict(list)
    for triple in triples_up_to(curve, max_t):
        triples_by_t[triple.t].append(triple)
    for pair in enumerate_psi(curve, N):
        for t in range(1, max_t + 1):
            holding = [
                tr for tr in triples_by_t[t] if lattice_contains(tr, pair.u, pair.v)
            ]
            counterexample = {
                "u": pair.u,
                "v": pair.v,
                "t": t,
                "holding": [list(tr) for tr in holding],
            }
            if pair.F % (t * t):
                if holding:
                    raise ValidationTestFailedException(
                        "partition",
                        "pair lies in a lattice although t^2 does not divide F",
                        counterexample,
                    )
                continue
            if len(holding) != 1:
                raise ValidationTestFailedException(
                    "partition",
                    f"pair lies in {len(holding)} lattices with dd' = t",
                    counterexample,
                )
            triple = decompose_pair(curve, pair.u, pair.v, t)
            if triple != holding[0] or triple.alpha not in omega_d(curve, triple.d).residues:
                raise ValidationTestFailedException(
                    "partition", f"decompose_pair gave {triple}", counterexample
                )


def validate_omega(curve: Curve, max_d: int) -> None:
    """omega_d agrees with a scan of Z/d^2"""
    for d in range(1, max_d + 1):
        modulus = d * d
        scanned = tuple(
            alpha for alpha in range(modulus) if eval_f(curve, alpha) % modulus == 0
        )
        computed = omega_d(curve, d).residues
        if computed != scanned:
            raise ValidationTestFailedException(
                "omega",
                f"Hensel lifting disagrees with the scan for d={d}",
                {"d": d, "computed": list(computed), "scanned": list(scanned)},
            )


def _brute_force_minimum(triple, radius: int) -> int:
    d_sq, d_prime_sq = triple.d**2, triple.d_prime**2
    best = None
    for v in range(-(radius // d_prime_sq) * d_prime_sq, radius + 1, d_prime_sq):
        residue = (triple.alpha * v) % d_sq
        first_u = residue - ((residue + radius) // d_sq) * d_sq
        for u in range(first_u, radius + 1, d_sq):
            if u == 0 and v == 0:
                continue
            size = u * u + v * v
            if best is None or size < best:
                best = size
    return best


def validate_reduction(curve: Curve, max_t: int) -> None:
    """Lagrange-Gauss minima match a brute-force search, satisfy the Hermite bound,
    and the reduced pair is quasi-orthogonal"""
    for triple in triples_up_to(curve, max_t):
        reduced = shortest_vectors(curve, triple)
        t = triple.t
        brute = _brute_force_minimum(triple, 2 * t)
        omega, omega_prime = reduced.omega, reduced.omega_prime
        dot = omega[0] * omega_prime[0] + omega[1] * omega_prime[1]
        failures = []
        if brute != reduced.norm_sq:
            failures.append(f"brute-force minimum {brute} != {reduced.norm_sq}")
        # |omega|^2 <= (2/sqrt 3) t^2, squared to stay in integers
        if 3 * reduced.norm_sq**2 > 4 * t**4:
            failures.append("Hermite bound violated")
        if 2 * abs(dot) > reduced.norm_sq:
            failures.append("reduced vectors are not quasi-orthogonal")
        if abs(omega[0] * omega_prime[1] - omega[1] * omega_prime[0]) != t * t:
            failures.append("omega, omega' do not span the lattice")
        if failures:
            raise ValidationTestFailedException(
                "reduction",
                "; ".join(failures),
                {"triple": list(triple), "omega": list(omega)},
            )


def validate_multiplicativity(curve: Curve, N: int) -> None:
    """On y^2 = x^3 - x, s(F(u, v)) is the squarefree part of s(u) s(v) s(u+v) s(u-v)"""
    if curve.coefficients != CONGRUENT_CURVE:
        return
    for pair in enumerate_psi(curve, N):
        u, v = pair.u, pair.v
        product = 1
        for factor in (u, v, u + v, u - v):
            product *= squarefree_part(factor).s
        if squarefree_part(product).s != squarefree_part(pair.F).s:
            raise ValidationTestFailedException(
                "multiplicativity", "factorwise squarefree parts disagree", {"u": u, "v": v}
            )


def validate_twist_mining(curve: Curve, N: int, workers: Optional[int] = None) -> None:
    """Every witness lifts to its twist; on y^2 = x^3 - x the non-congruent
    1, 2, 3 never occur while 5, 6, 7 do"""
    histogram = rank_mine(curve, N, workers=workers)
    for entry in histogram.entries:
        for pair in entry.witnesses:
            point = lift_point(curve, pair.u, pair.v)
            if point.D != entry.D:
                raise ValidationTestFailedException(
                    "twist_mining",
                    f"witness lifts to D={point.D}",
                    {"D": entry.D, "u": pair.u, "v": pair.v},
                )
    if curve.coefficients != CONGRUENT_CURVE:
        return
    for D in (1, 2, 3):
        if histogram.count(D):
            raise ValidationTestFailedException(
                "twist_mining", f"non-congruent D={D} was mined", {"D": D, "N": N}
            )
    for D in (5, 6, 7):
        if N >= 25 and not histogram.count(D):
            raise ValidationTestFailedException(
                "twist_mining", f"congruent D={D} was not mined", {"D": D, "N": N}
            )


def validate_q_truncations(curve: Curve, max_B: int, workers: Optional[int] = None) -> None:
    """Q at B = 1 is the single term of the lattice Z^2; Q is nondecreasing in B"""
    expected = 1.0 if eval_F(curve, 0, 1) != 0 else 0.0
    previous = None
    for B in range(1, max_B + 1):
        value = q_partial(curve, 1.0, 1.0, B, workers=workers).value
        if B == 1 and value != expected:
            raise ValidationTestFailedException(
                "q_truncations", f"Q at B=1 is {value!r}, expected {expected!r}", {"B": 1}
            )
        if previous is not None and value < previous:
            raise ValidationTestFailedException(
                "q_truncations", f"Q decreased from {previous!r} to {value!r}", {"B": B}
            )
        previous = value


def validate_annulus(curve: Curve, T: int) -> None:
    """Shortest vectors with F(omega) != 0 lie in C1 sqrt(t) <= |omega| <= C2 t"""
    C1, C2 = annulus_constants(curve)
    inner, outer = fit_annulus_constants(curve, T)
    if inner < C1 or outer > C2:
        raise ValidationTestFailedException(
            "annulus",
            f"observed ({inner}, {outer}) outside proven ({C1}, {C2})",
            {"T": T, "observed": [inner, outer], "proven": [C1, C2]},
        )


def validate_determinism(curve: Curve, N: int, B: int) -> None:
    """Reports are bit-identical across worker counts and seeded draws repeat"""
    params = SumParams(j=1.0, k=1.0, N=N)
    for evaluate in (s_partial, r_partial):
        single = evaluate(curve, params, workers=1)
        pooled = evaluate(curve, params, workers=2)
        if single != pooled:
            raise ValidationTestFailedException(
                "determinism",
                f"{single.series} differs between 1 and 2 workers: {single.value!r} vs {pooled.value!r}",
                {"N": N},
            )
    model = default_annulus_model(curve)
    first = random_annulus_count(curve, model, B, 1.0, workers=1)
    second = random_annulus_count(curve, model, B, 1.0, workers=2)
    if first != second:
        raise ValidationTestFailedException(
            "determinism", "seeded annulus counts differ", {"B": B, "seed": model.seed}
        )
    if int(four_power_nu_sums(10)[-1]) != 61:
        raise ValidationTestFailedException("determinism", "sum of 4^nu(t) up to 10 != 61")


def validate_report_round_trip(report: Any, record_type: type = SumReport) -> None:
    """A JSON report parses back to an equal value"""
    revived = report_from_dict(json.loads(report_to_json(report)), record_type)
    if revived != report:
        raise ValidationTestFailedException(
            "round_trip", f"{revived} != {report}", {"record_type": record_type.__name__}
        )


def _nonzero(bound: int) -> Iterable[int]:
    return (n for n in range(-bound, bound + 1) if n)


def validate_squarefree_products(max_n: int) -> None:
    """s(ab) = s(a) s(b) whenever gcd(a, b) = 1"""
    for a in _nonzero(max_n):
        for b in range(1, max_n + 1):
            if math.gcd(a, b) != 1:
                continue
            product = squarefree_part(a * b).s
            if product != squarefree_part(a).s * squarefree_part(b).s:
                raise ValidationTestFailedException(
                    "squarefree_products", f"s({a * b}) = {product}", {"a": a, "b": b}
                )


def validate_squarefree_square_classes(max_n: int, max_k: int) -> None:
    """Multiplying by a square leaves the squarefree part unchanged"""
    for n in _nonzero(max_n):
        s = squarefree_part(n).s
        for k in range(1, max_k + 1):
            if squarefree_part(n * k * k).s != s:
                raise ValidationTestFailedException(
                    "squarefree_square_classes", f"s({n} * {k}^2) != s({n})", {"n": n, "k": k}
                )


def validate_nu_bound(max_d: int) -> None:
    """nu(d) <= log2(d), i.e. 2^nu(d) <= d"""
    for d in range(2, max_d + 1):
        nu = prime_omega(d)
        if 2**nu > d:
            raise ValidationTestFailedException(
                "nu_bound", f"nu({d}) = {nu} exceeds log2({d})", {"d": d}
            )


def validate_zeta_bracket(
    w_values: Sequence[float], M_values: Sequence[int], tol: float = ZETA_DEFAULT_TOLERANCE
) -> None:
    """zeta_even lies between the lower and upper tail brackets at every cut-off M"""
    for w in w_values:
        value = zeta_even(w, tol)
        for M in M_values:
            low, high = zeta_bracket(w, M)
            if not low - tol <= value <= high + tol:
                raise ValidationTestFailedException(
                    "zeta_bracket",
                    f"zeta({w}) = {value!r} outside [{low!r}, {high!r}]",
                    {"w": w, "M": M},
                )


def validate_quartic_symmetry(curve: Curve, N: int) -> None:
    """F(-u, -v) = F(u, v); for odd f also F(-u, v) = -F(u, v)"""
    odd = curve.a == 0 and curve.c == 0
    for u in range(-N, N + 1):
        for v in range(-N, N + 1):
            F = eval_F(curve, u, v)
            if eval_F(curve, -u, -v) != F or (odd and eval_F(curve, -u, v) != -F):
                raise ValidationTestFailedException(
                    "quartic_symmetry", "F is not even under (u, v) -> (-u, -v)", {"u": u, "v": v}
                )


def validate_dehomogenization(curve: Curve, N: int) -> None:
    """F(u, v) = v^4 f(u/v) in exact rational arithmetic"""
    for v in _nonzero(N):
        for u in range(-N, N + 1):
            if v**4 * eval_f(curve, Fraction(u, v)) != eval_F(curve, u, v):
                raise ValidationTestFailedException(
                    "dehomogenization", "F(u, v) != v^4 f(u/v)", {"u": u, "v": v}
                )


def validate_rational_twist_class(curve: Curve, N: int) -> None:
    """The squarefree class of the rational f(u/v) is that of F(u, v)"""
    for pair in enumerate_psi(curve, N):
        value = eval_f(curve, Fraction(pair.u, pair.v))
        rational_class = squarefree_part(value.numerator * value.denominator).s
        if rational_class != squarefree_part(pair.F).s:
            raise ValidationTestFailedException(
                "rational_twist_class",
                f"s(f(u/v)) = {rational_class}",
                {"u": pair.u, "v": pair.v, "F": pair.F},
            )


def validate_lift_injectivity(curve: Curve, N: int) -> None:
    """Within each twist distinct pairs lift to distinct x, and unlifting recovers the pair"""
    seen: dict[tuple[int, Fraction], tuple[int, int]] = {}
    for pair in enumerate_psi(curve, N):
        point = lift_point(curve, pair.u, pair.v)
        key = (point.D, point.x)
        if key in seen:
            raise ValidationTestFailedException(
                "lift_injectivity",
                f"two pairs share x = {point.x} on D = {point.D}",
                {"pairs": [list(seen[key]), [pair.u, pair.v]]},
            )
        seen[key] = (pair.u, pair.v)
        if unlift_point(curve, point) != (pair.u, pair.v):
            raise ValidationTestFailedException(
                "lift_injectivity", "unlift does not invert lift", {"u": pair.u, "v": pair.v}
            )


def validate_histogram_completeness(curve: Curve, N: int, workers: Optional[int] = None) -> None:
    """Every enumerated pair lands in exactly one twist of the histogram"""
    histogram = rank_mine(curve, N, workers=workers)
    enumerated = sum(1 for _ in enumerate_psi(curve, N))
    counted = sum(histogram.counts.values())
    if not counted == histogram.total_pairs == enumerated:
        raise ValidationTestFailedException(
            "histogram_completeness",
            f"histogram holds {counted} pairs, {enumerated} were enumerated",
            {"N": N},
        )


def validate_box_monotonicity(
    curve: Curve,
    boxes: Sequence[int],
    j: float,
    k: float,
    workers: Optional[int] = None,
) -> None:
    """S and R are nondecreasing in the box size"""
    for evaluate in (s_partial, r_partial):
        previous = None
        for N in sorted(boxes):
            value = evaluate(curve, SumParams(j=j, k=k, N=N), workers=workers).value
            if previous is not None and value < previous:
                raise ValidationTestFailedException(
                    "box_monotonicity",
                    f"{evaluate.__name__} decreased from {previous!r} to {value!r}",
                    {"N": N, "j": j, "k": k},
                )
            previous = value


def validate_k_monotonicity(
    curve: Curve,
    N: int,
    j: float,
    k_values: Sequence[float],
    workers: Optional[int] = None,
) -> None:
    """S is nonincreasing in k once every boxed twist has |s| >= 2; vacuous otherwise"""
    smallest = min(abs(squarefree_part(pair.F).s) for pair in enumerate_psi(curve, N))
    if smallest < 2:
        return
    previous = None
    for k in sorted(k_values):
        value = s_partial(curve, SumParams(j=j, k=k, N=N), workers=workers).value
        if previous is not None and value > previous:
            raise ValidationTestFailedException(
                "k_monotonicity",
                f"S increased from {previous!r} to {value!r}",
                {"N": N, "j": j, "k": k},
            )
        previous = value


def validate_window_domination(
    curve: Curve, N: int, j: float, k: float, workers: Optional[int] = None
) -> None:
    """Restricting u/v to the default broad window can only drop terms"""
    params = SumParams(j=j, k=k, N=N)
    windowed = params._replace(window=default_broad_window(curve))
    for evaluate in (s_partial, r_partial):
        full = evaluate(curve, params, workers=workers)
        restricted = evaluate(curve, windowed, workers=workers)
        if restricted.value > full.value or restricted.term_count > full.term_count:
            raise ValidationTestFailedException(
                "window_domination",
                f"windowed {evaluate.__name__} {restricted.value!r} exceeds {full.value!r}",
                {"N": N, "j": j, "k": k},
            )


def validate_omega_multiplicativity(curve: Curve, max_d: int) -> None:
    """|Omega_(d1 d2)| = |Omega_d1| |Omega_d2| for coprime d1, d2"""
    for d1 in range(2, max_d + 1):
        for d2 in range(d1 + 1, max_d // d1 + 1):
            if math.gcd(d1, d2) != 1:
                continue
            joint = len(omega_d(curve, d1 * d2).residues)
            split = len(omega_d(curve, d1).residues) * len(omega_d(curve, d2).residues)
            if joint != split:
                raise ValidationTestFailedException(
                    "omega_multiplicativity",
                    f"|Omega_{d1 * d2}| = {joint}, product of factors = {split}",
                    {"d1": d1, "d2": d2},
                )


def validate_omega_prime_power_bound(curve: Curve, max_p: int, max_e: int) -> None:
    """|Omega_(p^e)| <= 3 when p does not divide 2 disc(f)"""
    bad = 2 * discriminant(*curve.coefficients)
    for p in map(int, primerange(2, max_p + 1)):
        if bad % p == 0:
            continue
        for e in range(1, max_e + 1):
            size = len(omega_d(curve, p**e).residues)
            if size > 3:
                raise ValidationTestFailedException(
                    "omega_prime_power_bound",
                    f"|Omega_{p}^{e}| = {size}",
                    {"p": p, "e": e},
                )


def validate_area_uniform_mean(model: AnnulusModel, t: int, draws: int) -> None:
    """The mean of |z|^2 over area-uniform draws in the annulus of t is
    (C1^2 t + C2^2 t^2) / 2 within 3 standard errors"""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([model.seed, t])))
    inner, outer = annulus_radii(model, t)
    sizes = (draw_annulus_points(rng, inner, outer, draws) ** 2).sum(axis=1)
    expected = (model.C1**2 * t + model.C2**2 * t * t) / 2
    standard_error = sizes.std(ddof=1) / math.sqrt(draws)
    if abs(sizes.mean() - expected) > 3 * standard_error:
        raise ValidationTestFailedException(
            "area_uniform_mean",
            f"mean |z|^2 = {sizes.mean()!r}, expected {expected!r}",
            {"t": t, "draws": draws, "seed": model.seed},
        )


def validate_bound_ladder(j_values: Sequence[float], ladder: Sequence[int]) -> None:
    """Increments of the heuristic bound over [T, 10T] shrink for j > 4 and grow for j < 3.
    For j > 4 the partial sums also stay below the first term plus the integral tail."""
    for j in j_values:
        increments = [bound_partial_sum(j, 10 * T) - bound_partial_sum(j, T) for T in ladder]
        steps = list(zip(increments, increments[1:]))
        if j > 4:
            ceiling = 1 / (2 * math.log(2) ** (j - 3)) + 1 / ((j - 4) * math.log(2) ** (j - 4))
            top = bound_partial_sum(j, 10 * max(ladder))
            if any(later >= earlier for earlier, later in steps) or top > ceiling:
                raise ValidationTestFailedException(
                    "bound_ladder",
                    f"j={j}: increments {increments} or sum {top!r} not bounded by {ceiling!r}",
                    {"j": j, "ladder": list(ladder)},
                )
        elif j < 3 and any(later <= earlier for earlier, later in steps):
            raise ValidationTestFailedException(
                "bound_ladder", f"j={j}: increments {increments} do not grow", {"j": j}
            )
