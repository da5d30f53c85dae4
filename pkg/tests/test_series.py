import math

import pytest

from quadratic_twist_series.arith import squarefree_part, zeta_even
from quadratic_twist_series.curve import default_broad_window
from quadratic_twist_series.exceptions import PreconditionError
from quadratic_twist_series.objects import SumParams
from quadratic_twist_series.parse.string_cleaning import clean_window_string
from quadratic_twist_series.psi import enumerate_psi
from quadratic_twist_series.series import (
    r_partial,
    r_term,
    r_term_direct,
    s_partial,
    t_bounds,
)


def test_s_partial_small_box(congruent_curve):
    report = s_partial(congruent_curve, SumParams(j=1, k=1, N=2))
    assert report.series == "S"
    assert report.value == pytest.approx(4 / 3, rel=1e-15)
    assert report.term_count == 4
    assert report.params == {"curve": [0, -1, 0], "j": 1, "k": 1, "N": 2, "window": ""}
    assert report.kahan_error_bound < 1e-14


def test_r_partial_equals_s_partial_on_squarefree_values(congruent_curve):
    params = SumParams(j=1, k=1, N=2)
    assert r_partial(congruent_curve, params).value == pytest.approx(4 / 3, rel=1e-15)


def test_breakdown_regroups_by_twist(congruent_curve):
    report = s_partial(congruent_curve, SumParams(j=1, k=1, N=2), breakdown=True)
    assert report.breakdown == pytest.approx({-6: 2 / 3, 6: 2 / 3})
    larger = s_partial(congruent_curve, SumParams(j=2, k=1.5, N=15), breakdown=True)
    assert math.fsum(larger.breakdown.values()) == pytest.approx(larger.value, rel=1e-13)


@pytest.mark.parametrize("k", [1.0, 1.5])
def test_per_term_identity(congruent_curve, k):
    for pair in enumerate_psi(congruent_curve, 30):
        assert r_term(pair.F, k) == pytest.approx(r_term_direct(pair.F, k), rel=1e-12)


@pytest.mark.parametrize("j, k", [(1, 1), (1, 1.5), (2, 1), (2, 1.5)])
def test_sandwich(either_curve, j, k):
    params = SumParams(j=j, k=k, N=30)
    low = s_partial(either_curve, params).value
    middle = r_partial(either_curve, params).value
    assert low <= middle <= zeta_even(2 * k, 1e-10) * low


def test_bit_identical_across_workers(either_curve):
    params = SumParams(j=1, k=1, N=25)
    assert s_partial(either_curve, params, workers=1) == s_partial(
        either_curve, params, workers=2
    )
    assert r_partial(either_curve, params, True, workers=1) == r_partial(
        either_curve, params, True, workers=3
    )


def test_window_restricts_terms(cube_curve):
    window = clean_window_string("2..inf")
    full = s_partial(cube_curve, SumParams(j=1, k=1, N=12))
    restricted = s_partial(cube_curve, SumParams(j=1, k=1, N=12, window=window))
    assert 0 < restricted.term_count < full.term_count
    assert restricted.params["window"] == "2..inf"


def test_t_bounds(cube_curve):
    params = SumParams(j=2, k=1, N=10)
    low, high = t_bounds(cube_curve, params)
    assert high == 4.0**2 * low
    flat_low, flat_high = t_bounds(cube_curve, params._replace(j=0))
    assert flat_low == flat_high


@pytest.mark.parametrize(
    "params", [SumParams(j=-1, k=1, N=5), SumParams(j=1, k=0.5, N=5), SumParams(j=1, k=1, N=0)]
)
def test_invalid_params(cube_curve, params):
    with pytest.raises(PreconditionError):
        s_partial(cube_curve, params)


def test_sums_grow_with_the_box(either_curve):
    for evaluate in (s_partial, r_partial):
        values = [evaluate(either_curve, SumParams(j=1, k=1, N=N)).value for N in (3, 6, 12, 24)]
        assert values == sorted(values)


def test_s_shrinks_as_k_grows_when_twists_are_nontrivial(congruent_curve):
    assert min(abs(squarefree_part(p.F).s) for p in enumerate_psi(congruent_curve, 20)) >= 2
    values = [
        s_partial(congruent_curve, SumParams(j=1, k=k, N=20)).value for k in (0.75, 1, 1.5, 2)
    ]
    assert values == sorted(values, reverse=True)


def test_window_never_adds_terms(either_curve):
    params = SumParams(j=1, k=1, N=20)
    windowed = params._replace(window=default_broad_window(either_curve))
    for evaluate in (s_partial, r_partial):
        full = evaluate(either_curve, params)
        restricted = evaluate(either_curve, windowed)
        assert restricted.value <= full.value
        assert restricted.term_count <= full.term_count


@pytest.mark.slow
@pytest.mark.parametrize("k", [1.0, 1.5])
def test_per_term_identity_at_acceptance_scale(congruent_curve, k):
    for pair in enumerate_psi(congruent_curve, 100):
        assert r_term(pair.F, k) == pytest.approx(r_term_direct(pair.F, k), rel=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("j, k", [(1, 1), (1, 1.5), (2, 1), (2, 1.5)])
def test_sandwich_at_acceptance_scale(either_curve, j, k):
    params = SumParams(j=j, k=k, N=200)
    low = s_partial(either_curve, params).value
    middle = r_partial(either_curve, params).value
    assert low <= middle <= zeta_even(2 * k, 1e-10) * low
