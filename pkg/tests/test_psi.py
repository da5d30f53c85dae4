import math
from fractions import Fraction

import pytest

from quadratic_twist_series.arith import squarefree_part
from quadratic_twist_series.constants import COPRIME_SIEVE_THRESHOLD
from quadratic_twist_series.curve import eval_F, eval_f
from quadratic_twist_series.exceptions import NotInPsiError, PreconditionError
from quadratic_twist_series.objects import CoprimePair
from quadratic_twist_series.parse.string_cleaning import clean_window_string
from quadratic_twist_series.psi import (
    _coprime_u_values,
    classify_pair,
    enumerate_psi,
    histogram_rows,
    lift_point,
    rank_mine,
    stripe_pairs,
    unlift_point,
)


def test_enumerate_psi_small_box(congruent_curve):
    assert list(enumerate_psi(congruent_curve, 2)) == [
        CoprimePair(u=-2, v=1, F=-6),
        CoprimePair(u=2, v=1, F=6),
        CoprimePair(u=-1, v=2, F=6),
        CoprimePair(u=1, v=2, F=-6),
    ]


def test_enumerate_psi_respects_window(congruent_curve):
    window = clean_window_string("1..inf")
    pairs = list(enumerate_psi(congruent_curve, 4, window))
    assert pairs
    assert all(Fraction(pair.u, pair.v) > 1 for pair in pairs)


def test_enumerate_psi_rejects_empty_box(congruent_curve):
    with pytest.raises(PreconditionError):
        list(enumerate_psi(congruent_curve, 0))


def test_classify_pair(congruent_curve):
    assert classify_pair(congruent_curve, 3, 1) == (6, 2)
    with pytest.raises(NotInPsiError):
        classify_pair(congruent_curve, 2, 4)
    with pytest.raises(NotInPsiError):
        classify_pair(congruent_curve, 1, 1)


def test_lift_and_unlift(congruent_curve):
    point = lift_point(congruent_curve, -4, 5)
    assert (point.D, point.x, point.y) == (5, Fraction(-4, 5), Fraction(6, 25))
    assert point.D * point.y**2 == eval_f(congruent_curve, point.x)
    assert unlift_point(congruent_curve, point) == (-4, 5)
    with pytest.raises(PreconditionError):
        unlift_point(congruent_curve, point._replace(D=6))


def test_rank_mine_small_box(congruent_curve):
    histogram = rank_mine(congruent_curve, 3)
    assert [(entry.D, entry.count) for entry in histogram.entries] == [
        (6, 4),
        (-6, 4),
        (30, 2),
        (-30, 2),
    ]
    assert histogram.total_pairs == 12
    assert [(pair.u, pair.v) for pair in histogram.entries[0].witnesses] == [
        (2, 1),
        (3, 1),
        (-1, 2),
        (-1, 3),
    ]


def test_rank_mine_congruent_numbers(congruent_curve):
    histogram = rank_mine(congruent_curve, 60)
    for D in (1, 2, 3):
        assert histogram.count(D) == 0
    for D, (u, v) in [(5, (-4, 5)), (6, (2, 1)), (7, (25, 7))]:
        assert histogram.count(D) >= 1
        assert classify_pair(congruent_curve, u, v).s == D
    assert histogram.count(6) >= 4


def test_rank_mine_top_and_workers(cube_curve):
    single = rank_mine(cube_curve, 20, workers=1)
    pooled = rank_mine(cube_curve, 20, workers=2)
    assert single == pooled
    assert len(rank_mine(cube_curve, 20, top=3).entries) == 3


def test_histogram_rows_points_lie_on_twists(congruent_curve):
    histogram = rank_mine(congruent_curve, 10)
    for row in histogram_rows(congruent_curve, histogram):
        for x, y in row["sample_points"]:
            assert row["D"] * Fraction(y) ** 2 == eval_f(congruent_curve, Fraction(x))


def test_lift_is_injective_within_each_twist(either_curve):
    seen = set()
    for pair in enumerate_psi(either_curve, 30):
        point = lift_point(either_curve, pair.u, pair.v)
        assert (point.D, point.x) not in seen
        seen.add((point.D, point.x))
        assert unlift_point(either_curve, point) == (pair.u, pair.v)


def test_histogram_accounts_for_every_pair(either_curve):
    histogram = rank_mine(either_curve, 40, top=5)
    enumerated = sum(1 for _ in enumerate_psi(either_curve, 40))
    assert sum(histogram.counts.values()) == histogram.total_pairs == enumerated


def test_coprime_sieve_matches_gcd_filter(cube_curve):
    N = 1003
    assert N > COPRIME_SIEVE_THRESHOLD
    for v in (1, 2, 6, 30, 210, 997, 1001, 1003):
        expected = [u for u in range(-N, N + 1) if math.gcd(u, v) == 1]
        assert list(_coprime_u_values(v, N)) == expected
    pairs = stripe_pairs(cube_curve, N, None, (1, 3))
    assert pairs == [
        CoprimePair(u=u, v=v, F=eval_F(cube_curve, u, v))
        for v in (1, 2, 3)
        for u in range(-N, N + 1)
        if math.gcd(u, v) == 1 and eval_F(cube_curve, u, v) != 0
    ]


@pytest.mark.slow
def test_multiplicativity_at_acceptance_scale(congruent_curve):
    for pair in enumerate_psi(congruent_curve, 300):
        u, v = pair.u, pair.v
        product = 1
        for factor in (u, v, u + v, u - v):
            product *= squarefree_part(factor).s
        assert squarefree_part(product).s == squarefree_part(pair.F).s


@pytest.mark.slow
def test_twist_mining_at_acceptance_scale(congruent_curve):
    histogram = rank_mine(congruent_curve, 500)
    assert [histogram.count(D) for D in (1, 2, 3)] == [0, 0, 0]
    assert histogram.count(5) >= 1 and histogram.count(7) >= 1
    assert histogram.count(6) >= 4
    for entry in histogram.entries:
        for pair in entry.witnesses:
            point = lift_point(congruent_curve, pair.u, pair.v)
            assert point.D == entry.D
            assert point.D * point.y**2 == eval_f(congruent_curve, point.x)
