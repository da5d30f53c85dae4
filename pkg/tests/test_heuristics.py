import logging
import math

import numpy as np
import pytest

from quadratic_twist_series.exceptions import PreconditionError
from quadratic_twist_series.heuristics import (
    annulus_radii,
    bound_partial_sum,
    default_annulus_model,
    draw_annulus_points,
    expected_annulus_count,
    four_power_nu_sums,
    heuristic_bound_report,
    observed_short_count,
    random_annulus_count,
    run_stats,
    triple_counts,
)
from quadratic_twist_series.objects import AnnulusModel


def test_four_power_nu_sums():
    sums = four_power_nu_sums(10)
    assert int(sums[0]) == 1
    assert int(sums[-1]) == 61


def test_bound_report_first_term():
    report = heuristic_bound_report(4, 1, 1.0, 2)
    assert report.partial_sum == pytest.approx(1 / (2 * math.log(2)), rel=1e-12)
    assert report.prefactor == 1.0
    assert report.nu_rows == ((2, 5, pytest.approx(5 / (2 * math.log(2) ** 3))),)


def test_bound_report_checkpoints():
    report = heuristic_bound_report(5, 1.5, 0.8, 1000, checkpoints=[1, 10, 1000])
    assert [row[0] for row in report.nu_rows] == [1, 10, 1000]
    assert report.nu_rows[0][2] is None
    assert report.nu_rows[1][1] == 61
    assert report.prefactor == pytest.approx(1 / (0.8**6 * 2))


def test_bound_ladder_converges_for_large_j():
    ladder = [10, 100, 1000, 10_000]
    increments = [bound_partial_sum(5, 10 * T) - bound_partial_sum(5, T) for T in ladder]
    assert increments == sorted(increments, reverse=True)
    assert bound_partial_sum(5, 100_000) < 1 / (2 * math.log(2) ** 2) + 1 / math.log(2)


def test_bound_ladder_diverges_for_small_j():
    ladder = [10, 100, 1000, 10_000]
    increments = [bound_partial_sum(2, 10 * T) - bound_partial_sum(2, T) for T in ladder]
    assert increments == sorted(increments)


def test_observed_short_count_first_triple(cube_curve, congruent_curve):
    assert observed_short_count(cube_curve, 2, 1.0).count == 1
    assert observed_short_count(congruent_curve, 2, 1.0).count == 0
    assert observed_short_count(congruent_curve, 2, 1.0, membership=None).count == 1


def test_observed_short_count_is_monotone(either_curve):
    counts = [observed_short_count(either_curve, B, 1.5).count for B in (2, 5, 10, 20, 40)]
    assert counts == sorted(counts)
    report = observed_short_count(either_curve, 40, 1.5, rank_hint=2)
    assert report.reference == pytest.approx(math.log(40))
    histogram = report.diagnostics["inner_edge_histogram"]
    assert len(histogram["counts"]) == len(histogram["edges"]) - 1


def test_default_model_widens_crossing_constants(congruent_curve, caplog):
    with caplog.at_level(logging.WARNING):
        model = default_annulus_model(congruent_curve, seed=7)
    assert model.C2 == pytest.approx(2 * model.C1)
    assert "widening" in caplog.text


def test_random_annulus_count_is_reproducible(cube_curve):
    model = default_annulus_model(cube_curve, seed=11)
    first = random_annulus_count(cube_curve, model, 30, 1.0, workers=1)
    assert first == random_annulus_count(cube_curve, model, 30, 1.0, workers=2)
    assert random_annulus_count(cube_curve, model, 2, 1.0).count in (0, 1)


def test_random_annulus_count_is_monotone(cube_curve):
    model = default_annulus_model(cube_curve, seed=3)
    by_C = [random_annulus_count(cube_curve, model, 25, C).count for C in (0.5, 1, 2, 4, 8)]
    assert by_C == sorted(by_C)
    by_B = [random_annulus_count(cube_curve, model, B, 2.0).count for B in (2, 10, 25)]
    assert by_B == sorted(by_B)


def test_expected_count_bounds(cube_curve):
    model = default_annulus_model(cube_curve)
    expected = expected_annulus_count(cube_curve, model, 20, 2.0)
    triples = sum(count for _, count, _ in triple_counts(cube_curve, 19))
    assert 0 <= expected <= triples


def test_invalid_model_is_rejected(cube_curve):
    with pytest.raises(PreconditionError):
        random_annulus_count(cube_curve, AnnulusModel(C1=2.0, C2=1.0, seed=0), 10, 1.0)
    with pytest.raises(PreconditionError):
        observed_short_count(cube_curve, 1, 1.0)


def test_area_uniform_sampling():
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(2024)))
    inner, outer = 0.8 * math.sqrt(7), 1.1 * 7
    sizes = (draw_annulus_points(rng, inner, outer, 100_000) ** 2).sum(axis=1)
    standard_error = sizes.std() / math.sqrt(sizes.size)
    assert abs(sizes.mean() - (inner**2 + outer**2) / 2) < 3 * standard_error


def test_triple_counts(cube_curve, congruent_curve):
    assert triple_counts(cube_curve, 2) == [(1, 1, 1), (2, 1, 4)]
    assert triple_counts(congruent_curve, 2) == [(1, 1, 1), (2, 4, 4)]


def test_run_stats_rows(cube_curve):
    rows = run_stats(cube_curve, [10, 5], 1.0, replicates=3, seed=5)
    assert [row["B"] for row in rows] == [5, 10]
    assert set(rows[0]) == {"B", "C", "observed", "model_mean", "model_std", "log4_reference"}
    assert rows[1]["log4_reference"] == pytest.approx(math.log(10) ** 4)


def test_annulus_mean_square_radius_matches_model(cube_curve):
    model = default_annulus_model(cube_curve)
    inner, outer = annulus_radii(model, 7)
    expected = (model.C1**2 * 7 + model.C2**2 * 49) / 2
    assert (inner**2 + outer**2) / 2 == pytest.approx(expected, rel=1e-12)
