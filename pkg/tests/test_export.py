import json

import pytest

from quadratic_twist_series.exceptions import OutputInvalidException
from quadratic_twist_series.export import (
    report_from_dict,
    report_to_json,
    write_report_json,
    write_rows_to_csv,
)
from quadratic_twist_series.heuristics import heuristic_bound_report, observed_short_count
from quadratic_twist_series.lattice import omega_d, q_partial, r_via_lattices, shortest_vectors
from quadratic_twist_series.objects import (
    BoundReport,
    ExperimentReport,
    ReducedLattice,
    RootSet,
    SumParams,
    SumReport,
    TwistTriple,
)
from quadratic_twist_series.parse.string_cleaning import clean_window_string
from quadratic_twist_series.series import s_partial


def _round_trip(report, record_type):
    return report_from_dict(json.loads(report_to_json(report)), record_type)


def test_sum_reports_round_trip(congruent_curve):
    params = SumParams(j=1.5, k=1, N=12, window=clean_window_string("-inf..-1,1..inf"))
    for report in (
        s_partial(congruent_curve, params, breakdown=True),
        r_via_lattices(congruent_curve, params),
        q_partial(congruent_curve, 2, 1.5, 10, "F_nonzero"),
    ):
        assert _round_trip(report, SumReport) == report


def test_lattice_records_round_trip(cube_curve):
    reduced = shortest_vectors(cube_curve, TwistTriple(3, 5, 1))
    assert _round_trip(reduced, ReducedLattice) == reduced
    assert _round_trip(omega_d(cube_curve, 2), RootSet) == RootSet(d=2, residues=())


def test_heuristic_reports_round_trip(cube_curve):
    bound = heuristic_bound_report(5, 1, 0.8, 100, checkpoints=[1, 100])
    assert _round_trip(bound, BoundReport) == bound
    observed = observed_short_count(cube_curve, 20, 1.0)
    assert _round_trip(observed, ExperimentReport) == observed


def test_write_report_json(tmp_path, cube_curve):
    path = tmp_path / "report.json"
    report = s_partial(cube_curve, SumParams(j=1, k=1, N=5))
    write_report_json(report, str(path))
    assert report_from_dict(json.loads(path.read_text()), SumReport) == report


def test_write_rows_to_csv(tmp_path):
    path = tmp_path / "rows.csv"
    write_rows_to_csv([{"D": 6, "count": 4}, {"D": -6, "count": 4}], ("D", "count"), str(path), ";")
    assert path.read_text().splitlines() == ["D;count", "6;4", "-6;4"]


def test_separator_inside_a_cell_is_rejected(tmp_path):
    with pytest.raises(OutputInvalidException):
        write_rows_to_csv([{"witnesses": "(2,1)"}], ("witnesses",), str(tmp_path / "x.csv"))
