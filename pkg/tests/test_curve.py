from fractions import Fraction

import pytest

from quadratic_twist_series.arith import squarefree_part
from quadratic_twist_series.curve import (
    cubic_part,
    default_broad_window,
    discriminant,
    eval_F,
    eval_f,
    height_h,
    is_broad,
    make_curve,
)
from quadratic_twist_series.exceptions import PreconditionError, RepeatedRootError
from quadratic_twist_series.objects import Interval, WindowX
from quadratic_twist_series.psi import enumerate_psi


def test_congruent_curve_roots(congruent_curve):
    assert congruent_curve.real_root_count == 3
    assert (congruent_curve.e_min, congruent_curve.e_max) == (-1.0, 1.0)


def test_cube_curve_has_one_real_root(cube_curve):
    assert cube_curve.real_root_count == 1
    assert cube_curve.e_min == cube_curve.e_max == pytest.approx(2 ** (1 / 3), abs=1e-12)


@pytest.mark.parametrize("coefficients", [(0, 0, 0), (0, -3, 2), (-3, 3, -1)])
def test_repeated_roots_are_rejected(coefficients):
    assert discriminant(*coefficients) == 0
    with pytest.raises(RepeatedRootError, match="repeated root"):
        make_curve(*coefficients)


def test_quartic_form_is_homogenised_cubic(cube_curve):
    for u, v in [(3, 1), (-4, 5), (7, 3)]:
        assert eval_F(cube_curve, u, v) == v * cubic_part(cube_curve, u, v)
        assert Fraction(eval_F(cube_curve, u, v), v**4) == eval_f(cube_curve, Fraction(u, v))


def test_height_h():
    assert height_h(0, 1) == 1.0
    assert height_h(1, 2) == 1.0
    assert height_h(-20, 3) == pytest.approx(2.995732273554, rel=1e-12)


@pytest.mark.parametrize("u, v", [(2, 4), (1, 0)])
def test_height_needs_lowest_terms(u, v):
    with pytest.raises(PreconditionError):
        height_h(u, v)


def test_default_window_is_broad(either_curve):
    window = default_broad_window(either_curve)
    assert is_broad(window, either_curve)
    assert window.contains(-3, 1) == (either_curve.e_min - 2 < -3 < either_curve.e_min - 1)


def test_one_sided_window_is_not_broad(congruent_curve):
    window = WindowX(intervals=(Interval(lo=Fraction(2), hi=Fraction(3)),))
    assert not is_broad(window, congruent_curve)


def test_quartic_form_is_even(either_curve):
    for u in range(-12, 13):
        for v in range(-12, 13):
            assert eval_F(either_curve, -u, -v) == eval_F(either_curve, u, v)


def test_odd_cubic_gives_odd_quartic(congruent_curve):
    for u in range(-12, 13):
        for v in range(-12, 13):
            assert eval_F(congruent_curve, -u, v) == -eval_F(congruent_curve, u, v)


def test_quartic_form_is_scaled_cubic_in_exact_arithmetic(either_curve):
    for u in range(-15, 16):
        for v in range(1, 16):
            assert v**4 * eval_f(either_curve, Fraction(u, v)) == eval_F(either_curve, u, v)


def test_rational_value_shares_twist_class(either_curve):
    for pair in enumerate_psi(either_curve, 20):
        value = eval_f(either_curve, Fraction(pair.u, pair.v))
        assert (
            squarefree_part(value.numerator * value.denominator).s
            == squarefree_part(pair.F).s
        )
