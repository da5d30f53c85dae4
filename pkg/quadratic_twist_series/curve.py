"""The curve y^2 = f(x) = x^3 + ax^2 + bx + c, its binary quartic F, heights and broad windows"""

import logging
import math
from fractions import Fraction

import numpy as np

from quadratic_twist_series.constants import (
    NEWTON_MAX_STEPS,
    ROOT_TOLERANCE,
    WINDOW_SNAP_DENOMINATOR,
)
from quadratic_twist_series.exceptions import PreconditionError, RepeatedRootError
from quadratic_twist_series.objects import Curve, Interval, WindowX

logger = logging.getLogger(__name__)


def discriminant(a: int, b: int, c: int) -> int:
    """Discriminant of x^3 + ax^2 + bx + c

    Examples:
        >>> discriminant(0, -1, 0)
        4
        >>> discriminant(0, 0, -2)
        -108
    """
    return 18 * a * b * c - 4 * a**3 * c + a**2 * b**2 - 4 * b**3 - 27 * c**2


def _polish_root(a: int, b: int, c: int, x: float) -> float:
    nearest = round(x)
    if nearest**3 + a * nearest**2 + b * nearest + c == 0:
        return float(nearest)
    for _ in range(NEWTON_MAX_STEPS):
        slope = 3 * x * x + 2 * a * x + b
        if slope == 0:
            break
        step = (x**3 + a * x * x + b * x + c) / slope
        x -= step
        if abs(step) <= ROOT_TOLERANCE * max(1.0, abs(x)):
            break
    return x


def make_curve(a: int, b: int, c: int) -> Curve:
    """Validates the coefficients and locates the real roots of f

    Examples:
        >>> make_curve(0, -1, 0)
        Curve(a=0, b=-1, c=0, e_min=-1.0, e_max=1.0, real_root_count=3)
    """
    disc = discriminant(a, b, c)
    if disc == 0:
        raise RepeatedRootError(
            f"repeated root: x^3 + {a}x^2 + {b}x + {c} has zero discriminant"
        )
    # sign of the discriminant decides the number of real roots exactly
    real_root_count = 3 if disc > 0 else 1
    approximations = sorted(np.roots([1, a, b, c]), key=lambda z: abs(z.imag))
    real_roots = sorted(
        _polish_root(a, b, c, float(z.real)) for z in approximations[:real_root_count]
    )
    logger.debug("real roots of (%d, %d, %d): %s", a, b, c, real_roots)
    return Curve(
        a=a,
        b=b,
        c=c,
        e_min=real_roots[0],
        e_max=real_roots[-1],
        real_root_count=real_root_count,
    )


def eval_f(curve: Curve, x: int | Fraction) -> int | Fraction:
    return x**3 + curve.a * x**2 + curve.b * x + curve.c


def cubic_part(curve: Curve, u: int, v: int) -> int:
    """v^3 f(u/v) = u^3 + a u^2 v + b u v^2 + c v^3"""
    return u**3 + curve.a * u * u * v + curve.b * u * v * v + curve.c * v**3


def eval_F(curve: Curve, u: int, v: int) -> int:
    """F(u, v) = v^4 f(u/v)

    Examples:
        >>> eval_F(make_curve(0, -1, 0), 2, 1)
        6
        >>> eval_F(make_curve(0, 0, -2), 3, 1)
        25
    """
    return v * cubic_part(curve, u, v)


def height_h(u: int, v: int) -> float:
    """h(u/v) = max{1, log|u|, log|v|} for u/v in lowest terms

    Examples:
        >>> height_h(1, 2)
        1.0
        >>> round(height_h(2, 3), 4)
        1.0986
    """
    if v == 0 or math.gcd(u, v) != 1:
        raise PreconditionError(f"height needs u/v in lowest terms, got ({u}, {v})")
    return max(1.0, math.log(abs(u)) if u else 0.0, math.log(abs(v)))


def _snap_down(x: float) -> Fraction:
    return Fraction(math.floor(x * WINDOW_SNAP_DENOMINATOR), WINDOW_SNAP_DENOMINATOR)


def _snap_up(x: float) -> Fraction:
    return Fraction(math.ceil(x * WINDOW_SNAP_DENOMINATOR), WINDOW_SNAP_DENOMINATOR)


def default_broad_window(curve: Curve) -> WindowX:
    """(e_min - 2, e_min - 1) U (e_max + 1, e_max + 2), which is bounded and keeps
    f away from zero on its closure"""
    return WindowX(
        intervals=(
            Interval(lo=_snap_down(curve.e_min - 2), hi=_snap_up(curve.e_min - 1)),
            Interval(lo=_snap_down(curve.e_max + 1), hi=_snap_up(curve.e_max + 2)),
        )
    )


def is_broad(window: WindowX, curve: Curve) -> bool:
    """True when the window meets both (e_max, inf) and (-inf, e_min)"""
    meets_right = any(
        iv.lo < iv.hi and iv.hi > curve.e_max for iv in window.intervals
    )
    meets_left = any(iv.lo < iv.hi and iv.lo < curve.e_min for iv in window.intervals)
    return meets_right and meets_left
