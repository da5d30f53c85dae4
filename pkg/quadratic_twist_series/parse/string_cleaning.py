"""Utilities for cleaning curve and window strings given on the command line"""

import math
from fractions import Fraction
from typing import Optional

from quadratic_twist_series.exceptions import ConfigError
from quadratic_twist_series.objects import Endpoint, Interval, WindowX


def clean_curve_string(raw_str: str) -> tuple[int, int, int]:
    """Converts a raw 'a,b,c' string into the integer coefficients of
    f(x) = x^3 + ax^2 + bx + c

    Examples:
        >>> clean_curve_string(" 0, -1, 0 ")
        (0, -1, 0)
        >>> clean_curve_string("0,0,-2")
        (0, 0, -2)
    """
    parts = [part.strip() for part in raw_str.replace(" ", "").split(",")]
    if len(parts) != 3:
        raise ConfigError("curve", f"expected three integers 'a,b,c', got '{raw_str}'")
    try:
        a, b, c = (int(part) for part in parts)
    except ValueError as e:
        raise ConfigError("curve", f"coefficients must be integers, got '{raw_str}'") from e
    return a, b, c


def _clean_endpoint(raw_str: str) -> Endpoint:
    clean_str = raw_str.strip().lower()
    if clean_str in ("inf", "+inf"):
        return math.inf
    if clean_str == "-inf":
        return -math.inf
    try:
        return Fraction(clean_str)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError("window", f"cannot read endpoint '{raw_str}'") from e


def clean_window_string(raw_str: Optional[str]) -> Optional[WindowX]:
    """Converts a comma-separated list of open intervals 'lo..hi' into a WindowX.
    Endpoints may be integers, decimals, fractions, 'inf' or '-inf'.
    An empty string or None means the whole real line.

    Examples:
        >>> clean_window_string("-3..-2,2..3").intervals[1]
        Interval(lo=Fraction(2, 1), hi=Fraction(3, 1))
        >>> clean_window_string("1/2..inf").intervals[0].hi
        inf
        >>> clean_window_string("") is None
        True
    """
    if raw_str is None or raw_str.strip() == "":
        return None
    intervals = []
    for chunk in raw_str.split(","):
        bounds = chunk.split("..")
        if len(bounds) != 2:
            raise ConfigError("window", f"interval '{chunk}' is not of the form lo..hi")
        lo, hi = (_clean_endpoint(bound) for bound in bounds)
        if not lo < hi:
            raise ConfigError("window", f"interval '{chunk}' is empty")
        intervals.append(Interval(lo=lo, hi=hi))
    return WindowX(intervals=tuple(intervals))


def _format_endpoint(endpoint: Endpoint) -> str:
    if endpoint == math.inf:
        return "inf"
    if endpoint == -math.inf:
        return "-inf"
    return str(endpoint)


def format_window(window: Optional[WindowX]) -> str:
    """Inverse of clean_window_string; the whole line is written as ''

    Examples:
        >>> format_window(clean_window_string("-3..-2,1/2..inf"))
        '-3..-2,1/2..inf'
    """
    if window is None:
        return ""
    return ",".join(
        f"{_format_endpoint(iv.lo)}..{_format_endpoint(iv.hi)}" for iv in window.intervals
    )
