"""Radii of the annuli C1 sqrt(t) <= |omega| <= C2 t holding the shortest vectors"""

import logging
import math

import numpy as np

from quadratic_twist_series.constants import (
    ANNULUS_CIRCLE_SAMPLES,
    ANNULUS_INNER_SAFETY,
    HERMITE_CONSTANT_SQ,
)
from quadratic_twist_series.lattice.reduction import shortest_vectors
from quadratic_twist_series.lattice.sums import triples_up_to
from quadratic_twist_series.objects import Curve

logger = logging.getLogger(__name__)


def quartic_circle_max(curve: Curve) -> float:
    """K = max |F(u, v)| over the unit circle, so |F(w)| <= K |w|^4"""
    theta = np.linspace(0.0, np.pi, ANNULUS_CIRCLE_SAMPLES, endpoint=False)
    u, v = np.cos(theta), np.sin(theta)
    values = v * (u**3 + curve.a * u**2 * v + curve.b * u * v**2 + curve.c * v**3)
    return float(np.max(np.abs(values)))


def annulus_constants(curve: Curve) -> tuple[float, float]:
    """(C1, C2) with C1 sqrt(t) <= |omega| <= C2 t whenever F(omega) != 0.

    Inner: t^2 <= |F(omega)| <= K |omega|^4. Outer: the Hermite bound for a
    lattice of determinant t^2.
    """
    inner = ANNULUS_INNER_SAFETY * quartic_circle_max(curve) ** -0.25
    return inner, math.sqrt(HERMITE_CONSTANT_SQ)


def fit_annulus_constants(curve: Curve, T: int) -> tuple[float, float]:
    """Observed (min |omega| / sqrt(t), max |omega| / t) over triples with dd' <= T
    and F(omega) != 0; (inf, 0) when there are none"""
    inner, outer = math.inf, 0.0
    for triple in triples_up_to(curve, T):
        reduced = shortest_vectors(curve, triple)
        if not reduced.F_nonzero:
            continue
        norm = math.sqrt(reduced.norm_sq)
        inner = min(inner, norm / math.sqrt(triple.t))
        outer = max(outer, norm / triple.t)
    logger.info("fitted annulus constants up to T=%d: C1=%.6f C2=%.6f", T, inner, outer)
    return inner, outer
