"""Ordered work distribution over fixed stripes of the box"""

import logging
import os
from multiprocessing import Pool
from typing import Callable, Optional, Sequence, TypeVar

from quadratic_twist_series.constants import STRIPE_WIDTH, WORKERS_ENV_VAR
from quadratic_twist_series.exceptions import ConfigError

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: Optional[int] = None) -> int:
    """Explicit worker count, else the environment default, else 1"""
    if workers is None:
        raw_value = os.environ.get(WORKERS_ENV_VAR, "1")
        try:
            workers = int(raw_value)
        except ValueError as e:
            raise ConfigError(WORKERS_ENV_VAR, f"expected an integer, got '{raw_value}'") from e
    if workers < 1:
        raise ConfigError("workers", f"must be >= 1, got {workers}")
    return workers


def v_stripes(N: int, width: int = STRIPE_WIDTH) -> list[tuple[int, int]]:
    """Splits 1..N into consecutive inclusive ranges of at most `width` values

    Examples:
        >>> v_stripes(10, 4)
        [(1, 4), (5, 8), (9, 10)]
        >>> v_stripes(0, 4)
        []
    """
    return [(lo, min(lo + width - 1, N)) for lo in range(1, N + 1, width)]


def ordered_map(
    func: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None
) -> list[R]:
    """Maps func over items, returning results in item order whatever the worker count"""
    n_workers = min(resolve_workers(workers), max(len(items), 1))
    if n_workers <= 1:
        return [func(item) for item in items]
    logger.debug("distributing %d work units over %d processes", len(items), n_workers)
    with Pool(processes=n_workers) as pool:
        return pool.map(func, items)
