"""Compensated (Kahan) accumulation in a fixed order"""

import sys


class CompensatedSum:
    """Running Kahan sum that also tracks what its error bound needs.
    Partial sums are merged in a fixed order, so the final value only depends
    on how the terms were grouped, never on which worker produced them."""

    __slots__ = ("total", "compensation", "term_count", "abs_sum")

    def __init__(self) -> None:
        self.total = 0.0
        self.compensation = 0.0
        self.term_count = 0
        self.abs_sum = 0.0

    def _step(self, term: float) -> None:
        y = term - self.compensation
        t = self.total + y
        self.compensation = (t - self.total) - y
        self.total = t

    def add(self, term: float) -> None:
        self._step(term)
        self.term_count += 1
        self.abs_sum += abs(term)

    def merge(self, other: "CompensatedSum") -> None:
        self._step(other.total)
        self._step(-other.compensation)
        self.term_count += other.term_count
        self.abs_sum += other.abs_sum

    @property
    def value(self) -> float:
        return self.total

    @property
    def error_bound(self) -> float:
        """term_count * machine epsilon * sum of |terms|"""
        return self.term_count * sys.float_info.epsilon * self.abs_sum

    def __getstate__(self) -> tuple[float, float, int, float]:
        return (self.total, self.compensation, self.term_count, self.abs_sum)

    def __setstate__(self, state: tuple[float, float, int, float]) -> None:
        self.total, self.compensation, self.term_count, self.abs_sum = state
