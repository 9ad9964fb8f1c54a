"""Empirical distribution tables."""

import bisect
import math
from dataclasses import dataclass

UNITS = ("dB", "meters")


@dataclass(frozen=True)
class CdfTable:
    """Sorted samples of a Monte-Carlo quantity plus its unit tag."""

    sorted_samples: tuple
    unit: str

    def __post_init__(self):
        if not self.sorted_samples:
            raise ValueError("CdfTable needs at least one sample")
        if self.unit not in UNITS:
            raise ValueError(f"unit must be one of {UNITS}, got {self.unit!r}")

    def __len__(self):
        return len(self.sorted_samples)

    def cdf(self, value):
        """Fraction of samples <= value (right-continuous)."""
        return bisect.bisect_right(self.sorted_samples, value) / len(self.sorted_samples)

    def quantile(self, p):
        return quantile(self, p)

    def points(self):
        """``(value, cdf)`` pairs at every sample, the staircase corners."""
        n = len(self.sorted_samples)
        return [(v, (i + 1) / n) for i, v in enumerate(self.sorted_samples)]


def empirical_cdf(samples, unit):
    values = [float(s) for s in samples]
    if not values:
        raise ValueError("empirical_cdf needs a nonempty sample list")
    if not all(math.isfinite(v) for v in values):
        raise ValueError("samples must be finite")
    return CdfTable(tuple(sorted(values)), unit)


def quantile(table, p):
    """Smallest sample s with empirical CDF(s) >= p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    n = len(table.sorted_samples)
    idx = max(0, math.ceil(p * n - 1e-12) - 1)
    return table.sorted_samples[min(idx, n - 1)]
