"""Competing one-parameter estimators of the extremal index.

* :func:`ferro_segers` - intervals estimator (Ferro & Segers, 2003), tuned by
  a threshold.
* :func:`northrop` - blocks estimator (Northrop, 2015), tuned by a block
  length, in sliding or disjoint mode.
"""

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from exind.core import as_series
from exind.errors import InsufficientExceedancesError, InvalidInputError

__all__ = [
    "ExceedanceRecord",
    "BlockConfig",
    "exceedances",
    "empirical_quantile",
    "ferro_segers",
    "ferro_segers_at_level",
    "northrop",
]


@dataclass(frozen=True)
class ExceedanceRecord:
    """1-based positions where a series is strictly above ``threshold``."""

    positions: np.ndarray
    threshold: float

    @property
    def count(self):
        return int(self.positions.size)

    @property
    def interexceedance_times(self):
        return np.diff(self.positions)


@dataclass(frozen=True)
class BlockConfig:
    """Block length ``b`` and block layout for :func:`northrop`."""

    b: int
    mode: str = "sliding"

    def validate(self, n):
        if self.mode not in ("sliding", "disjoint"):
            raise InvalidInputError(f"mode must be 'sliding' or 'disjoint', got {self.mode!r}")
        if int(self.b) != self.b or self.b < 1:
            raise InvalidInputError(f"block length b must be a positive integer, got {self.b!r}")
        nblocks = n - self.b + 1 if self.mode == "sliding" else n // self.b
        if nblocks < 2:
            raise InvalidInputError(f"n={n}, b={self.b} ({self.mode}) gives {max(nblocks, 0)} block(s); need 2")


def exceedances(series, u):
    """Positions (1-based) of values strictly greater than ``u``."""
    x = as_series(series)
    return ExceedanceRecord(positions=np.flatnonzero(x > u) + 1, threshold=float(u))


def empirical_quantile(series, p):
    """Type-1 empirical quantile: the order statistic of rank ``ceil(p * n)``."""
    x = as_series(series)
    if not 0.0 < p <= 1.0:
        raise InvalidInputError(f"quantile level must lie in (0, 1], got {p!r}")
    k = int(np.ceil(p * x.size))
    return float(np.partition(x, k - 1)[k - 1])


def ferro_segers(series, u):
    """Intervals estimator of the extremal index at threshold ``u``.

    With ``N`` exceedances and interexceedance times ``T_1 .. T_{N-1}``::

        max T <= 2:  min(1, 2 (sum T)^2 / ((N-1) sum T^2))
        otherwise:   min(1, 2 (sum (T-1))^2 / ((N-1) sum (T-1)(T-2)))

    Raises
    ------
    InsufficientExceedancesError
        If fewer than two values exceed ``u``.
    """
    rec = exceedances(series, u)
    if rec.count < 2:
        raise InsufficientExceedancesError(
            f"threshold {u!r} leaves {rec.count} exceedance(s); at least 2 are needed"
        )
    t = rec.interexceedance_times.astype(np.float64)
    if t.max() <= 2:
        est = 2.0 * t.sum() ** 2 / ((t.size) * (t * t).sum())
    else:
        est = 2.0 * (t - 1.0).sum() ** 2 / (t.size * ((t - 1.0) * (t - 2.0)).sum())
    return float(min(1.0, est))


def ferro_segers_at_level(series, p):
    """:func:`ferro_segers` with the threshold at the empirical ``p``-quantile."""
    return ferro_segers(series, empirical_quantile(series, p))


def northrop(series, config):
    """Blocks estimator of the extremal index with block length ``config.b``.

    Each block maximum ``M_j`` is mapped to ``V_j = -b log F(M_j)`` with ``F``
    the ``(n + 1)``-denominator empirical df of the full series, and the
    estimate is ``min(1, 1 / mean(V))``.  Sliding mode uses all ``n - b + 1``
    windows; disjoint mode uses ``n // b`` consecutive blocks.
    """
    if isinstance(config, (int, np.integer)):
        config = BlockConfig(b=int(config))
    x = as_series(series)
    n = x.size
    config.validate(n)
    b = int(config.b)
    if config.mode == "sliding":
        maxima = sliding_window_view(x, b).max(axis=1)
    else:
        m = n // b
        maxima = x[: m * b].reshape(m, b).max(axis=1)
    cdf = np.searchsorted(np.sort(x), maxima, side="right") / (n + 1.0)
    v = -b * np.log(cdf)
    return float(min(1.0, 1.0 / v.mean()))
