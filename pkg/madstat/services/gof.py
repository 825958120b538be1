"""
Goodness-of-Fit Service

Distribution comparisons used to verify convergence to a limit law.
References are always large simulated samples; no analytic CDFs and no
p-values. Callers apply their own tolerances to the raw distances.
"""

import math
from typing import Sequence, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import stats

from madstat.models.gof import GofReport, MomentSummary, QuantileRow
from madstat.models.series import Series, as_series
from madstat.services.errors import DomainError

SeriesLike = Union[Series, ArrayLike]

DEFAULT_LEVELS = (0.1, 0.25, 0.5, 0.75, 0.9)


def ks_two_sample(a: SeriesLike, b: SeriesLike) -> float:
    """
    sup_x |F_a(x) - F_b(x)|, exact over the merged sorted samples.

    Raises:
        DomainError: empty input
    """
    first, second = as_series(a), as_series(b)
    return float(stats.ks_2samp(first.values, second.values, method="asymp").statistic)


def _check_levels(levels: Sequence[float]) -> np.ndarray:
    array = np.asarray(levels, dtype=np.float64)
    if array.size == 0 or np.any((array <= 0.0) | (array >= 1.0)):
        raise DomainError(f"quantile levels must lie strictly inside (0, 1) (got {list(levels)})")
    if np.any(np.diff(array) <= 0.0):
        raise DomainError(f"quantile levels must be strictly increasing (got {list(levels)})")
    return array


def quantile_band(sample: SeriesLike, reference: SeriesLike,
                  levels: Sequence[float] = DEFAULT_LEVELS) -> GofReport:
    """
    KS distance plus linearly interpolated (type 7) quantiles of both samples.

    Returns:
        GofReport with one row per level; no pass/fail verdict
    """
    first, second = as_series(sample), as_series(reference)
    grid = _check_levels(levels)
    sample_q = np.quantile(first.values, grid)
    reference_q = np.quantile(second.values, grid)
    rows = [
        QuantileRow(level=float(level), sample_q=float(sq), reference_q=float(rq), abs_gap=float(abs(sq - rq)))
        for level, sq, rq in zip(grid, sample_q, reference_q)
    ]
    return GofReport(
        ks_distance=ks_two_sample(first, second),
        quantile_table=rows,
        n_sample=first.n,
        n_reference=second.n,
    )


def subsample_quantile_se(sample: SeriesLike, levels: Sequence[float] = DEFAULT_LEVELS,
                          n_blocks: int = 20) -> np.ndarray:
    """
    Standard errors of the full-sample quantiles by block subsampling.

    The sample is cut into n_blocks contiguous blocks of size m; the spread of
    the block quantiles, scaled by sqrt(m / n), estimates the SE at size n.
    """
    series = as_series(sample)
    grid = _check_levels(levels)
    block = series.n // n_blocks
    if n_blocks < 2 or block < 2:
        raise DomainError(f"need at least 2 blocks of 2 draws (n={series.n}, n_blocks={n_blocks})")
    blocks = series.values[: block * n_blocks].reshape(n_blocks, block)
    block_quantiles = np.quantile(blocks, grid, axis=1)
    return np.std(block_quantiles, axis=1, ddof=1) * math.sqrt(block / series.n)


def moment_summary(sample: SeriesLike) -> MomentSummary:
    series = as_series(sample)
    values = series.values
    n = series.n
    variance = float(np.var(values, ddof=1)) if n > 1 else 0.0
    kurtosis = float(stats.kurtosis(values, fisher=False)) if variance > 0.0 else 0.0
    return MomentSummary(
        n=n,
        mean=series.mean,
        variance=variance,
        mean_se=math.sqrt(variance / n),
        kurtosis=kurtosis,
        kurtosis_se=math.sqrt(24.0 / n),
    )
