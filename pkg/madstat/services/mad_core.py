"""
Mean Absolute Deviation Core

Point estimators and empirical-distribution primitives.

Key Responsibilities:
1. Sample MAD about the sample mean, (1/n) sum |X_i - mean|
2. Oracle MAD about a known mean mu, (1/n) sum |X_i - mu|
3. Empirical dispersion function D(u) = (1/n) sum |X_i - u| and its slope 2 F_n(u) - 1
4. Sign balance and atom fraction of a sample relative to mu

Numerical Rules:
- All sums use numpy's pairwise summation; the mean is computed once per Series
- sample_mad(s) and oracle_mad(s, s.mean) run the exact same code path, so they
  agree bit for bit
- Equality with mu is exact float comparison (atoms of discrete laws are stored
  exactly; a tolerance would invent atoms for continuous data)
"""

from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from madstat.models.series import EcdfSummary, Series, as_series
from madstat.models.statistics import DispersionSlope, SignBalance
from madstat.services.errors import DomainError

SeriesLike = Union[Series, ArrayLike]


def check_finite(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _mean_abs_about(values: np.ndarray, center: float) -> float:
    return float(np.sum(np.abs(values - center)) / values.size)


def sample_mean(s: SeriesLike) -> float:
    return as_series(s).mean


def sample_mad(s: SeriesLike) -> float:
    """
    Mean absolute deviation about the sample mean.

    Args:
        s: Series (or array-like) with n >= 1

    Returns:
        (1/n) sum |X_i - mean|, zero exactly when all values are equal

    Raises:
        DomainError: empty or non-finite input
    """
    series = as_series(s)
    return _mean_abs_about(series.values, series.mean)


def oracle_mad(s: SeriesLike, mu: float) -> float:
    """Mean absolute deviation about a known mean mu."""
    series = as_series(s)
    return _mean_abs_about(series.values, check_finite(mu, "mu"))


def dispersion_fn(s: SeriesLike, u: float) -> float:
    """Empirical dispersion function D(u); convex, minimised at any sample median."""
    series = as_series(s)
    return _mean_abs_about(series.values, check_finite(u, "u"))


def dispersion_derivative(s: SeriesLike, u: float) -> DispersionSlope:
    """
    Slope 2 F_n(u) - 1 of the empirical dispersion function.

    D is not differentiable at sample points; the formula is still returned
    there but flagged with ``kink=True`` so numeric callers can branch.
    """
    series = as_series(s)
    u = check_finite(u, "u")
    ecdf = EcdfSummary(series)
    count_le = int(ecdf.count_at_or_below(u))
    kink = ecdf.count_equal(u) > 0
    return DispersionSlope(value=(2 * count_le - series.n) / series.n, kink=kink)


def sign_balance(s: SeriesLike, mu: float) -> SignBalance:
    """
    Counts of observations below, at and above mu.

    Returns:
        SignBalance with b_hat = p_less - p_greater and p_eq the atom fraction
    """
    series = as_series(s)
    mu = check_finite(mu, "mu")
    values = series.values
    n_less = int(np.count_nonzero(values < mu))
    n_eq = int(np.count_nonzero(values == mu))
    return SignBalance(n=series.n, n_less=n_less, n_eq=n_eq, n_greater=series.n - n_less - n_eq)


def ecdf(s: SeriesLike) -> EcdfSummary:
    return EcdfSummary(as_series(s))
