"""
Long-Run Covariance Service

Estimates the 2x2 long-run covariance of the pair
(X_i - mu, |X_i - mu| - theta), i.e. the lag sums

    Var(Y)     = sum_k cov(X_0, X_k)
    Var(Z)     = sum_k cov(|X_0 - mu|, |X_k - mu|)
    Cov(Y, Z)  = sum_k cov(X_0, |X_k - mu|)

that appear in the Gaussian limit for strongly mixing series.

Estimator:
    S = G_0 + sum_{k=1..B} w_k (G_k + G_k^T),  G_k = (1/n) sum_t u_t u_{t-k}^T

with biased (divide by n) autocovariances of the demeaned pair. The lag sums
are delegated to statsmodels' HAC kernel (``S_hac_simple``), which uses the
same Bartlett and uniform weight sequences.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from statsmodels.stats.sandwich_covariance import S_hac_simple, weights_bartlett, weights_uniform

from madstat.models.series import Series, as_series
from madstat.models.window import KernelType, LagWindowSpec
from madstat.services.errors import ConfigError, DomainError
from madstat.services.mad_core import oracle_mad

logger = logging.getLogger(__name__)

SeriesLike = Union[Series, ArrayLike]

_WEIGHT_FUNCTIONS = {
    KernelType.BARTLETT: weights_bartlett,
    KernelType.TRUNCATED: weights_uniform,
}


def resolve_bandwidth(spec: LagWindowSpec, n: int) -> int:
    """
    Bandwidth B actually used for a series of length n.

    "auto" follows floor(4 (n/100)^(2/9)) and is capped so that
    n >= 2 (B + 1); an explicit bandwidth is checked, never adjusted.

    Raises:
        ConfigError: explicit bandwidth >= n or too large for n
    """
    if spec.bandwidth == "auto":
        return max(0, min(spec.resolve(n), n // 2 - 1))
    bandwidth = spec.resolve(n)
    if bandwidth >= n:
        raise ConfigError(f"bandwidth {bandwidth} must be smaller than the series length {n}")
    if n < 2 * (bandwidth + 1):
        raise ConfigError(f"series length {n} is too short for bandwidth {bandwidth} (need n >= {2 * (bandwidth + 1)})")
    return bandwidth


def kernel_weights(spec: LagWindowSpec, bandwidth: int) -> np.ndarray:
    """Weights w_0..w_B (w_0 = 1)."""
    return np.asarray(_WEIGHT_FUNCTIONS[spec.kernel](bandwidth), dtype=np.float64)


def paired_deviations(s: SeriesLike, mu: float, theta: Optional[float] = None) -> Tuple[Series, Series]:
    """
    Build the pair (X_i - mu, |X_i - mu| - theta).

    Args:
        s: the observed series
        mu: population mean (or its estimate)
        theta: population MAD; defaults to oracle_mad(s, mu)
    """
    series = as_series(s)
    if theta is None:
        theta = oracle_mad(series, mu)
    deviations = series.values - mu
    return Series(deviations), Series(np.abs(deviations) - theta)


def longrun_cov(pair: Tuple[SeriesLike, SeriesLike], spec: Optional[LagWindowSpec] = None) -> np.ndarray:
    """
    Kernel estimate of the long-run covariance matrix of a bivariate series.

    Args:
        pair: two equal-length series (centred by the caller; demeaned here again)
        spec: kernel and bandwidth (default Bartlett, auto bandwidth)

    Returns:
        Symmetric 2x2 matrix. Bandwidth 0 gives the biased sample covariance.

    Raises:
        DomainError: length mismatch
        ConfigError: bandwidth too large for the series length
    """
    spec = spec or LagWindowSpec()
    first, second = (as_series(component) for component in pair)
    if first.n != second.n:
        raise DomainError(f"paired series must have equal length ({first.n} != {second.n})")
    n = first.n
    bandwidth = resolve_bandwidth(spec, n)

    stacked = np.column_stack([first.values - first.mean, second.values - second.mean])
    estimate = S_hac_simple(stacked, nlags=bandwidth, weights_func=_WEIGHT_FUNCTIONS[spec.kernel]) / n
    estimate = 0.5 * (estimate + estimate.T)

    logger.debug(f"longrun_cov: n={n}, kernel={spec.kernel.value}, bandwidth={bandwidth}")
    return estimate


def longrun_variance(x: SeriesLike, spec: Optional[LagWindowSpec] = None) -> float:
    """Scalar long-run variance of one series."""
    series = as_series(x)
    spec = spec or LagWindowSpec()
    bandwidth = resolve_bandwidth(spec, series.n)
    centred = series.values - series.mean
    value = S_hac_simple(centred, nlags=bandwidth, weights_func=_WEIGHT_FUNCTIONS[spec.kernel]) / series.n
    return float(value[0, 0])
