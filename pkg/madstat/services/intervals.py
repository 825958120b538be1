"""
Confidence Interval Service

Regime-aware intervals for theta around the sample MAD.

Methods:
1. Gaussian limit without an atom (iid or mixing):
       theta_hat +- z sqrt(sigma_theta^2 / n)
   sigma_theta^2 = a^2 var_Y + 2 a cov_YZ + var_Z from the sample (iid) or
   long-run (mixing) covariance
2. Gaussian functional limit with an atom at mu (iid or mixing):
       [theta_hat - q_{1-alpha/2} / sqrt(n), theta_hat - q_{alpha/2} / sqrt(n)]
   with q the quantiles of simulated draws of a Y + p_eq |Y| + Z; the limit
   is not centred, its own quantiles carry the offset
3. Stable limit (iid, declared tail model):
       [theta_hat - (a_n / n) q_{1-alpha/2}, theta_hat - (a_n / n) q_{alpha/2}]
   with q the quantiles of simulated stable draws
"""

import logging
import math
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import stats

from madstat.models.interval import IntervalReport, Regime
from madstat.models.limits import TailModel
from madstat.models.series import Series, as_series
from madstat.models.window import LagWindowSpec
from madstat.services.errors import ConfigError
from madstat.services.limit_laws import (
    gaussian_limit_iid,
    gaussian_limit_mixing,
    norming_an,
    sample_functional_limit,
    sample_stable,
    sigma_theta_sq,
    stable_params_for,
)
from madstat.services.longrun import paired_deviations, resolve_bandwidth
from madstat.services.mad_core import sample_mad, sign_balance

logger = logging.getLogger(__name__)

SeriesLike = Union[Series, ArrayLike]


def _check_level(level: float) -> float:
    if not 0.0 < level < 1.0:
        raise ConfigError(f"level must lie in (0, 1) (got {level})")
    return level


def _limit_quantile_interval(estimate: float, draws: Series, level: float, scale: float):
    tail = (1.0 - level) / 2.0
    q_low, q_high = np.quantile(draws.values, [tail, 1.0 - tail])
    return estimate - scale * float(q_high), estimate - scale * float(q_low)


def gaussian_interval(s: SeriesLike,
                      level: float = 0.95,
                      regime: Regime = Regime.IID,
                      atom: bool = False,
                      mu: Optional[float] = None,
                      bandwidth: Optional[LagWindowSpec] = None,
                      n_draws: int = 100_000,
                      seed: int = 0) -> IntervalReport:
    """
    Interval for theta under the Gaussian functional limit.

    Args:
        s: observed series
        level: coverage in (0, 1)
        regime: IID (sample covariance) or MIXING (long-run covariance)
        atom: the user declares an atom at mu; requires mu
        mu: known population mean; the sample mean is used when omitted
        bandwidth: lag window for the mixing regime
        n_draws: draws of the simulated limit (atom case)
        seed: seed of the simulated limit

    Raises:
        ConfigError: atom declared without mu, bad level, bandwidth too large
    """
    series = as_series(s)
    level = _check_level(level)
    if atom and mu is None:
        raise ConfigError("--atom yes needs the population mean --mu (atoms are counted against it)")
    if regime is Regime.STABLE:
        raise ConfigError("use stable_interval for the stable regime")

    centre = series.mean if mu is None else float(mu)
    estimate = sample_mad(series)
    used_bandwidth = None
    if regime is Regime.MIXING:
        window = bandwidth or LagWindowSpec()
        used_bandwidth = resolve_bandwidth(window, series.n)
        params = gaussian_limit_mixing(paired_deviations(series, centre), window)
    else:
        params = gaussian_limit_iid(series, centre)
    root_n = math.sqrt(series.n)

    if atom:
        draws = sample_functional_limit(params, n_draws, seed)
        lower, upper = _limit_quantile_interval(estimate, draws, level, 1.0 / root_n)
        method = "limit_quantiles"
    else:
        # without a declared atom the limit is the centred Gaussian a Y + Z
        params = params.model_copy(update={"p_eq": 0.0})
        half_width = stats.norm.ppf(0.5 + level / 2.0) * math.sqrt(sigma_theta_sq(params) / series.n)
        lower, upper = estimate - half_width, estimate + half_width
        method = "normal"

    logger.info(f"{regime.value} interval (atom={atom}): [{lower:.6g}, {upper:.6g}] around {estimate:.6g}")
    return IntervalReport(
        n=series.n, regime=regime, atom=atom, level=level, estimate=estimate,
        lower=lower, upper=upper, method=method, limit=params.to_dict(),
        bandwidth=used_bandwidth, norming=root_n,
    )


def stable_interval(s: SeriesLike,
                    tail: TailModel,
                    level: float = 0.95,
                    mu: Optional[float] = None,
                    n_draws: int = 100_000,
                    seed: int = 0) -> IntervalReport:
    """
    Interval for theta under the stable limit of a declared tail model.

    p_less and p_greater are the sample proportions below and above mu (or
    the sample mean); the limit scale is the tail-matched one.
    """
    series = as_series(s)
    level = _check_level(level)
    centre = series.mean if mu is None else float(mu)
    balance = sign_balance(series, centre)
    params = stable_params_for(tail, balance.p_less, balance.p_greater)

    estimate = sample_mad(series)
    norming = series.n / norming_an(tail, series.n)
    draws = sample_stable(params.alpha, True, params.sigma, n_draws, seed)
    lower, upper = _limit_quantile_interval(estimate, draws, level, 1.0 / norming)

    logger.info(f"stable interval (alpha={tail.alpha}): [{lower:.6g}, {upper:.6g}] around {estimate:.6g}")
    return IntervalReport(
        n=series.n, regime=Regime.STABLE, atom=False, level=level, estimate=estimate,
        lower=lower, upper=upper, method="limit_quantiles", limit=params.to_dict(),
        norming=norming,
    )
