"""
Finite-Sample Expansion Service

Exact decomposition of the difference between the sample MAD and the
oracle MAD:

    (1/n) sum(|X_i - mean| - |X_i - mu|)
        = (mean - mu) (1/n) sum sign(mu - X_i)      linear term
        + |mean - mu| (1/n) sum 1{X_i = mu}         atom term
        + R_n / n                                   remainder

Key Concepts:
- K_n = {i : A_n < X_i < B_n}, A_n = min(mean, mu), B_n = max(mean, mu)
- Outside K_n the per-point identity is exact, so R_n sums over K_n only:
  R_n = sum_{K_n} (|X_i - mean| - |X_i - mu| - (mean - mu) sign(mu - X_i))
- Each K_n term is at most 3 |mean - mu| in absolute value, hence
  |R_n / n| <= 3 |mean - mu| |K_n| / n
- sign(0) = 0; points equal to mu or to the mean are not in K_n
"""

import logging
import time
from typing import List, Optional, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike

from madstat.models.series import Series, as_series
from madstat.models.statistics import DecayRow, ExpansionReport, InfluenceSplit, KFractionBound
from madstat.services.errors import ConfigError
from madstat.services.laws import law_mean
from madstat.services.mad_core import check_finite, ecdf, oracle_mad, sample_mad, sign_balance
from madstat.services.simulate import generate, rep_seed

logger = logging.getLogger(__name__)

SeriesLike = Union[Series, ArrayLike]


def _between_mask(values: np.ndarray, mean: float, mu: float) -> np.ndarray:
    lower, upper = min(mean, mu), max(mean, mu)
    return (values > lower) & (values < upper)


def decompose(s: SeriesLike, mu: float, population_linear_coeff: Optional[float] = None) -> ExpansionReport:
    """
    Exact decomposition of sample_mad(s) - oracle_mad(s, mu).

    Args:
        s: sample (n >= 1)
        mu: population mean (finite)
        population_linear_coeff: Pr[X < mu] - Pr[X > mu] of a known law;
            the empirical sign balance is reported when omitted

    Returns:
        ExpansionReport whose terms add up to lhs

    Raises:
        DomainError: empty sample or non-finite mu
    """
    series = as_series(s)
    mu = check_finite(mu, "mu")
    values = series.values
    n = series.n
    mean_gap = series.mean - mu

    lhs = sample_mad(series) - oracle_mad(series, mu)
    balance = sign_balance(series, mu)
    linear_term = mean_gap * balance.b_hat
    atom_term = abs(mean_gap) * balance.p_eq

    inside = _between_mask(values, series.mean, mu)
    k_count = int(np.count_nonzero(inside))
    if k_count:
        x = values[inside]
        terms = np.abs(x - series.mean) - np.abs(x - mu) - mean_gap * np.sign(mu - x)
        remainder = float(np.sum(terms) / n)
    else:
        remainder = 0.0

    return ExpansionReport(
        n=n,
        mean_gap=mean_gap,
        lhs=lhs,
        linear_term=linear_term,
        atom_term=atom_term,
        remainder=remainder,
        k_count=k_count,
        population_linear_coeff=balance.b_hat if population_linear_coeff is None else population_linear_coeff,
    )


def k_fraction_bound(s: SeriesLike, mu: float) -> KFractionBound:
    """
    |K_n| / n and the two empirical-CDF increments that dominate it.

    |K_n| / n = F_n(B_n-) - F_n(A_n); when mu < mean this equals the upper
    increment F_n(B_n-) - F_n(mu), otherwise the lower one F_n(mu-) - F_n(A_n).
    """
    series = as_series(s)
    mu = check_finite(mu, "mu")
    lower, upper = min(series.mean, mu), max(series.mean, mu)
    summary = ecdf(series)
    k_fraction = max(0, int(summary.count_below(upper)) - int(summary.count_at_or_below(lower))) / series.n
    return KFractionBound(
        k_fraction=k_fraction,
        upper_increment=summary.cdf_left(upper) - summary.cdf(mu),
        lower_increment=summary.cdf_left(mu) - summary.cdf(lower),
    )


def influence_decomposition(s: SeriesLike, mu: float, theta: float) -> InfluenceSplit:
    """Split sample_mad - theta into (sample_mad - oracle_mad) + (oracle_mad - theta)."""
    series = as_series(s)
    oracle = oracle_mad(series, mu)
    return InfluenceSplit(mean_estimation_term=sample_mad(series) - oracle, centred_term=oracle - theta)


def remainder_decay_curve(gen, mu: float, n_grid: Sequence[int], reps: int, seed: int) -> List[DecayRow]:
    """
    Empirical decay of |K_n| / n and |R_n / n| / |mean - mu| along a grid of n.

    Replication r at sample size n uses rep_seed(seed, n, r).

    Raises:
        ConfigError: n < 2 in the grid, reps < 1, or a law without a finite mean
    """
    law_mean(gen)
    if reps < 1:
        raise ConfigError(f"reps must be >= 1 (got {reps})")
    if any(n < 2 for n in n_grid):
        raise ConfigError(f"every n in the grid must be >= 2 (got {list(n_grid)})")

    logger.info("=" * 60)
    logger.info("REMAINDER DECAY CURVE")
    logger.info("=" * 60)
    logger.info(f"Generator: {gen.kind}, mu={mu}, n_grid={sorted(n_grid)}, reps={reps}, seed={seed}")
    started = time.perf_counter()

    rows = []
    for n in sorted(set(int(n) for n in n_grid)):
        k_fractions = np.empty(reps)
        ratios = np.empty(reps)
        for rep in range(reps):
            report = decompose(generate(gen, n, rep_seed(seed, n, rep)), mu)
            k_fractions[rep] = report.k_count / n
            ratios[rep] = abs(report.remainder) / abs(report.mean_gap) if report.mean_gap != 0.0 else 0.0
        row = DecayRow(n=n, mean_k_fraction=float(k_fractions.mean()),
                       mean_remainder_ratio=float(ratios.mean()), reps=reps)
        logger.info(f"  n={n:>8,}: mean |K_n|/n = {row.mean_k_fraction:.3e}, "
                    f"mean |R_n/n|/|gap| = {row.mean_remainder_ratio:.3e}")
        rows.append(row)

    logger.info(f"✓ Decay curve complete in {time.perf_counter() - started:.1f}s")
    return rows
