"""
Limit Law Service

Builds the asymptotic LimitModel of the normalised sample MAD in each
regime, samples from it, and evaluates its analytic quantities.

Regimes:
1. Gaussian functional (finite variance; iid or strongly mixing)
       sqrt(n)(MAD_n - theta) -> a Y + p_eq |Y| + Z
   with a = Pr[X < mu] - Pr[X > mu], p_eq = Pr[X = mu] and (Y, Z) centred
   bivariate normal with the (long-run) covariance of (X - mu, |X - mu|).
   With an atom at mu the limit is not centred: its mean is p_eq E|Y|.
2. Stable (iid, tail index alpha in (1, 2))
       (n / a_n)(MAD_n - theta) -> G,
       E[exp(i s G)] = exp{-sigma^alpha |s|^alpha (1 - i sign(s) tan(alpha pi / 2))}
   a totally right-skewed stable law. Its right tail matches the tail of
   xi = |X - mu| + b (X - mu) with constant
       C = 2^alpha {Pr[X < mu]^alpha p + Pr[X > mu]^alpha (1 - p)}.

Scale Conventions:
- stable_scale evaluates sigma = (C / (Gamma(2 - alpha) |cos(alpha pi / 2)| / (alpha - 1)))^(1/alpha)
- tail_matched_scale evaluates sigma = (C Gamma(2 - alpha) |cos(alpha pi / 2)| / (alpha - 1))^(1/alpha),
  the scale whose stable tail Pr[G > x] ~ C x^-alpha; this is the one that
  matches simulated partial sums and is used for references and intervals

Regime selection is always explicit; nothing here infers a tail index.
"""

import logging
import math
from typing import Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import optimize, special

from madstat.models.generators import GENERATOR_ADAPTER, GENERATOR_TYPES, NormalSpec
from madstat.models.limits import GaussianFunctionalParams, StableParams, TailModel, TailShape
from madstat.models.series import Series, as_series
from madstat.models.window import LagWindowSpec
from madstat.services.errors import ConfigError, DomainError, RegimeError
from madstat.services.laws import (
    analytic_centering,
    iid_marginal,
    law_expectation,
    law_mean,
    law_sign_balance,
    law_variance,
    tail_model_for,
)
from madstat.services.longrun import longrun_cov, paired_deviations
from madstat.services.mad_core import sign_balance

logger = logging.getLogger(__name__)

SeriesLike = Union[Series, ArrayLike]

# Diagonal jitter tried, in order, when factorising a near-singular covariance
CHOLESKY_JITTER = (0.0, 1e-12, 1e-10)


# ============================================================================
# GAUSSIAN FUNCTIONAL LIMIT
# ============================================================================

def _params_from(a: float, p_eq: float, cov: np.ndarray) -> GaussianFunctionalParams:
    cov = 0.5 * (cov + cov.T)
    eigenvalues = np.linalg.eigvalsh(cov)
    if eigenvalues.min() < -1e-10:
        raise DomainError(f"covariance estimate is not positive semidefinite (eigenvalues {eigenvalues}); "
                          "use the Bartlett kernel")
    return GaussianFunctionalParams(
        a=a, p_eq=p_eq,
        var_y=float(cov[0, 0]), var_z=float(cov[1, 1]), cov_yz=float(cov[0, 1]),
    )


def gaussian_limit_from_law(gen) -> GaussianFunctionalParams:
    """
    Analytic parameters of the iid Gaussian limit for a generator law.

    Covariance of (X - mu, |X - mu|) by closed form (normal) or by exact sums
    and scipy quadrature (other laws).

    Raises:
        ConfigError: dependent generator (use gaussian_limit_mixing)
        RegimeError: infinite variance (use stable_limit)
    """
    if not gen.is_iid:
        raise ConfigError(f"{gen.kind} is dependent; estimate the long-run covariance with gaussian_limit_mixing")
    gen = iid_marginal(gen)
    variance = law_variance(gen)
    if not math.isfinite(variance):
        raise RegimeError(f"{gen.kind} has infinite variance; the Gaussian limit does not apply, use stable_limit")

    p_less, p_eq, p_greater = law_sign_balance(gen)
    centering = analytic_centering(gen)
    mu = centering.mu if centering is not None else law_mean(gen)
    theta = centering.theta if centering is not None else law_expectation(gen, lambda x: abs(x - mu), kink=mu)

    var_z = max(variance - theta ** 2, 0.0)
    if isinstance(gen, NormalSpec):
        cov_yz = 0.0
    else:
        cov_yz = law_expectation(gen, lambda x: (x - mu) * abs(x - mu), kink=mu)
    cov = np.array([[variance, cov_yz], [cov_yz, var_z]])
    return _params_from(p_less - p_greater, p_eq, cov)


def gaussian_limit_iid(law, mu: Optional[float] = None) -> GaussianFunctionalParams:
    """
    Gaussian limit parameters for iid data or an iid law.

    Args:
        law: a GeneratorSpec (analytic parameters) or a Series / array (sample
            covariance of (X - mu, |X - mu|), sign balance against mu)
        mu: centre for data; defaults to the sample mean

    Raises:
        RegimeError: law with infinite variance
    """
    if isinstance(law, GENERATOR_TYPES):
        return gaussian_limit_from_law(law)
    if isinstance(law, dict):
        return gaussian_limit_from_law(GENERATOR_ADAPTER.validate_python(law))
    series = as_series(law)
    mu = series.mean if mu is None else float(mu)
    return gaussian_limit_mixing(paired_deviations(series, mu), LagWindowSpec(bandwidth=0))


def gaussian_limit_mixing(pair: Tuple[SeriesLike, SeriesLike],
                          bandwidth: Optional[LagWindowSpec] = None) -> GaussianFunctionalParams:
    """
    Gaussian limit parameters for a strongly mixing series.

    Args:
        pair: (X_i - mu, |X_i - mu| - theta), e.g. from longrun.paired_deviations
        bandwidth: lag window policy (default Bartlett, auto bandwidth)

    Returns:
        Parameters with the long-run covariance; a and p_eq from the signs
        of X_i - mu (X_i - mu == 0 exactly when X_i == mu)

    Raises:
        ConfigError: bandwidth too large for the series length
    """
    deviations = as_series(pair[0])
    cov = longrun_cov(pair, bandwidth or LagWindowSpec())
    balance = sign_balance(deviations, 0.0)
    return _params_from(balance.b_hat, balance.p_eq, cov)


def _cholesky_factor(cov: np.ndarray) -> np.ndarray:
    """Lower factor of a PSD matrix; zero-variance coordinates stay identically 0."""
    factor = np.zeros_like(cov)
    active = np.flatnonzero(np.diag(cov) > 0.0)
    if active.size == 0:
        return factor
    sub = cov[np.ix_(active, active)]
    for jitter in CHOLESKY_JITTER:
        try:
            factor[np.ix_(active, active)] = np.linalg.cholesky(sub + jitter * np.eye(active.size))
            return factor
        except np.linalg.LinAlgError:
            continue
    raise DomainError(f"covariance is not positive semidefinite: {cov.tolist()}")


def sample_functional_limit(params: GaussianFunctionalParams, n_draws: int, seed: int) -> Series:
    """
    iid draws of a Y + p_eq |Y| + Z with (Y, Z) ~ N(0, cov).

    Raises:
        DomainError: n_draws < 1 or covariance not factorisable
    """
    if n_draws < 1:
        raise DomainError(f"n_draws must be >= 1 (got {n_draws})")
    factor = _cholesky_factor(params.cov)
    rng = np.random.default_rng(seed)
    normals = rng.standard_normal((n_draws, 2)) @ factor.T
    y, z = normals[:, 0], normals[:, 1]
    return Series(params.a * y + params.p_eq * np.abs(y) + z)


def functional_limit_mean(params: GaussianFunctionalParams) -> float:
    """Mean of the limit, p_eq E|Y| = p_eq sqrt(2 var_Y / pi)."""
    return params.p_eq * math.sqrt(2.0 * params.var_y / math.pi)


def sigma_theta_sq(params: GaussianFunctionalParams) -> float:
    """
    Variance a^2 var_Y + 2 a cov_YZ + var_Z of the Gaussian limit.

    Raises:
        RegimeError: p_eq != 0 (the limit is then not Gaussian)
    """
    if params.p_eq != 0.0:
        raise RegimeError(f"p_eq = {params.p_eq} > 0: the limit has an atom term and is not Gaussian")
    return max(params.a ** 2 * params.var_y + 2.0 * params.a * params.cov_yz + params.var_z, 0.0)


def delta_method_variance(gen) -> float:
    """
    Var(|X - mu| + (2 F(mu) - 1) X) computed directly from the law.

    Cross-check for sigma_theta_sq(gaussian_limit_from_law(gen)).
    """
    p_less, p_eq, _ = law_sign_balance(gen)
    if p_eq != 0.0:
        raise RegimeError("the delta-method variance needs a law without an atom at mu")
    if not math.isfinite(law_variance(gen)):
        raise RegimeError(f"{gen.kind} has infinite variance")
    mu = law_mean(gen)
    slope = 2.0 * (p_less + p_eq) - 1.0

    def influence(x: float) -> float:
        return abs(x - mu) + slope * (x - mu)

    centre = law_expectation(gen, influence, kink=mu)
    return law_expectation(gen, lambda x: (influence(x) - centre) ** 2, kink=mu)


# ============================================================================
# STABLE LIMIT
# ============================================================================

def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 1.0 < alpha < 2.0:
        raise DomainError(f"alpha must lie strictly inside (1, 2) (got {alpha})")
    return alpha


def _check_probability(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1] (got {value})")
    return value


def tail_constant(alpha: float, p: float, p_less: float, p_greater: float) -> float:
    """C = 2^alpha {p_less^alpha p + p_greater^alpha (1 - p)}."""
    alpha = _check_alpha(alpha)
    p = _check_probability(p, "p")
    p_less = _check_probability(p_less, "p_less")
    p_greater = _check_probability(p_greater, "p_greater")
    return 2.0 ** alpha * (p_less ** alpha * p + p_greater ** alpha * (1.0 - p))


def xi_tail_constant(alpha: float, p: float, b: float) -> float:
    """(1 + b)^alpha p + (1 - b)^alpha (1 - p): Pr[xi > x] / Pr[|X| > x] as x grows."""
    if abs(b) >= 1.0:
        raise DomainError(f"|b| must be < 1 (got {b})")
    return (1.0 + b) ** alpha * p + (1.0 - b) ** alpha * (1.0 - p)


def _gamma_cos_factor(alpha: float) -> float:
    """Gamma(2 - alpha) |cos(alpha pi / 2)| / (alpha - 1)."""
    return special.gamma(2.0 - alpha) * abs(math.cos(alpha * math.pi / 2.0)) / (alpha - 1.0)


def stable_scale(alpha: float, p: float, p_less: float, p_greater: float) -> float:
    """
    sigma = (C / (Gamma(2 - alpha) |cos(alpha pi / 2)| / (alpha - 1)))^(1/alpha).

    Example:
        stable_scale(1.5, 0.5, 0.5, 0.5) ≈ 0.54195

    Raises:
        DomainError: alpha outside (1, 2), probabilities outside [0, 1],
            or a zero tail constant
    """
    numerator = tail_constant(alpha, p, p_less, p_greater)
    if numerator <= 0.0:
        raise DomainError("tail constant is 0: the limit is degenerate")
    return (numerator / _gamma_cos_factor(alpha)) ** (1.0 / alpha)


def tail_matched_scale(alpha: float, p: float, p_less: float, p_greater: float) -> float:
    """
    Scale of the stable law whose right tail is C x^-alpha.

    For a totally right-skewed stable law Pr[G > x] ~ sigma^alpha x^-alpha / K
    with K = Gamma(2 - alpha) |cos(alpha pi / 2)| / (alpha - 1), hence
    sigma = (C K)^(1/alpha).

    Example:
        tail_matched_scale(1.5, 0.5, 0.5, 0.5) ≈ 1.8452
    """
    numerator = tail_constant(alpha, p, p_less, p_greater)
    if numerator <= 0.0:
        raise DomainError("tail constant is 0: the limit is degenerate")
    return (numerator * _gamma_cos_factor(alpha)) ** (1.0 / alpha)


def stable_cf(params: StableParams, s):
    """
    exp{-sigma^alpha |s|^alpha (1 - i sign(s) tan(alpha pi / 2))}, vectorised.

    Equals E[exp(i s G)] for the right-skewed G produced by sample_stable.
    """
    s_array = np.asarray(s, dtype=np.float64)
    exponent = (params.sigma ** params.alpha) * np.abs(s_array) ** params.alpha
    value = np.exp(-exponent * (1.0 - 1j * np.sign(s_array) * params.tan_term))
    return complex(value) if value.ndim == 0 else value


def empirical_cf(sample: SeriesLike, s):
    """Mean of exp(i s X) over the sample, vectorised over s."""
    values = as_series(sample).values
    s_array = np.asarray(s, dtype=np.float64)
    value = np.exp(1j * np.multiply.outer(s_array, values)).mean(axis=-1)
    return complex(value) if value.ndim == 0 else value


def sample_stable(alpha: float, skew_to_right: bool, sigma: float, n_draws: int, seed: int) -> Series:
    """
    Totally skewed alpha-stable draws (zero shift) by the Chambers-Mallows-Stuck transform.

    With V ~ U(-pi/2, pi/2), W ~ Exp(1), beta = +1 (right) or -1 (left):
        B = arctan(beta tan(pi alpha / 2)) / alpha
        S = (1 + tan^2(pi alpha / 2))^(1 / (2 alpha))
        X = S sin(alpha (V + B)) / cos(V)^(1/alpha) * (cos(V - alpha (V + B)) / W)^((1 - alpha) / alpha)
    and the draws are sigma X, so equal seeds give draws proportional to sigma.

    Raises:
        DomainError: alpha outside (1, 2), sigma <= 0, n_draws < 1
    """
    alpha = _check_alpha(alpha)
    if not sigma > 0.0:
        raise DomainError(f"sigma must be > 0 (got {sigma})")
    if n_draws < 1:
        raise DomainError(f"n_draws must be >= 1 (got {n_draws})")

    beta = 1.0 if skew_to_right else -1.0
    tan_term = math.tan(math.pi * alpha / 2.0)
    shift = math.atan(beta * tan_term) / alpha
    scale = (1.0 + tan_term ** 2) ** (1.0 / (2.0 * alpha))

    rng = np.random.default_rng(seed)
    v = rng.uniform(-math.pi / 2.0, math.pi / 2.0, size=n_draws)
    w = rng.exponential(1.0, size=n_draws)
    draws = (scale * np.sin(alpha * (v + shift)) / np.cos(v) ** (1.0 / alpha)
             * (np.cos(v - alpha * (v + shift)) / w) ** ((1.0 - alpha) / alpha))
    return Series(sigma * draws)


def norming_an(tail: TailModel, n: int) -> float:
    """
    a_n = inf{x > 0 : Pr[|X| > x] <= 1/n}.

    Exact Pareto tails use x_m n^(1/alpha); other shapes are solved by
    bisection to relative tolerance 1e-12 on a doubling bracket.

    Raises:
        DomainError: n < 1, or a tail that does not decrease to 0
    """
    if n < 1:
        raise DomainError(f"n must be >= 1 (got {n})")
    if n == 1:
        return tail.x_m
    if tail.shape is TailShape.PARETO:
        return tail.x_m * n ** (1.0 / tail.alpha)

    target = 1.0 / n
    lower = 0.0 if tail.shape is TailShape.STUDENT_T else tail.x_m
    upper = max(tail.x_m, 1.0)
    while float(tail.survival(upper)) > target:
        lower, upper = upper, upper * 2.0
        if upper > 1e300:
            raise DomainError("tail does not decrease to 0; a_n is undefined")
    return float(optimize.bisect(lambda x: float(tail.survival(x)) - target, lower, upper,
                                 xtol=1e-300, rtol=1e-12, maxiter=2000))


def xi_transform(s: SeriesLike, mu: float, b: float) -> Series:
    """
    xi_i = |X_i - mu| + b (X_i - mu); nonnegative for |b| < 1, mean theta.

    Raises:
        DomainError: |b| >= 1
    """
    if abs(b) >= 1.0:
        raise DomainError(f"|b| must be < 1 (got {b})")
    deviations = as_series(s).values - mu
    return Series(np.abs(deviations) + b * deviations)


def stable_limit(gen, scale: str = "tail_matched") -> StableParams:
    """
    Stable limit model of an iid heavy-tailed generator.

    Args:
        gen: generator with a tail model (Pareto or Student t, index in (1, 2))
        scale: "tail_matched" (default) or "displayed" (stable_scale)

    Raises:
        ConfigError: no tail model
        RegimeError: the law has an atom at mu
    """
    tail = tail_model_for(gen)
    p_less, p_eq, p_greater = law_sign_balance(gen)
    if p_eq > 0.0:
        raise RegimeError("stable limit with an atom at mu is not supported")
    return stable_params_for(tail, p_less, p_greater, scale)


def stable_params_for(tail: TailModel, p_less: float, p_greater: float,
                      scale: str = "tail_matched") -> StableParams:
    if scale == "tail_matched":
        sigma = tail_matched_scale(tail.alpha, tail.p, p_less, p_greater)
    elif scale == "displayed":
        sigma = stable_scale(tail.alpha, tail.p, p_less, p_greater)
    else:
        raise ConfigError(f"unknown stable scale convention: {scale!r}")
    return StableParams(alpha=tail.alpha, sigma=sigma, p=tail.p, p_less=p_less, p_greater=p_greater)
