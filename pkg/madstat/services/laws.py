"""
Population Law Service

Closed-form and quadrature facts about the marginal law of a generator:
its mean mu, its mean absolute deviation theta, the probabilities
Pr[X < mu], Pr[X = mu], Pr[X > mu], and its regularly varying tail.

Key Responsibilities:
1. law_mean: the stationary mean (ConfigError when it does not exist)
2. analytic_centering: (mu, theta) when a closed form or quadrature is coded
3. law_sign_balance: population sign balance at mu for iid laws
4. law_expectation: E[g(X)] for iid laws (exact sums or scipy quadrature)
5. tail_model_for: the TailModel of a heavy-tailed iid generator
6. iid_marginal: AR(1) / MA(1) with a zero coefficient reduced to the innovation

Used by simulate (centring of studies) and limit_laws (analytic limits).
"""

import math
from typing import Callable, Optional, Tuple

from scipy import special, stats

from madstat.models.generators import (
    Ar1Spec,
    DiscreteSpec,
    ExponentialSpec,
    Ma1Spec,
    NormalSpec,
    ParetoSymmetricSpec,
    StudentTSpec,
)
from madstat.models.limits import TailModel, TailShape
from madstat.models.study import CenteringValues
from madstat.services.errors import ConfigError

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def iid_marginal(gen):
    """The innovation law of an AR(1) or MA(1) whose coefficient is 0; gen otherwise."""
    while isinstance(gen, (Ar1Spec, Ma1Spec)) and gen.is_iid:
        gen = gen.innovation
    return gen


def law_mean(gen) -> float:
    """
    Stationary mean of a generator.

    Raises:
        ConfigError: the law has no finite mean (Student t with dof <= 1)
    """
    if gen.centering is not None:
        return gen.centering.mu
    if isinstance(gen, NormalSpec):
        return gen.mu
    if isinstance(gen, ExponentialSpec):
        return 1.0 / gen.rate
    if isinstance(gen, DiscreteSpec):
        return math.fsum(atom.value * atom.prob for atom in gen.atoms)
    if isinstance(gen, ParetoSymmetricSpec):
        return (2.0 * gen.p - 1.0) * gen.x_m * gen.alpha / (gen.alpha - 1.0)
    if isinstance(gen, StudentTSpec):
        if gen.dof <= 1.0:
            raise ConfigError(f"Student t with dof={gen.dof} has no finite mean")
        return 0.0
    if isinstance(gen, Ar1Spec):
        return law_mean(gen.innovation) / (1.0 - gen.phi)
    if isinstance(gen, Ma1Spec):
        return (1.0 + gen.theta) * law_mean(gen.innovation)
    raise ConfigError(f"Unknown generator kind: {gen.kind}")


def _pareto_abs_dev(c: float, alpha: float, x_m: float) -> float:
    """E|M - c| for M ~ Pareto(alpha, x_m)."""
    mean = x_m * alpha / (alpha - 1.0)
    if c <= x_m:
        return mean - c
    below = (c - x_m) - x_m / (alpha - 1.0) * (1.0 - (c / x_m) ** (1.0 - alpha))
    return mean - c + 2.0 * below


def _student_t_abs_mean(dof: float) -> float:
    """E|T| for T ~ t(dof), dof > 1."""
    log_ratio = special.gammaln((dof + 1.0) / 2.0) - special.gammaln(dof / 2.0)
    return 2.0 * math.sqrt(dof) * math.exp(log_ratio) / (math.sqrt(math.pi) * (dof - 1.0))


def _gaussian_marginal_sd(gen) -> Optional[float]:
    """Marginal sd when the stationary law is Gaussian, else None."""
    if isinstance(gen, NormalSpec):
        return gen.sd
    if isinstance(gen, Ar1Spec) and isinstance(gen.innovation, NormalSpec):
        return gen.innovation.sd / math.sqrt(1.0 - gen.phi ** 2)
    if isinstance(gen, Ma1Spec) and isinstance(gen.innovation, NormalSpec):
        return gen.innovation.sd * math.sqrt(1.0 + gen.theta ** 2)
    return None


def analytic_centering(gen) -> Optional[CenteringValues]:
    """
    (mu, theta) from a declared centring, a closed form or quadrature.

    Returns:
        CenteringValues, or None when only a reference run can supply theta
    """
    if gen.centering is not None:
        return CenteringValues(mu=gen.centering.mu, theta=gen.centering.theta, source="declared")

    gen = iid_marginal(gen)
    mu = law_mean(gen)
    sd = _gaussian_marginal_sd(gen)
    if sd is not None:
        return CenteringValues(mu=mu, theta=sd * SQRT_2_OVER_PI, source="analytic")
    if isinstance(gen, ExponentialSpec):
        return CenteringValues(mu=mu, theta=2.0 / (math.e * gen.rate), source="analytic")
    if isinstance(gen, DiscreteSpec):
        theta = math.fsum(atom.prob * abs(atom.value - mu) for atom in gen.atoms)
        return CenteringValues(mu=mu, theta=theta, source="analytic")
    if isinstance(gen, ParetoSymmetricSpec):
        theta = (gen.p * _pareto_abs_dev(mu, gen.alpha, gen.x_m)
                 + (1.0 - gen.p) * _pareto_abs_dev(-mu, gen.alpha, gen.x_m))
        return CenteringValues(mu=mu, theta=theta, source="analytic")
    if isinstance(gen, StudentTSpec):
        return CenteringValues(mu=mu, theta=_student_t_abs_mean(gen.dof), source="analytic")
    return None


def _require_iid(gen, what: str) -> None:
    if not gen.is_iid:
        raise ConfigError(f"{what} is only available for iid generators (got {gen.kind})")


def law_sign_balance(gen) -> Tuple[float, float, float]:
    """
    Population (Pr[X < mu], Pr[X = mu], Pr[X > mu]) for an iid law.

    Atoms are matched to mu by exact float comparison, as for samples.
    """
    _require_iid(gen, "law_sign_balance")
    gen = iid_marginal(gen)
    mu = law_mean(gen)
    if isinstance(gen, (NormalSpec, StudentTSpec)):
        return 0.5, 0.0, 0.5
    if isinstance(gen, ExponentialSpec):
        below = 1.0 - math.exp(-gen.rate * mu)
        return below, 0.0, 1.0 - below
    if isinstance(gen, DiscreteSpec):
        less = math.fsum(atom.prob for atom in gen.atoms if atom.value < mu)
        equal = math.fsum(atom.prob for atom in gen.atoms if atom.value == mu)
        return less, equal, max(0.0, 1.0 - less - equal)
    if isinstance(gen, ParetoSymmetricSpec):
        if mu >= 0.0:
            magnitude_below = 0.0 if mu <= gen.x_m else 1.0 - (mu / gen.x_m) ** (-gen.alpha)
            less = (1.0 - gen.p) + gen.p * magnitude_below
        else:
            less = (1.0 - gen.p) * min(1.0, (-mu / gen.x_m) ** (-gen.alpha))
        return less, 0.0, 1.0 - less
    raise ConfigError(f"sign balance is not available for {gen.kind}")


def _split_expect(dist, func: Callable[[float], float], cut: float) -> float:
    lower, upper = dist.support()
    if lower < cut < upper:
        return dist.expect(func, ub=cut) + dist.expect(func, lb=cut)
    return dist.expect(func)


def law_expectation(gen, func: Callable[[float], float], kink: float = 0.0) -> float:
    """
    E[func(X)] for an iid law.

    Discrete laws are summed exactly; continuous laws are integrated with
    ``scipy.stats`` quadrature, split at ``kink`` (where func is not smooth).
    """
    _require_iid(gen, "law_expectation")
    gen = iid_marginal(gen)
    if isinstance(gen, DiscreteSpec):
        return math.fsum(atom.prob * func(atom.value) for atom in gen.atoms)
    if isinstance(gen, NormalSpec):
        return _split_expect(stats.norm(loc=gen.mu, scale=gen.sd), func, kink)
    if isinstance(gen, ExponentialSpec):
        return _split_expect(stats.expon(scale=1.0 / gen.rate), func, kink)
    if isinstance(gen, StudentTSpec):
        return _split_expect(stats.t(df=gen.dof), func, kink)
    if isinstance(gen, ParetoSymmetricSpec):
        magnitude = stats.pareto(b=gen.alpha, scale=gen.x_m)
        right = _split_expect(magnitude, func, kink)
        left = _split_expect(magnitude, lambda m: func(-m), -kink)
        return gen.p * right + (1.0 - gen.p) * left
    raise ConfigError(f"law_expectation is not available for {gen.kind}")


def law_variance(gen) -> float:
    """Var(X); infinite when the second moment does not exist."""
    _require_iid(gen, "law_variance")
    gen = iid_marginal(gen)
    if isinstance(gen, ParetoSymmetricSpec) and gen.alpha <= 2.0:
        return math.inf
    if isinstance(gen, StudentTSpec) and gen.dof <= 2.0:
        return math.inf
    if isinstance(gen, NormalSpec):
        return gen.sd ** 2
    if isinstance(gen, ExponentialSpec):
        return 1.0 / gen.rate ** 2
    if isinstance(gen, StudentTSpec):
        return gen.dof / (gen.dof - 2.0)
    mu = law_mean(gen)
    return law_expectation(gen, lambda x: (x - mu) ** 2, kink=mu)


def tail_model_for(gen) -> TailModel:
    """
    Regularly varying tail of a heavy-tailed iid generator.

    Raises:
        ConfigError: the generator has no tail model with index in (1, 2)
    """
    gen = iid_marginal(gen)
    if isinstance(gen, ParetoSymmetricSpec) and 1.0 < gen.alpha < 2.0:
        return TailModel(alpha=gen.alpha, p=gen.p, x_m=gen.x_m, shape=TailShape.PARETO)
    if isinstance(gen, StudentTSpec) and 1.0 < gen.dof < 2.0:
        return TailModel(alpha=gen.dof, p=0.5, x_m=1.0, shape=TailShape.STUDENT_T)
    raise ConfigError(f"generator {gen.kind} carries no tail model with index in (1, 2); "
                      "the n_over_an rate needs one")

