"""
Simulation Service

Data generators for every regime, and the Monte Carlo harness producing
samples of the normalised statistic rate_n * (MAD_n - theta).

Key Responsibilities:
1. generate: one stationary realisation of a GeneratorSpec
2. true_theta: population (mu, theta), closed form or reference run
3. rep_seed: counter-based per-replication seeds
4. run_study: replicate the normalised statistic, optionally in parallel

Reproducibility Rules:
- Every random draw goes through ``numpy.random.default_rng(seed)``
- Replication r of a study uses rep_seed(seed, r); decay curves use
  rep_seed(seed, n, r). Seeds come from ``numpy.random.SeedSequence`` spawn
  keys, so they do not depend on execution order
- Results are written into a buffer indexed by replication, so any worker
  count gives the identical vector
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from scipy import signal

from madstat.models.generators import (
    Ar1Spec,
    DiscreteSpec,
    ExponentialSpec,
    Ma1Spec,
    NormalSpec,
    ParetoSymmetricSpec,
    StudentTSpec,
)
from madstat.models.limits import NormingRate
from madstat.models.series import Series
from madstat.models.study import CenteringValues, McStudy, StudyMetadata, ThetaSource
from madstat.models.window import LagWindowSpec
from madstat.services.errors import ConfigError
from madstat.services.laws import analytic_centering, law_mean, tail_model_for
from madstat.services.limit_laws import norming_an
from madstat.services.longrun import longrun_variance
from madstat.services.mad_core import oracle_mad, sample_mad

logger = logging.getLogger(__name__)

# Spawn key of the reference run, outside the range of replication indices
REFERENCE_RUN_KEY = 2 ** 63 - 1

__all__ = [
    "generate",
    "true_theta",
    "rep_seed",
    "rate_for",
    "run_study",
    "replicate_statistic",
]


def rep_seed(seed: int, *keys: int) -> int:
    """
    Seed of one replication, derived from the master seed and counter keys.

    Example:
        rep_seed(42, 7)        -> seed of replication 7
        rep_seed(42, 1000, 7)  -> seed of replication 7 at n = 1000
    """
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(key) for key in keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def _burn_in(phi: float) -> int:
    return 1000 + int(math.ceil(50.0 / (1.0 - abs(phi))))


def _draw(gen, n: int, rng: np.random.Generator) -> np.ndarray:
    """n draws of the stationary law of ``gen`` (dependent kinds included)."""
    if isinstance(gen, NormalSpec):
        return rng.normal(gen.mu, gen.sd, size=n)
    if isinstance(gen, ExponentialSpec):
        return rng.exponential(1.0 / gen.rate, size=n)
    if isinstance(gen, DiscreteSpec):
        values = np.array([atom.value for atom in gen.atoms], dtype=np.float64)
        probs = np.array([atom.prob for atom in gen.atoms], dtype=np.float64)
        return values[rng.choice(values.size, size=n, p=probs / probs.sum())]
    if isinstance(gen, ParetoSymmetricSpec):
        # Inverse CDF of the exact Pareto form: |X| = x_m (1 - U)^(-1/alpha)
        magnitude = gen.x_m * (1.0 - rng.random(n)) ** (-1.0 / gen.alpha)
        signs = np.where(rng.random(n) < gen.p, 1.0, -1.0)
        return signs * magnitude
    if isinstance(gen, StudentTSpec):
        return rng.standard_t(gen.dof, size=n)
    if isinstance(gen, Ar1Spec):
        return _draw_ar1(gen, n, rng)
    if isinstance(gen, Ma1Spec):
        shocks = _draw(gen.innovation, n + 1, rng)
        return shocks[1:] + gen.theta * shocks[:-1]
    raise ConfigError(f"Unknown generator kind: {gen.kind}")


def _draw_ar1(gen: Ar1Spec, n: int, rng: np.random.Generator) -> np.ndarray:
    """
    X_t = phi X_{t-1} + e_t.

    Gaussian innovations start from the exact stationary law; any other
    innovation starts at the stationary mean and burns in
    1000 + 50 / (1 - |phi|) steps.
    """
    phi = gen.phi
    innovation = gen.innovation
    if isinstance(innovation, NormalSpec):
        stationary_sd = innovation.sd / math.sqrt(1.0 - phi ** 2)
        start = rng.normal(innovation.mu / (1.0 - phi), stationary_sd)
        burn = 0
    else:
        start = law_mean(innovation) / (1.0 - phi)
        burn = _burn_in(phi)
    shocks = _draw(innovation, n + burn, rng)
    path, _ = signal.lfilter([1.0], [1.0, -phi], shocks, zi=np.array([phi * start]))
    return path[burn:]


def generate(gen, n: int, seed: int) -> Series:
    """
    One realisation of length n.

    Args:
        gen: any GeneratorSpec
        n: series length (>= 1)
        seed: integer seed; equal seeds give equal series

    Returns:
        Series of length n
    """
    if n < 1:
        raise ConfigError(f"n must be >= 1 (got {n})")
    rng = np.random.default_rng(seed)
    return Series(_draw(gen, n, rng))


def true_theta(gen,
               source: ThetaSource = ThetaSource.ANALYTIC,
               n_ref: int = 10_000_000,
               seed: int = 0) -> CenteringValues:
    """
    Population mean and MAD used to centre a study.

    Closed forms (or quadrature) are used when available and allowed;
    otherwise theta is estimated by oracle_mad over a reference run of length
    n_ref, flagged "estimated", with its Monte Carlo standard error
    (long-run variance of |X - mu| over n_ref).
    """
    if source is ThetaSource.ANALYTIC:
        centering = analytic_centering(gen)
        if centering is not None:
            return centering

    mu = law_mean(gen)
    logger.info(f"Estimating theta for {gen.kind} with a reference run of n_ref={n_ref:,}")
    started = time.perf_counter()
    reference = generate(gen, n_ref, seed)
    theta = oracle_mad(reference, mu)
    deviations = np.abs(reference.values - mu)
    theta_se = math.sqrt(max(longrun_variance(deviations, LagWindowSpec()), 0.0) / n_ref)
    logger.info(f"✓ theta ≈ {theta:.6f} (SE {theta_se:.2e}) in {time.perf_counter() - started:.1f}s")
    return CenteringValues(mu=mu, theta=theta, source="estimated", theta_se=theta_se)


def rate_for(gen, n: int, rate: NormingRate) -> float:
    """
    Norming rate: sqrt(n), or n / a_n from the generator's tail model.

    Raises:
        ConfigError: n_over_an requested for a generator without a tail model
    """
    if rate is NormingRate.SQRT_N:
        return math.sqrt(n)
    return n / norming_an(tail_model_for(gen), n)


def replicate_statistic(args: Tuple) -> float:
    """One replication: rate_n * (sample_mad - theta). Top-level so it pickles."""
    gen, n, seed, rate_n, theta = args
    return rate_n * (sample_mad(generate(gen, n, seed)) - theta)


def run_study(cfg: McStudy,
              workers: int = 1,
              centering: Optional[CenteringValues] = None) -> McStudy:
    """
    Run the replications of a study.

    Args:
        cfg: study configuration (results are ignored and recomputed)
        workers: process count; results do not depend on it
        centering: precomputed (mu, theta); computed by true_theta otherwise

    Returns:
        Copy of cfg with results and metadata filled in

    Raises:
        ConfigError: missing tail model for the n_over_an rate, undefined mean
    """
    logger.info("=" * 60)
    logger.info("RUNNING MONTE CARLO STUDY")
    logger.info("=" * 60)
    logger.info(f"Generator: {cfg.generator.kind}, n={cfg.n:,}, reps={cfg.reps:,}, "
                f"rate={cfg.rate.value}, seed={cfg.seed}, workers={workers}")
    started = time.perf_counter()

    rate_n = rate_for(cfg.generator, cfg.n, cfg.rate)
    if centering is None:
        centering = true_theta(cfg.generator, cfg.mu_theta_source, cfg.n_ref, rep_seed(cfg.seed, REFERENCE_RUN_KEY))
    logger.info(f"Centring: mu={centering.mu:.6g}, theta={centering.theta:.6g} ({centering.source})")

    seeds = [rep_seed(cfg.seed, rep) for rep in range(cfg.reps)]
    tasks = [(cfg.generator, cfg.n, seeds[rep], rate_n, centering.theta) for rep in range(cfg.reps)]

    results: List[float] = [0.0] * cfg.reps
    if workers > 1:
        chunksize = max(1, cfg.reps // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rep, value in enumerate(pool.map(replicate_statistic, tasks, chunksize=chunksize)):
                results[rep] = value
    else:
        for rep, task in enumerate(tasks):
            results[rep] = replicate_statistic(task)

    wall_time = time.perf_counter() - started
    logger.info(f"✓ Study complete in {wall_time:.1f}s")

    metadata = StudyMetadata(
        mu=centering.mu,
        theta=centering.theta,
        theta_source=centering.source,
        theta_se=centering.theta_se,
        norming=rate_n,
        rep_seeds=seeds,
        wall_time_seconds=wall_time,
    )
    return cfg.model_copy(update={"results": results, "metadata": metadata})
