"""
Monte Carlo Verification Service

Runs a study, builds the matching reference sample from the limit law and
compares the two.

Reference by study type:
- n_over_an rate: stable limit of the generator's tail model, sampled with
  sample_stable
- sqrt_n rate, iid generator: analytic Gaussian functional limit of the law
- sqrt_n rate, dependent generator: Gaussian functional limit with the
  long-run covariance estimated on a separate series of ``reference_length``

The report never contains wall time, so equal configurations produce
byte-identical JSON.
"""

import logging
from typing import NamedTuple, Optional

from madstat.models.limits import NormingRate
from madstat.models.series import Series
from madstat.models.study import CenteringValues, McStudy, VerifyConfig
from madstat.models.window import LagWindowSpec
from madstat.services.gof import moment_summary, quantile_band
from madstat.services.limit_laws import (
    functional_limit_mean,
    gaussian_limit_from_law,
    gaussian_limit_mixing,
    sample_functional_limit,
    sample_stable,
    stable_limit,
)
from madstat.services.longrun import paired_deviations
from madstat.services.simulate import REFERENCE_RUN_KEY, generate, rep_seed, run_study, true_theta

logger = logging.getLogger(__name__)

# Spawn keys of the reference stages, derived from the reference seed
_LONGRUN_SERIES_KEY = 0
_LIMIT_DRAWS_KEY = 1

# Slack, in standard errors, for Monte Carlo estimates
THETA_SE_MULTIPLIER = 3.0


class VerificationOutcome(NamedTuple):
    report: dict
    study: McStudy
    reference: Series


def build_reference(cfg: VerifyConfig, centering: CenteringValues):
    """
    Limit model and scaled reference sample for a study.

    Returns:
        (limit model, reference Series)
    """
    study = cfg.study
    gen = study.generator
    seed = cfg.resolved_reference_seed

    if study.rate is NormingRate.N_OVER_AN:
        params = stable_limit(gen)
        draws = sample_stable(params.alpha, True, params.sigma, cfg.n_reference, rep_seed(seed, _LIMIT_DRAWS_KEY))
    else:
        if gen.is_iid:
            params = gaussian_limit_from_law(gen)
        else:
            logger.info(f"Estimating the long-run covariance on a separate series of {cfg.reference_length:,}")
            series = generate(gen, cfg.reference_length, rep_seed(seed, _LONGRUN_SERIES_KEY))
            pair = paired_deviations(series, centering.mu, centering.theta)
            params = gaussian_limit_mixing(pair, LagWindowSpec())
        draws = sample_functional_limit(params, cfg.n_reference, rep_seed(seed, _LIMIT_DRAWS_KEY))

    if cfg.reference_scale != 1.0:
        draws = draws.scaled(cfg.reference_scale)
    return params, draws


def mc_verify(cfg: VerifyConfig, workers: int = 1, centering: Optional[CenteringValues] = None) -> VerificationOutcome:
    """
    Run the study of ``cfg`` and compare it with its limit law.

    Args:
        cfg: verification configuration
        workers: process count for run_study (does not change the output)
        centering: precomputed (mu, theta); true_theta is used otherwise

    Returns:
        VerificationOutcome(report dict, completed study, reference sample)
    """
    logger.info("=" * 60)
    logger.info("MONTE CARLO VERIFICATION")
    logger.info("=" * 60)

    study_cfg = cfg.study
    if centering is None:
        centering = true_theta(study_cfg.generator, study_cfg.mu_theta_source, study_cfg.n_ref,
                               rep_seed(study_cfg.seed, REFERENCE_RUN_KEY))
    params, reference = build_reference(cfg, centering)
    study = run_study(study_cfg, workers=workers, centering=centering)
    results = Series(study.results)

    gof = quantile_band(results, reference, cfg.levels)
    moments = moment_summary(results)

    # An estimated theta shifts every statistic by rate_n * (theta_hat - theta)
    theta_widening = THETA_SE_MULTIPLIER * study.metadata.norming * centering.theta_se if centering.estimated else 0.0
    quantile_tolerance = None if cfg.quantile_tolerance is None else cfg.quantile_tolerance + theta_widening

    verdict = {"ks_within_tolerance": gof.ks_distance <= cfg.ks_tolerance}
    if quantile_tolerance is not None:
        verdict["quantiles_within_tolerance"] = gof.max_quantile_gap <= quantile_tolerance
    verdict["passed"] = all(verdict.values())

    expected_mean = functional_limit_mean(params) if params.regime == "gaussian" else 0.0
    mean_check = None
    if params.regime == "gaussian":
        mean_tolerance = THETA_SE_MULTIPLIER * moments.mean_se + theta_widening
        mean_gap = abs(moments.mean - expected_mean)
        mean_check = {"gap": mean_gap, "tolerance": mean_tolerance, "within_tolerance": mean_gap <= mean_tolerance}
    report = {
        "command": "mc-verify",
        "study": {
            "generator": study_cfg.generator.model_dump(mode="json"),
            "n": study_cfg.n,
            "reps": study_cfg.reps,
            "rate": study_cfg.rate.value,
            "seed": study_cfg.seed,
            "mu": study.metadata.mu,
            "theta": study.metadata.theta,
            "theta_source": study.metadata.theta_source,
            "theta_se": study.metadata.theta_se,
            "norming": study.metadata.norming,
        },
        "limit": params.to_dict(),
        "reference": {
            "n_reference": cfg.n_reference,
            "reference_seed": cfg.resolved_reference_seed,
            "reference_scale": cfg.reference_scale,
        },
        "gof": gof.to_dict(),
        "moments": moments.to_dict(),
        "expected_limit_mean": expected_mean,
        "mean_check": mean_check,
        "tolerances": {"ks": cfg.ks_tolerance, "quantile": quantile_tolerance, "theta_widening": theta_widening},
        "verdict": verdict,
    }

    status = "✓" if verdict["passed"] else "✗"
    logger.info(f"{status} KS distance {gof.ks_distance:.4f} (tolerance {cfg.ks_tolerance}), "
                f"max quantile gap {gof.max_quantile_gap:.4f}")
    return VerificationOutcome(report=report, study=study, reference=reference)
