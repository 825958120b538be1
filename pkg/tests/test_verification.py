"""Tests for the Monte Carlo verification harness."""

import math

import numpy as np
import pytest

from madstat.models.generators import Ar1Spec, ExponentialSpec, Ma1Spec, NormalSpec, ParetoSymmetricSpec
from madstat.models.study import McStudy, VerifyConfig
from madstat.services.data_io import render_json
from madstat.services.simulate import true_theta
from madstat.services.verification import build_reference, mc_verify

NORMAL_VAR_Z = 1.0 - 2.0 / math.pi


def _config(**overrides) -> VerifyConfig:
    fields = {
        "study": McStudy(generator=NormalSpec(), n=800, reps=1000, seed=5),
        "n_reference": 20_000,
        "ks_tolerance": 0.07,
    }
    fields.update(overrides)
    return VerifyConfig(**fields)


class TestBuildReference:

    def test_gaussian_reference_spread(self):
        cfg = _config()
        params, reference = build_reference(cfg, true_theta(NormalSpec()))
        assert params.regime == "gaussian"
        assert reference.n == 20_000
        assert reference.values.var() == pytest.approx(1.0 - 2.0 / math.pi, rel=0.03)

    def test_reference_scale(self):
        _, base = build_reference(_config(), true_theta(NormalSpec()))
        _, doubled = build_reference(_config(reference_scale=2.0), true_theta(NormalSpec()))
        np.testing.assert_allclose(doubled.values, 2.0 * base.values)

    def test_reference_seed_defaults_to_study_seed_plus_one(self):
        assert _config().resolved_reference_seed == 6
        assert _config(reference_seed=99).resolved_reference_seed == 99

    def test_stable_reference(self):
        study = McStudy(generator=ParetoSymmetricSpec(alpha=1.5), n=1000, reps=10, seed=1, rate="n_over_an")
        params, reference = build_reference(_config(study=study), true_theta(study.generator))
        assert params.regime == "stable"
        assert params.sigma == pytest.approx(1.84527, rel=1e-5)
        assert np.quantile(reference.values, 0.99) - np.median(reference.values) > \
            np.median(reference.values) - np.quantile(reference.values, 0.01)

    def test_mixing_reference_uses_long_run_covariance(self):
        gen = Ar1Spec(phi=0.5, innovation=NormalSpec())
        study = McStudy(generator=gen, n=1000, reps=10, seed=2)
        params, _ = build_reference(_config(study=study, reference_length=200_000), true_theta(gen))
        assert params.var_y == pytest.approx(4.0, rel=0.15)


class TestMcVerify:

    def test_normal_study_passes(self):
        outcome = mc_verify(_config())
        report = outcome.report
        assert report["verdict"] == {"ks_within_tolerance": True, "passed": True}
        assert report["gof"]["n_sample"] == 1000
        assert report["moments"]["variance"] == pytest.approx(1.0 - 2.0 / math.pi, rel=0.15)
        assert len(outcome.study.results) == 1000

    def test_doubled_reference_fails(self):
        report = mc_verify(_config(reference_scale=2.0)).report
        assert report["gof"]["ks_distance"] > 0.07
        assert report["verdict"]["passed"] is False

    def test_quantile_tolerance_is_reported(self):
        report = mc_verify(_config(quantile_tolerance=0.1)).report
        assert "quantiles_within_tolerance" in report["verdict"]
        assert report["tolerances"] == {"ks": 0.07, "quantile": 0.1, "theta_widening": 0.0}

    def test_report_is_deterministic(self):
        assert render_json(mc_verify(_config()).report) == render_json(mc_verify(_config()).report)

    def test_atom_study_reports_limit_mean(self, three_point_gen):
        cfg = _config(study=McStudy(generator=three_point_gen, n=400, reps=500, seed=8))
        report = mc_verify(cfg).report
        assert report["expected_limit_mean"] == pytest.approx(0.28209, abs=1e-5)
        assert report["limit"]["p_eq"] == 0.5

    def test_normal_mean_check(self):
        check = mc_verify(_config()).report["mean_check"]
        assert check["within_tolerance"] is True
        assert check["tolerance"] == pytest.approx(3.0 * math.sqrt(NORMAL_VAR_Z / 1000), rel=0.2)

    def test_stable_study_has_no_mean_check(self):
        study = McStudy(generator=ParetoSymmetricSpec(alpha=1.5), n=500, reps=50, seed=4, rate="n_over_an")
        assert mc_verify(_config(study=study)).report["mean_check"] is None

    @pytest.mark.parametrize("gen", [
        Ar1Spec(phi=0.0, innovation=NormalSpec()),
        Ma1Spec(theta=0.0, innovation=NormalSpec()),
    ])
    def test_zero_coefficient_is_iid_normal(self, gen):
        cfg = _config(study=McStudy(generator=gen, n=800, reps=1000, seed=5))
        report = mc_verify(cfg).report
        baseline = mc_verify(_config()).report
        assert report["verdict"]["passed"] is True
        assert report["limit"] == baseline["limit"]
        assert report["study"]["theta"] == pytest.approx(math.sqrt(2.0 / math.pi))


class TestEstimatedTheta:

    GEN = Ar1Spec(phi=0.5, innovation=ExponentialSpec())

    def _report(self, quantile_tolerance=0.1):
        study = McStudy(generator=self.GEN, n=400, reps=200, seed=9, n_ref=20_000)
        cfg = _config(study=study, reference_length=50_000, quantile_tolerance=quantile_tolerance)
        return mc_verify(cfg).report

    def test_tolerances_widen_by_theta_se(self):
        report = self._report()
        study = report["study"]
        assert study["theta_source"] == "estimated"
        assert study["theta_se"] > 0.0
        widening = report["tolerances"]["theta_widening"]
        assert widening == pytest.approx(3.0 * study["norming"] * study["theta_se"])
        assert report["tolerances"]["quantile"] == pytest.approx(0.1 + widening)
        assert report["mean_check"]["tolerance"] == pytest.approx(3.0 * report["moments"]["mean_se"] + widening)

    def test_ks_tolerance_unchanged(self):
        assert self._report(quantile_tolerance=None)["tolerances"]["ks"] == 0.07
