"""Tests for the long-run covariance estimator."""

import numpy as np
import pytest

from madstat.models.generators import Ar1Spec, NormalSpec
from madstat.models.window import KernelType, LagWindowSpec
from madstat.services.errors import ConfigError, DomainError
from madstat.services.longrun import (
    kernel_weights,
    longrun_cov,
    longrun_variance,
    paired_deviations,
    resolve_bandwidth,
)
from madstat.services.simulate import generate


@pytest.fixture(scope="module")
def ar1_series():
    return generate(Ar1Spec(phi=0.5, innovation=NormalSpec()), 100_000, seed=5)


class TestBandwidth:

    @pytest.mark.parametrize("n, expected", [(100, 4), (10_000, 11), (100_000, 18)])
    def test_auto_rule(self, n, expected):
        assert resolve_bandwidth(LagWindowSpec(), n) == expected

    def test_auto_is_capped_for_short_series(self):
        assert resolve_bandwidth(LagWindowSpec(), 4) == 1
        assert resolve_bandwidth(LagWindowSpec(), 2) == 0

    def test_explicit_bandwidth_too_large(self):
        with pytest.raises(ConfigError):
            resolve_bandwidth(LagWindowSpec(bandwidth=10), 10)
        with pytest.raises(ConfigError):
            resolve_bandwidth(LagWindowSpec(bandwidth=5), 11)

    def test_negative_bandwidth_rejected(self):
        with pytest.raises(ValueError):
            LagWindowSpec(bandwidth=-1)

    def test_parse(self):
        assert LagWindowSpec.parse("auto").bandwidth == "auto"
        assert LagWindowSpec.parse(" 7 ", KernelType.TRUNCATED) == LagWindowSpec(kernel="truncated", bandwidth=7)

    def test_bartlett_weights(self):
        np.testing.assert_allclose(kernel_weights(LagWindowSpec(), 3), [1.0, 0.75, 0.5, 0.25])
        np.testing.assert_allclose(kernel_weights(LagWindowSpec(kernel="truncated"), 2), [1.0, 1.0, 1.0])


class TestLongrunCov:

    def test_bandwidth_zero_is_biased_sample_covariance(self, rng):
        y = rng.standard_normal(500)
        z = 0.3 * y + rng.standard_normal(500)
        estimate = longrun_cov((y, z), LagWindowSpec(bandwidth=0))
        np.testing.assert_allclose(estimate, np.cov(np.vstack([y, z]), bias=True), rtol=1e-12, atol=1e-14)

    def test_perfectly_correlated_pair(self, rng):
        y = rng.standard_normal(1000)
        estimate = longrun_cov((y, y.copy()))
        assert estimate[0, 1] == pytest.approx(estimate[0, 0], abs=1e-10)
        assert estimate[1, 1] == pytest.approx(estimate[0, 0], abs=1e-10)

    def test_symmetric_and_psd(self, rng):
        y = rng.standard_normal(2000).cumsum() * 0.01 + rng.standard_normal(2000)
        estimate = longrun_cov((y, np.abs(y)), LagWindowSpec(bandwidth=25))
        np.testing.assert_array_equal(estimate, estimate.T)
        assert np.linalg.eigvalsh(estimate).min() >= -1e-10

    def test_ar1_long_run_variance(self, ar1_series):
        estimate = longrun_cov(paired_deviations(ar1_series, 0.0))
        assert estimate[0, 0] == pytest.approx(4.0, rel=0.15)

    def test_shuffling_removes_dependence(self, ar1_series, rng):
        shuffled = rng.permutation(ar1_series.values)
        assert longrun_variance(shuffled) == pytest.approx(4.0 / 3.0, rel=0.1)

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            longrun_cov(([1.0, 2.0, 3.0], [1.0, 2.0]))


class TestPairedDeviations:

    def test_theta_defaults_to_oracle_mad(self):
        first, second = paired_deviations([0.0, 2.0, 4.0], 1.0)
        np.testing.assert_allclose(first.values, [-1.0, 1.0, 3.0])
        np.testing.assert_allclose(second.values, [1.0 - 5.0 / 3.0, 1.0 - 5.0 / 3.0, 3.0 - 5.0 / 3.0])
