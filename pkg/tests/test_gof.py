"""Tests for the two-sample comparison helpers."""

import math

import numpy as np
import pytest

from madstat.models.gof import GofReport, QuantileRow
from madstat.services.errors import DomainError
from madstat.services.gof import ks_two_sample, moment_summary, quantile_band, subsample_quantile_se
from madstat.services.limit_laws import sample_stable


class TestKsTwoSample:

    def test_identical_samples(self, rng):
        x = rng.standard_normal(500)
        assert ks_two_sample(x, x) == 0.0

    def test_disjoint_samples(self):
        assert ks_two_sample([1.0, 2.0], [3.0, 4.0, 5.0]) == 1.0

    def test_shifted_grid(self):
        assert ks_two_sample([1.0, 2.0, 3.0], [2.0, 3.0, 4.0]) == pytest.approx(1.0 / 3.0)

    def test_ties_across_samples(self):
        assert ks_two_sample([0.0, 0.0, 1.0], [0.0, 1.0, 1.0]) == pytest.approx(1.0 / 3.0)

    def test_symmetric(self, rng):
        a, b = rng.standard_normal(300), rng.standard_t(3, 700)
        assert ks_two_sample(a, b) == ks_two_sample(b, a)

    def test_same_law_is_close(self, rng):
        assert ks_two_sample(rng.standard_normal(50_000), rng.standard_normal(50_000)) < 0.015

    def test_invariant_under_increasing_transform(self, rng):
        a, b = rng.uniform(-2.0, 2.0, 300), rng.normal(0.3, 1.0, 450).clip(-2.0, 2.0)
        assert ks_two_sample(np.exp(a), np.exp(b)) == ks_two_sample(a, b)
        assert ks_two_sample(np.arctan(a), np.arctan(b)) == ks_two_sample(a, b)

    def test_empty_input(self):
        with pytest.raises(DomainError):
            ks_two_sample([], [1.0])


class TestQuantileBand:

    def test_type_seven_quantiles(self):
        report = quantile_band([1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0, 4.0], levels=[0.25, 0.5])
        assert [row.sample_q for row in report.quantile_table] == [1.75, 2.5]
        assert report.max_quantile_gap == 0.0
        assert report.ks_distance == 0.0

    def test_gaps_and_sizes(self):
        report = quantile_band([0.0, 1.0, 2.0], [10.0, 11.0, 12.0, 13.0, 14.0], levels=[0.5])
        assert report.quantile_table[0].abs_gap == 11.0
        assert (report.n_sample, report.n_reference) == (3, 5)

    @pytest.mark.parametrize("levels", [[], [0.0, 0.5], [0.5, 1.0], [0.5, 0.25], [0.3, 0.3]])
    def test_rejects_bad_levels(self, levels):
        with pytest.raises(DomainError):
            quantile_band([1.0, 2.0], [1.0, 2.0], levels=levels)

    def test_report_validates_order(self):
        rows = [QuantileRow(level=0.5, sample_q=0.0, reference_q=0.0, abs_gap=0.0),
                QuantileRow(level=0.25, sample_q=0.0, reference_q=0.0, abs_gap=0.0)]
        with pytest.raises(ValueError):
            GofReport(ks_distance=0.0, quantile_table=rows, n_sample=1, n_reference=1)

    def test_stable_rerun_inside_subsample_band(self):
        first = sample_stable(1.5, True, 1.0, 100_000, seed=61)
        second = sample_stable(1.5, True, 1.0, 100_000, seed=62)
        band = 3.0 * np.hypot(subsample_quantile_se(first), subsample_quantile_se(second))
        gaps = np.array([row.abs_gap for row in quantile_band(first, second).quantile_table])
        assert np.all(gaps <= band)

    def test_to_dict(self):
        report = quantile_band([1.0, 2.0, 3.0], [1.0, 2.0, 4.0], levels=[0.5])
        assert set(report.to_dict()) == {"ks_distance", "quantile_table", "n_sample", "n_reference"}


class TestSubsampleSe:

    def test_median_of_normal(self, rng):
        x = rng.standard_normal(200_000)
        se = subsample_quantile_se(x, levels=[0.5])
        assert se[0] == pytest.approx(math.sqrt(math.pi / 2.0) / math.sqrt(x.size), rel=0.5)

    def test_needs_enough_draws(self):
        with pytest.raises(DomainError):
            subsample_quantile_se(np.arange(30.0), n_blocks=20)


class TestMomentSummary:

    def test_normal_sample(self, rng):
        summary = moment_summary(rng.standard_normal(400_000))
        assert summary.mean == pytest.approx(0.0, abs=4 * summary.mean_se)
        assert summary.variance == pytest.approx(1.0, rel=0.01)
        assert summary.kurtosis == pytest.approx(3.0, abs=4 * summary.kurtosis_se)
        assert summary.kurtosis_se == pytest.approx(math.sqrt(24.0 / 400_000))

    def test_constant_sample(self):
        summary = moment_summary([2.0, 2.0, 2.0])
        assert (summary.mean, summary.variance, summary.kurtosis) == (2.0, 0.0, 0.0)

    def test_single_value(self):
        assert moment_summary([5.0]).variance == 0.0
