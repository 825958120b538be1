"""Tests for the limit models, samplers and analytic quantities."""

import math

import numpy as np
import pytest
from scipy import stats

from madstat.models.generators import (
    Ar1Spec,
    Atom,
    DiscreteSpec,
    ExponentialSpec,
    Ma1Spec,
    NormalSpec,
    ParetoSymmetricSpec,
    StudentTSpec,
)
from madstat.models.limits import GaussianFunctionalParams, StableParams, TailModel, TailShape
from madstat.models.window import LagWindowSpec
from madstat.services.errors import ConfigError, DomainError, RegimeError
from madstat.services.limit_laws import (
    delta_method_variance,
    empirical_cf,
    functional_limit_mean,
    gaussian_limit_from_law,
    gaussian_limit_iid,
    gaussian_limit_mixing,
    norming_an,
    sample_functional_limit,
    sample_stable,
    sigma_theta_sq,
    stable_cf,
    stable_limit,
    stable_scale,
    tail_constant,
    tail_matched_scale,
    xi_tail_constant,
    xi_transform,
)
from madstat.services.laws import analytic_centering, tail_model_for
from madstat.services.longrun import paired_deviations
from madstat.services.simulate import generate

NORMAL_VAR_Z = 1.0 - 2.0 / math.pi


class TestGaussianLimitIid:

    def test_standard_normal(self):
        params = gaussian_limit_iid(NormalSpec())
        assert params.a == 0.0
        assert params.p_eq == 0.0
        assert params.var_y == pytest.approx(1.0)
        assert params.var_z == pytest.approx(NORMAL_VAR_Z, abs=1e-12)
        assert params.cov_yz == 0.0

    def test_three_point_law(self, three_point_gen):
        params = gaussian_limit_iid(three_point_gen)
        assert params.a == 0.0
        assert params.p_eq == 0.5
        assert params.var_y == pytest.approx(0.5)
        assert params.var_z == pytest.approx(0.25)
        assert params.cov_yz == pytest.approx(0.0, abs=1e-15)

    def test_translation_invariance(self):
        shifted = DiscreteSpec(atoms=[Atom(value=2.0, prob=0.25), Atom(value=3.0, prob=0.5), Atom(value=4.0, prob=0.25)])
        base = DiscreteSpec(atoms=[Atom(value=-1.0, prob=0.25), Atom(value=0.0, prob=0.5), Atom(value=1.0, prob=0.25)])
        assert gaussian_limit_iid(shifted) == gaussian_limit_iid(base)
        assert gaussian_limit_iid(NormalSpec(mu=5.0)) == gaussian_limit_iid(NormalSpec())

    def test_exponential_by_quadrature(self):
        params = gaussian_limit_from_law(ExponentialSpec())
        assert params.a == pytest.approx(1.0 - 2.0 / math.e)
        assert params.var_z == pytest.approx(1.0 - 4.0 / math.e ** 2, rel=1e-10)
        assert params.cov_yz == pytest.approx(4.0 / math.e - 1.0, rel=1e-7)

    def test_student_t_with_finite_variance(self):
        params = gaussian_limit_from_law(StudentTSpec(dof=5.0))
        assert params.var_y == pytest.approx(5.0 / 3.0)
        assert params.cov_yz == pytest.approx(0.0, abs=1e-8)

    def test_from_data_matches_sample_covariance(self, rng):
        values = rng.standard_normal(4000)
        params = gaussian_limit_iid(values)
        y, z = paired_deviations(values, float(np.sum(values) / values.size))
        expected = np.cov(np.vstack([y.values, z.values]), bias=True)
        np.testing.assert_allclose(params.cov, expected, rtol=1e-12, atol=1e-15)

    def test_infinite_variance_is_a_regime_error(self):
        with pytest.raises(RegimeError, match="stable_limit"):
            gaussian_limit_iid(ParetoSymmetricSpec(alpha=1.5))

    def test_dependent_law_needs_mixing_estimate(self):
        with pytest.raises(ConfigError):
            gaussian_limit_from_law(Ar1Spec(phi=0.5, innovation=NormalSpec()))

    def test_zero_coefficient_reduces_to_innovation(self):
        assert gaussian_limit_iid(Ar1Spec(phi=0.0, innovation=NormalSpec())) == gaussian_limit_iid(NormalSpec())
        assert gaussian_limit_iid(Ma1Spec(theta=0.0, innovation=ExponentialSpec())) == \
            gaussian_limit_iid(ExponentialSpec())


class TestGaussianLimitMixing:

    def test_bandwidth_zero_equals_iid(self, rng):
        values = rng.standard_normal(3000)
        mu = float(np.sum(values) / values.size)
        mixing = gaussian_limit_mixing(paired_deviations(values, mu), LagWindowSpec(bandwidth=0))
        assert mixing == gaussian_limit_iid(values, mu)

    def test_ar1(self):
        series = generate(Ar1Spec(phi=0.5, innovation=NormalSpec()), 100_000, seed=12)
        params = gaussian_limit_mixing(paired_deviations(series, 0.0))
        assert params.var_y == pytest.approx(4.0, rel=0.15)

    def test_ma1(self):
        series = generate(Ma1Spec(theta=0.5, innovation=NormalSpec()), 100_000, seed=13)
        params = gaussian_limit_mixing(paired_deviations(series, 0.0))
        assert params.var_y == pytest.approx(2.25, rel=0.15)

    def test_bandwidth_not_below_n(self):
        with pytest.raises(ConfigError):
            gaussian_limit_mixing(paired_deviations([1.0, 2.0, 3.0], 2.0), LagWindowSpec(bandwidth=3))


class TestFunctionalLimit:

    def test_reduces_to_z_without_atom(self):
        params = GaussianFunctionalParams(a=0.0, p_eq=0.0, var_y=1.0, var_z=0.36, cov_yz=0.0)
        draws = sample_functional_limit(params, 200_000, seed=1).values
        assert draws.mean() == pytest.approx(0.0, abs=4 * math.sqrt(0.36 / 200_000))
        assert draws.var() == pytest.approx(0.36, rel=0.02)

    def test_atom_limit_mean(self):
        params = GaussianFunctionalParams(a=0.0, p_eq=1.0, var_y=1.0, var_z=1.0, cov_yz=0.0)
        draws = sample_functional_limit(params, 1_000_000, seed=2).values
        assert draws.mean() == pytest.approx(math.sqrt(2.0 / math.pi), abs=0.005)

    def test_degenerate_covariance(self):
        params = GaussianFunctionalParams(a=0.3, p_eq=0.2, var_y=0.0, var_z=0.0, cov_yz=0.0)
        assert np.all(sample_functional_limit(params, 1000, seed=3).values == 0.0)

    def test_singular_covariance_samples(self):
        params = GaussianFunctionalParams(a=1.0, p_eq=0.0, var_y=1.0, var_z=1.0, cov_yz=1.0)
        draws = sample_functional_limit(params, 50_000, seed=4).values
        assert draws.var() == pytest.approx(4.0, rel=0.03)

    def test_deterministic_given_seed(self):
        params = GaussianFunctionalParams(a=0.2, p_eq=0.1, var_y=1.0, var_z=0.5, cov_yz=0.1)
        np.testing.assert_array_equal(sample_functional_limit(params, 100, 9).values,
                                      sample_functional_limit(params, 100, 9).values)

    def test_limit_mean(self):
        assert functional_limit_mean(GaussianFunctionalParams(a=0.0, p_eq=0.0, var_y=1.0, var_z=1.0, cov_yz=0.0)) == 0.0
        params = GaussianFunctionalParams(a=0.0, p_eq=0.5, var_y=0.5, var_z=0.25, cov_yz=0.0)
        assert functional_limit_mean(params) == pytest.approx(0.28209, abs=1e-5)

    def test_limit_mean_matches_draws(self):
        params = GaussianFunctionalParams(a=0.0, p_eq=0.5, var_y=0.5, var_z=0.25, cov_yz=0.0)
        draws = sample_functional_limit(params, 1_000_000, seed=5).values
        se = draws.std() / math.sqrt(draws.size)
        assert abs(draws.mean() - functional_limit_mean(params)) <= 3 * se

    def test_gaussian_without_atom_has_normal_kurtosis(self):
        params = GaussianFunctionalParams(a=0.4, p_eq=0.0, var_y=1.0, var_z=0.5, cov_yz=0.2)
        draws = sample_functional_limit(params, 1_000_000, seed=6).values
        assert stats.kurtosis(draws, fisher=False) == pytest.approx(3.0, abs=3 * math.sqrt(24.0 / draws.size))

    def test_non_psd_rejected(self):
        with pytest.raises(ValueError):
            GaussianFunctionalParams(a=0.0, p_eq=0.0, var_y=1.0, var_z=1.0, cov_yz=2.0)

    def test_json_shape(self):
        params = GaussianFunctionalParams(a=0.1, p_eq=0.2, var_y=1.0, var_z=0.5, cov_yz=0.1)
        assert params.to_dict() == {"regime": "gaussian", "a": 0.1, "p_eq": 0.2, "cov": [[1.0, 0.1], [0.1, 0.5]]}


class TestSigmaThetaSq:

    def test_standard_normal(self):
        assert sigma_theta_sq(gaussian_limit_iid(NormalSpec())) == pytest.approx(0.36338, abs=1e-5)

    def test_symmetric_law_reduces_to_var_z(self):
        params = gaussian_limit_from_law(StudentTSpec(dof=6.0))
        assert sigma_theta_sq(params) == pytest.approx(params.var_z, rel=1e-6)

    def test_exponential_identity_with_delta_method(self):
        law = ExponentialSpec()
        assert sigma_theta_sq(gaussian_limit_from_law(law)) == pytest.approx(delta_method_variance(law), rel=1e-6)

    def test_exponential_identity_by_simulation(self):
        x = generate(ExponentialSpec(), 1_000_000, seed=21).values
        influence = np.abs(x - 1.0) + (2.0 * (1.0 - math.exp(-1.0)) - 1.0) * x
        centred_sq = (influence - influence.mean()) ** 2
        se = centred_sq.std() / math.sqrt(x.size)
        assert abs(centred_sq.mean() - sigma_theta_sq(gaussian_limit_from_law(ExponentialSpec()))) <= 3 * se

    def test_atom_is_a_regime_error(self, three_point_gen):
        with pytest.raises(RegimeError):
            sigma_theta_sq(gaussian_limit_iid(three_point_gen))


class TestStableScale:

    def test_reference_value(self):
        assert stable_scale(1.5, 0.5, 0.5, 0.5) == pytest.approx(0.54195, abs=1e-4)

    @pytest.mark.parametrize("alpha", [1.1, 1.5, 1.9])
    def test_numerator_cancels(self, alpha):
        assert tail_constant(alpha, 1.0, 0.5, 0.5) == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("alpha", [1.0, 2.0, 0.5, 2.5])
    def test_alpha_outside_open_interval(self, alpha):
        with pytest.raises(DomainError):
            stable_scale(alpha, 0.5, 0.5, 0.5)

    def test_continuous_in_probabilities(self):
        base = stable_scale(1.3, 0.4, 0.45, 0.55)
        nudged = stable_scale(1.3, 0.4 + 1e-9, 0.45, 0.55)
        assert nudged == pytest.approx(base, rel=1e-7)

    def test_tail_matched_scale(self):
        assert tail_matched_scale(1.5, 0.5, 0.5, 0.5) == pytest.approx(1.84527, rel=1e-5)
        for alpha in (1.2, 1.5, 1.8):
            product = stable_scale(alpha, 0.5, 0.5, 0.5) * tail_matched_scale(alpha, 0.5, 0.5, 0.5)
            assert product == pytest.approx(1.0, rel=1e-12)

    def test_xi_tail_constant_agrees_without_atom(self):
        for p_less in (0.3, 0.5, 0.8):
            b = p_less - (1.0 - p_less)
            assert xi_tail_constant(1.4, 0.7, b) == pytest.approx(tail_constant(1.4, 0.7, p_less, 1.0 - p_less))

    def test_stable_limit_of_pareto(self):
        params = stable_limit(ParetoSymmetricSpec(alpha=1.5))
        assert params.p_less == params.p_greater == 0.5
        assert params.sigma == pytest.approx(1.84527, rel=1e-5)
        assert stable_limit(ParetoSymmetricSpec(alpha=1.5), scale="displayed").sigma == pytest.approx(0.54195, abs=1e-4)


class TestStableCf:

    PARAMS = StableParams(alpha=1.5, sigma=0.8, p=0.5, p_less=0.5, p_greater=0.5)

    def test_origin(self):
        assert stable_cf(self.PARAMS, 0.0) == 1.0 + 0.0j

    @pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
    def test_hermitian_and_modulus(self, s):
        value = stable_cf(self.PARAMS, s)
        assert stable_cf(self.PARAMS, -s) == pytest.approx(value.conjugate())
        assert abs(value) == pytest.approx(math.exp(-(0.8 ** 1.5) * s ** 1.5), rel=1e-12)

    def test_empirical_cf_of_sampler(self):
        params = StableParams(alpha=1.5, sigma=1.0, p=0.5, p_less=0.5, p_greater=0.5)
        draws = sample_stable(1.5, True, 1.0, 1_000_000, seed=31)
        for s in (-1.0, -0.5, -0.25, 0.25, 0.5, 1.0):
            empirical, exact = empirical_cf(draws, s), stable_cf(params, s)
            assert abs(abs(empirical) - abs(exact)) < 0.01
            assert abs(np.angle(empirical / exact)) < 0.02


class TestStablePartialSums:
    """Normalised sums of |X - mu| - theta against the stable limit's CF."""

    GEN = ParetoSymmetricSpec(alpha=1.5)
    N = 2000
    BLOCKS = 20
    REPS_PER_BLOCK = 1000
    POINTS = (-0.5, -0.25, 0.25, 0.5)

    @pytest.fixture(scope="class")
    def sums(self):
        centering = analytic_centering(self.GEN)
        a_n = norming_an(tail_model_for(self.GEN), self.N)
        blocks = []
        for block in range(self.BLOCKS):
            series = generate(self.GEN, self.N * self.REPS_PER_BLOCK, seed=500 + block)
            xi = xi_transform(series, centering.mu, 0.0).values.reshape(self.REPS_PER_BLOCK, self.N)
            blocks.append((xi - centering.theta).sum(axis=1) / a_n)
        return np.concatenate(blocks)

    def test_matches_stable_cf(self, sums):
        params = stable_limit(self.GEN)
        for s in self.POINTS:
            assert abs(empirical_cf(sums, s) - stable_cf(params, s)) < 0.05

    def test_left_skewed_limit_is_rejected(self, sums):
        params = stable_limit(self.GEN)
        for s in self.POINTS:
            mirrored = stable_cf(params, -s)
            assert abs(empirical_cf(sums, s) - mirrored) > 0.3


class TestSampleStable:

    def test_scaling_with_sigma(self):
        one = sample_stable(1.5, True, 1.0, 5000, seed=8).values
        two = sample_stable(1.5, True, 2.0, 5000, seed=8).values
        np.testing.assert_array_equal(two, 2.0 * one)

    def test_quantile_range_scales(self):
        one = sample_stable(1.7, True, 1.0, 100_000, seed=9).values
        three = sample_stable(1.7, True, 3.0, 100_000, seed=9).values
        spread = np.subtract(*np.quantile(one, [0.99, 0.01]))
        assert np.subtract(*np.quantile(three, [0.99, 0.01])) == pytest.approx(3.0 * spread, rel=1e-12)
        assert np.isfinite(np.median(one))

    def test_right_skew(self):
        draws = sample_stable(1.5, True, 1.0, 200_000, seed=10).values
        q01, q50, q99 = np.quantile(draws, [0.01, 0.5, 0.99])
        assert q99 - q50 > q50 - q01
        left = sample_stable(1.5, False, 1.0, 200_000, seed=10).values
        np.testing.assert_allclose(np.quantile(left, 0.5), -q50, atol=0.05)

    @pytest.mark.parametrize("kwargs", [{"alpha": 2.0}, {"alpha": 1.0}, {"sigma": 0.0}, {"n_draws": 0}])
    def test_domain(self, kwargs):
        arguments = {"alpha": 1.5, "skew_to_right": True, "sigma": 1.0, "n_draws": 10, "seed": 0, **kwargs}
        with pytest.raises(DomainError):
            sample_stable(**arguments)


class TestNorming:

    def test_pareto_closed_form(self):
        assert norming_an(TailModel(alpha=1.5), 1000) == pytest.approx(100.0, rel=1e-12)

    def test_n_one(self):
        assert norming_an(TailModel(alpha=1.5, x_m=2.5), 1) == 2.5

    @pytest.mark.parametrize("n", [10, 1000, 1_000_000])
    def test_log_modified_residual(self, n):
        tail = TailModel(alpha=1.5, shape=TailShape.LOG_MODIFIED)
        a_n = norming_an(tail, n)
        assert abs(n * float(tail.survival(a_n)) - 1.0) <= 1e-8

    def test_student_t_tail(self):
        tail = TailModel(alpha=1.5, shape=TailShape.STUDENT_T)
        a_n = norming_an(tail, 5000)
        assert 5000 * float(tail.survival(a_n)) == pytest.approx(1.0, abs=1e-8)


class TestXiTransform:

    def test_b_zero(self):
        np.testing.assert_array_equal(xi_transform([-2.0, 1.0, 3.0], 1.0, 0.0).values, [3.0, 0.0, 2.0])

    def test_case_split(self):
        xi = xi_transform([-1.0, 0.0, 2.0], 0.0, 0.25).values
        np.testing.assert_allclose(xi, [0.75 * 1.0, 0.0, 1.25 * 2.0])

    def test_nonnegative(self, rng):
        values = rng.standard_t(2, 10_000)
        for b in rng.uniform(-0.999, 0.999, 20):
            assert xi_transform(values, float(rng.normal()), float(b)).values.min() >= 0.0

    @pytest.mark.parametrize("b", [1.0, -1.0, 1.5])
    def test_b_domain(self, b):
        with pytest.raises(DomainError):
            xi_transform([1.0], 0.0, b)
