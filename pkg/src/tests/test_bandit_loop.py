import math

import numpy as np
import pytest

from acquisition import AcquisitionKind
from bandit import (RefitPolicy, RunConfig, ZetaSchedule, bound_report, information_gain, model_for_round,
                    regret_constant, run, zeta_schedule)
from gp_core import (CandidateGrid, GpModel, KernelSpec, MeanSpec, fit_posterior, predict, refit_hyperparameters,
                     sample_function)
from max_value import prior_anchor
from utils.errors import ArgumentError, OracleError

ALL_KINDS = [AcquisitionKind.ucb(), AcquisitionKind.ei(), AcquisitionKind.pi(), AcquisitionKind.est_numeric(),
             AcquisitionKind.est_laplace(), AcquisitionKind.est_exact(), AcquisitionKind.random(seed=4)]


def grid_oracle(grid, values):
    return lambda x: float(values[grid.nearest_index(x)])


def sampled_problem(seed, n=40, noise_var=1e-4, lengthscale=0.1):
    grid = CandidateGrid.from_axes([(0.0, 1.0)], n)
    model = GpModel(KernelSpec('matern', lengthscale, 1.0), MeanSpec.zero(), noise_var)
    values = sample_function(model, grid, seed)
    return grid, model, values


def same_records(a, b):
    assert len(a.records) == len(b.records)
    for ra, rb in zip(a.records, b.records):
        np.testing.assert_array_equal(ra.x, rb.x)
        assert (ra.t, ra.y, ra.m_hat, ra.nu_t, ra.simple_regret, ra.cumulative_regret) == \
            (rb.t, rb.y, rb.m_hat, rb.nu_t, rb.simple_regret, rb.cumulative_regret)


class TestRun:
    @pytest.mark.parametrize('kind', ALL_KINDS, ids=lambda k: k.label)
    def test_single_round(self, kind):
        grid, model, values = sampled_problem(1)
        result = run(RunConfig(model, grid, kind, max_rounds=1, seed=3), grid_oracle(grid, values))
        assert result.rounds == 1
        record = result.records[0]
        assert record.t == 1 and record.x.shape == (1,)
        assert (record.nu_t is not None) == kind.is_est

    def test_first_est_round_uses_prior(self):
        grid, model, values = sampled_problem(2)
        result = run(RunConfig(model, grid, AcquisitionKind.est_numeric(), max_rounds=1), grid_oracle(grid, values))
        means, stds = predict(fit_posterior(model, result.history.prefix(0)), grid)
        record = result.records[0]
        gaps = (record.m_hat - means) / stds
        assert grid.nearest_index(record.x) == int(np.argmin(gaps))
        assert record.sigma_at_choice == pytest.approx(1.0)
        assert record.m_hat >= prior_anchor(means, stds)

    def test_random_covers_small_grid(self):
        grid = CandidateGrid.from_points([[0.0], [0.5], [1.0]])
        values = np.array([0.3, 1.0, -0.2])
        model = GpModel(KernelSpec('matern', 0.3, 1.0), MeanSpec.zero(), 0.0)
        result = run(RunConfig(model, grid, AcquisitionKind.random(), max_rounds=50, seed=8), grid_oracle(grid, values))
        assert result.simple_curve[-1] == 0.0
        assert result.r_min == 0.0

    def test_est_picks_dominant_prior_mean(self):
        grid = CandidateGrid.from_points([[0.0], [0.5], [1.0]])
        model = GpModel(KernelSpec('matern', 0.2, 1.0), MeanSpec.linear([2.0], 0.0), 1e-4)
        oracle = lambda x: float(model.mean(np.atleast_2d(x))[0])
        result = run(RunConfig(model, grid, AcquisitionKind.est_numeric(), max_rounds=1), oracle)
        np.testing.assert_array_equal(result.records[0].x, [1.0])
        assert result.records[0].instantaneous_regret == 0.0

    def test_regret_accounting(self):
        grid, model, values = sampled_problem(5)
        result = run(RunConfig(model, grid, AcquisitionKind.est_laplace(), max_rounds=25, observation_noise_std=0.01,
                               seed=2), grid_oracle(grid, values), true_values=values)
        assert result.f_max == values.max()
        regrets = result.instantaneous
        assert np.all(regrets >= 0.0)
        assert np.all(np.diff(result.simple_curve) <= 0.0)
        sums = np.array([r.cumulative_regret for r in result.records])
        assert np.all(np.diff(sums) >= 0.0)
        np.testing.assert_allclose(result.cumulative_curve, np.cumsum(regrets) / np.arange(1, 26), atol=1e-12)
        assert 1 <= result.T_min <= 25
        assert result.r_min == regrets.min()
        assert regrets[result.T_min - 1] == result.r_min
        assert np.all(regrets[:result.T_min - 1] > result.r_min)

    def test_reproducible(self):
        grid, model, values = sampled_problem(6)
        config = RunConfig(model, grid, AcquisitionKind.est_numeric(), max_rounds=15, observation_noise_std=0.05, seed=9)
        same_records(run(config, grid_oracle(grid, values)), run(config, grid_oracle(grid, values)))

    def test_noise_depends_on_seed(self):
        grid, model, values = sampled_problem(6)
        kind = AcquisitionKind.ucb()
        a = run(RunConfig(model, grid, kind, max_rounds=3, observation_noise_std=0.1, seed=1), grid_oracle(grid, values))
        b = run(RunConfig(model, grid, kind, max_rounds=3, observation_noise_std=0.1, seed=2), grid_oracle(grid, values))
        assert a.records[0].y != b.records[0].y

    def test_nu_is_grid_minimum_every_round(self):
        grid, model, values = sampled_problem(7)
        result = run(RunConfig(model, grid, AcquisitionKind.est_numeric(), max_rounds=12, observation_noise_std=0.01,
                               seed=4), grid_oracle(grid, values))
        for record in result.records:
            means, stds = predict(fit_posterior(model, result.history.prefix(record.t - 1)), grid)
            assert record.nu_t == pytest.approx(float(np.min((record.m_hat - means) / stds)), abs=1e-12)
            assert record.lambda_equiv == record.nu_t
            assert record.m_hat_covers_max == (record.m_hat >= result.f_max)

    def test_warm_start_precedes_round_one(self):
        grid, model, values = sampled_problem(8)
        config = RunConfig(model, grid, AcquisitionKind.ei(), max_rounds=3, warm_start=[[0.5]])
        result = run(config, grid_oracle(grid, values))
        assert len(result.history) == 4
        np.testing.assert_array_equal(result.history.points[0], [0.5])

    def test_oracle_failure_carries_round(self):
        grid, model, values = sampled_problem(9)
        calls = []

        def flaky(x):
            calls.append(x)
            if len(calls) == 3:
                raise RuntimeError("simulator crashed")
            return 0.0

        with pytest.raises(OracleError) as info:
            run(RunConfig(model, grid, AcquisitionKind.ucb(), max_rounds=5), flaky, true_values=values)
        assert info.value.round_index == 3

    def test_non_finite_oracle_value(self):
        grid, model, values = sampled_problem(9)
        with pytest.raises(OracleError):
            run(RunConfig(model, grid, AcquisitionKind.ucb(), max_rounds=2), lambda x: float('nan'), true_values=values)

    def test_invalid_config(self):
        grid, model, _ = sampled_problem(1)
        with pytest.raises(ArgumentError):
            RunConfig(model, grid, AcquisitionKind.ucb(), max_rounds=0)
        with pytest.raises(ArgumentError):
            RunConfig(model, grid, AcquisitionKind.ucb(), max_rounds=3, warm_start=[[0.1, 0.2]])


class TestRefit:
    def test_refit_rounds(self):
        policy = RefitPolicy(every=5)
        assert [policy.last_refit_round(t) for t in (1, 2, 5, 6, 10, 11, 12)] == [None, None, None, 6, 6, 11, 11]

    def test_model_for_round_uses_history_prefix(self):
        grid, model, values = sampled_problem(10)
        policy = RefitPolicy(every=4, lengthscales=(0.05, 0.1, 0.3), signal_stds=(1.0,))
        config = RunConfig(model.with_kernel(lengthscale=0.3), grid, AcquisitionKind.est_laplace(), max_rounds=10,
                           refit=policy)
        result = run(config, grid_oracle(grid, values))
        assert model_for_round(config, result.history, 1) == config.model
        expected = refit_hyperparameters(config.model, result.history.prefix(8), policy.lengthscales,
                                         policy.signal_stds)
        assert model_for_round(config, result.history, 10) == expected
        assert result.model == expected


class TestZeta:
    def test_horizon(self):
        assert zeta_schedule(5, 150, 0.01, ZetaSchedule.HORIZON) == pytest.approx(math.sqrt(2 * math.log(7500)))
        assert zeta_schedule(5, 150, 0.01, ZetaSchedule.HORIZON) == pytest.approx(4.2243, abs=1e-4)

    def test_pi_squared_first_round(self):
        assert zeta_schedule(1, 1, 0.5) == pytest.approx(math.sqrt(2 * math.log(math.pi ** 2 / 6)), abs=1e-12)

    def test_clamped_at_zero(self):
        assert zeta_schedule(1, 1, 0.9) == 0.0

    def test_increasing_in_round(self):
        values = [zeta_schedule(t, 100, 0.01) for t in range(1, 100)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_invalid_round(self):
        with pytest.raises(ArgumentError):
            zeta_schedule(0, 10, 0.1)


class TestInformationGain:
    def test_single_point(self):
        model = GpModel(KernelSpec('matern', 0.1, 1.5), MeanSpec.zero(), 0.01)
        assert information_gain(model, [[0.3]]) == pytest.approx(0.5 * math.log(1 + 1.5 ** 2 / 0.01), abs=1e-12)

    def test_duplicate_adds_less_than_single_point(self):
        model = GpModel(KernelSpec('matern', 0.1, 1.0), MeanSpec.zero(), 0.01)
        single = information_gain(model, [[0.3]])
        double = information_gain(model, [[0.3], [0.3]])
        assert single < double < 2.0 * single

    def test_matches_dense_log_determinant(self, rng):
        model = GpModel(KernelSpec('matern', 0.2, 1.0), MeanSpec.zero(), 0.05)
        points = rng.uniform(size=(5, 2))
        _, logdet = np.linalg.slogdet(np.eye(5) + model.kernel.gram(points) / 0.05)
        assert information_gain(model, points) == pytest.approx(0.5 * logdet, abs=1e-8)

    def test_requires_noise(self, matern_model):
        with pytest.raises(ArgumentError):
            information_gain(GpModel(matern_model.kernel, matern_model.mean, 0.0), [[0.1]])


class TestBoundReport:
    def test_regret_constant(self):
        assert regret_constant(0.01) == pytest.approx(2.0 / math.log(101.0))
        assert regret_constant(0.01) == pytest.approx(0.4334, abs=1e-4)

    def test_perfect_first_pick(self):
        grid = CandidateGrid.from_points([[0.0], [0.5], [1.0]])
        model = GpModel(KernelSpec('matern', 0.2, 1.0), MeanSpec.linear([2.0], 0.0), 1e-4)
        oracle = lambda x: float(model.mean(np.atleast_2d(x))[0])
        result = run(RunConfig(model, grid, AcquisitionKind.est_numeric(), max_rounds=1), oracle)
        report = bound_report(result, model, 0.01)
        assert report.cumulative_regret == 0.0
        assert report.cumulative_regret <= report.high_probability_rhs
        assert report.margins[0] >= 0.0
        assert report.rounds == 1

    def test_summary_fields(self):
        grid, model, values = sampled_problem(11, noise_var=0.01)
        result = run(RunConfig(model, grid, AcquisitionKind.est_numeric(), max_rounds=10, observation_noise_std=0.1,
                               seed=5), grid_oracle(grid, values), true_values=values)
        report = bound_report(result, model, 0.01)
        assert report.nu_star == max(r.nu_t for r in result.records)
        assert report.C == pytest.approx(regret_constant(0.01))
        assert report.information_gain == pytest.approx(information_gain(model, result.chosen_points))
        assert 0.0 <= report.fraction_nonnegative <= 1.0
        assert report.uncovered_rounds == [r.t for r in result.records if r.m_hat < result.f_max]
        expected, high = report.trial_bound(0.1)
        assert high >= expected
        assert report.to_dict()['rounds'] == 10

    def test_requires_est_run(self):
        grid, model, values = sampled_problem(12)
        result = run(RunConfig(model, grid, AcquisitionKind.ucb(), max_rounds=2), grid_oracle(grid, values))
        with pytest.raises(ArgumentError):
            bound_report(result, model, 0.01)


@pytest.mark.slow
class TestConfidenceStatistics:
    def test_deviation_event_frequency(self):
        """Rounds where the chosen point falls more than zeta_t posterior stds below its mean are rare"""
        delta = 0.1
        replicates = 500
        grid = CandidateGrid.from_axes([(0.0, 1.0)], 20)
        model = GpModel(KernelSpec('matern', 0.1, 1.0), MeanSpec.zero(), 0.01)
        violated = 0
        for seed in range(replicates):
            values = sample_function(model, grid, seed)
            config = RunConfig(model, grid, AcquisitionKind.est_laplace(), max_rounds=30, observation_noise_std=0.1,
                               seed=seed, delta=delta)
            result = run(config, grid_oracle(grid, values), true_values=values)
            violated += any(r.mu_at_choice - r.f_at_choice > r.zeta_t * r.sigma_at_choice for r in result.records)
        frequency = violated / replicates
        assert frequency <= delta + 3.0 * math.sqrt(delta * (1.0 - delta) / replicates)

    def test_per_round_regret_bound(self):
        delta = 0.01
        covered, violations = 0, 0
        for seed in range(100):
            grid, model, values = sampled_problem(1000 + seed, n=50, noise_var=0.01)
            result = run(RunConfig(model, grid, AcquisitionKind.est_numeric(), max_rounds=20, observation_noise_std=0.1,
                                   seed=seed, delta=delta), grid_oracle(grid, values), true_values=values)
            report = bound_report(result, model, delta)
            for record, margin in zip(result.records, report.margins):
                if record.m_hat_covers_max:
                    covered += 1
                    violations += margin < 0
        assert covered > 0
        assert violations / covered <= delta + 0.05
