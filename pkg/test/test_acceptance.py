"""
Statistical checks at full scale. Run with ``pytest --runslow``.
"""

import math
from fractions import Fraction

import pytest

import matprod as mp
from matprod.cli.__main__ import main
from matprod.relu import default_input

from ._common import GAUSSIAN, make_config, oracle_grid, small_grid


@pytest.mark.slow
class Test_first_moment_grid:
    def test_normal(self):
        for trial_seed, (config, u) in enumerate(small_grid()):
            assert float(mp.exact_moment(config, u, 1)) == pytest.approx(1.0, abs=1e-12)

            batch = mp.run_trials(config, u, trials=10**4, seed=trial_seed)
            estimate = mp.empirical_moment(batch, 1)
            assert abs(estimate.estimate - 1.0) <= 5 * estimate.stderr + 1e-12


@pytest.mark.slow
class Test_exact_moment_full_grid:
    @pytest.mark.parametrize(["k"], [[1], [2]])
    def test_normal(self, k):
        configs = list(oracle_grid())

        assert len(configs) == 936
        for config, u in configs:
            assert mp.exact_moment(config, u, k) == mp.brute_force_moment(config, u, k)


@pytest.mark.slow
class Test_second_moment_asymptotics:
    def test_normal(self):
        config = make_config([32] * 9)
        u = mp.UnitVector.uniform(32)

        assert mp.compute_beta(config, u).beta == pytest.approx(0.5)

        batch = mp.run_trials(config, u, trials=10**5, seed=5)
        estimate = mp.empirical_moment(batch, 2)

        assert abs(estimate.estimate / math.exp(0.5) - 1.0) <= 0.05


@pytest.mark.slow
class Test_log_normality:
    def test_normal(self):
        config = make_config([64] * 17)
        batch = mp.run_trials(config, mp.UnitVector.uniform(64), trials=10**5, seed=6)
        result = mp.summary(batch)

        assert mp.ks_to_gaussian(batch, -0.25, 0.5) <= 0.02
        assert abs(result.mean + 0.25) <= 0.02
        assert abs(result.variance - 0.5) <= 0.03

    def test_chi_square_law(self):
        config = make_config([64] * 17)
        product = mp.run_trials(config, mp.UnitVector.e1(64), trials=10**5, seed=7)
        oracle = mp.chi_square_product_sampler([64] * 16, trials=10**5, seed=8)

        assert mp.two_sample_ks(product, oracle).statistic <= 0.01


@pytest.mark.slow
class Test_jacobian_equivalence:
    @pytest.mark.parametrize(
        ["product_p", "matches"], [[Fraction(1, 2), True], [Fraction(9, 10), False]]
    )
    def test_normal(self, product_p, matches):
        net_config = mp.ReluNetConfig([8, 16, 16, 16], GAUSSIAN)
        result = mp.compare_jacobian_vs_product(
            net_config,
            default_input(8),
            mp.UnitVector.uniform(8),
            2 * 10**4,
            seed=21,
            product_p=product_p,
        )

        if matches:
            assert result.ks.statistic <= 0.02
        else:
            assert result.ks.statistic > 0.05


@pytest.mark.slow
class Test_zero_event_frequency:
    def test_normal(self):
        config = make_config([3] * 5, Fraction(1, 2))
        batch = mp.run_trials(config, mp.UnitVector.uniform(3), trials=10**5, seed=10)

        expected = 1 - (7 / 8) ** 4
        stderr = math.sqrt(expected * (1 - expected) / batch.trials)

        assert mp.zero_event_probability(config).probability == pytest.approx(expected)
        assert abs(batch.zero_event_rate - expected) <= 4 * stderr


@pytest.mark.slow
class Test_output_determinism:
    @pytest.mark.parametrize(
        ["argv"],
        [
            [["moments", "--widths", "32x8", "--k", "2", "--trials", "100000", "--seed", "5"]],
            [
                ["ks-test", "--widths", "64x16", "--trials", "100000", "--seed", "6"]
                + ["--tolerance", "0.02"]
            ],
            [
                ["chi2-check", "--widths", "64x16", "--trials", "100000", "--seed", "7"]
                + ["--tolerance", "0.01"]
            ],
            [
                ["jacobian-compare", "--widths", "8,16,16,16", "--trials", "20000"]
                + ["--seed", "21", "--product-p", "0.5", "--tolerance", "0.02"]
            ],
        ],
    )
    def test_normal(self, argv, tmp_path, monkeypatch):
        outputs = []
        for threads in ("1", "8"):
            monkeypatch.setenv("MATPROD_THREADS", threads)
            p_file = tmp_path / f"out_{threads}.csv"

            assert main(argv + ["--output", str(p_file), "--assert"]) == 0
            outputs.append(p_file.read_bytes())

        assert outputs[0] == outputs[1]
