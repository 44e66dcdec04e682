import math

import numpy as np
import pytest
from scipy.stats import norm

import matprod as mp
from matprod.stats import one_sample_ks, one_sample_ks_report


class Test_normal_cdf:
    @pytest.mark.parametrize(
        ["t", "mean", "variance", "expected"],
        [
            [0.0, 0.0, 1.0, 0.5],
            [-3.2, -3.2, 7.5, 0.5],
            [1.959964, 0.0, 1.0, 0.975],
            [2.0, 1.0, 4.0, 0.6914624612740131],
        ],
    )
    def test_normal(self, t, mean, variance, expected):
        assert mp.normal_cdf(t, mean, variance) == pytest.approx(expected, abs=1e-6)

    def test_symmetry(self):
        for t in np.linspace(-8, 8, 161):
            assert mp.normal_cdf(t) + mp.normal_cdf(-t) == pytest.approx(1.0, abs=1e-12)

    def test_monotone(self):
        values = mp.normal_cdf(np.linspace(-10, 10, 2001))

        assert np.all(np.diff(values) >= 0)

    @pytest.mark.parametrize(["value"], [[0.0], [-1.0]])
    def test_exception(self, value):
        with pytest.raises(mp.ValidationError):
            mp.normal_cdf(0.0, 0.0, value)


class Test_one_sample_ks:
    def test_single_sample_at_median(self):
        assert one_sample_ks([1.5], lambda t: mp.normal_cdf(t, 1.5, 2.0)) == 0.5

    def test_reference_quantiles(self):
        count = 1000
        samples = norm.ppf((2 * np.arange(1, count + 1) - 1) / (2 * count))

        assert one_sample_ks(samples, mp.normal_cdf) <= 1 / (2 * count) + 1e-9

    def test_far_tail(self):
        statistic = one_sample_ks([40.0] * 10, mp.normal_cdf)

        assert statistic == pytest.approx(1.0)

    def test_report(self):
        report = one_sample_ks_report([0.0, 1.0, -1.0, 0.5], 0.0, 1.0)

        assert report.sizes == (4,)
        assert report.critical_value == pytest.approx(1.358 / 2)
        assert 0 <= report.statistic <= 1

    def test_exception(self):
        with pytest.raises(mp.EmptyBatch):
            one_sample_ks([], mp.normal_cdf)


class Test_two_sample_ks:
    @pytest.mark.parametrize(
        ["a", "b", "expected"],
        [
            [[1.0, 2.0, 2.0, 3.0], [2.0, 3.0, 1.0, 2.0], 0.0],
            [[0.0], [1.0], 1.0],
            [[1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0, 5.0], 0.25],
            [[1.0, 2.0], [1.0, 1.0, 2.0, 2.0], 0.0],
        ],
    )
    def test_normal(self, a, b, expected):
        assert mp.two_sample_ks(a, b).statistic == pytest.approx(expected)

    def test_symmetric_and_monotone_invariant(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal(300)
        b = rng.standard_normal(200) + 0.2

        forward = mp.two_sample_ks(a, b).statistic

        assert mp.two_sample_ks(b, a).statistic == forward
        assert mp.two_sample_ks(np.exp(a), np.exp(b)).statistic == forward

    def test_critical_value(self):
        report = mp.two_sample_ks([0.0] * 100, [1.0] * 100)

        assert report.critical_value == pytest.approx(1.358 * math.sqrt(200 / 10000))
        assert report.rejected

    @pytest.mark.parametrize(["a", "b"], [[[], [1.0]], [[1.0], []]])
    def test_exception(self, a, b):
        with pytest.raises(mp.EmptyBatchError):
            mp.two_sample_ks(a, b)


class Test_summary:
    def test_constant(self):
        result = mp.summary([2.0, 2.0, 2.0, 2.0])

        assert result.variance == 0
        assert math.isnan(result.skewness)
        assert result.quantiles[0.5] == 2.0

    def test_pair(self):
        result = mp.summary([-1.0, 1.0])

        assert result.mean == 0
        assert result.variance == 2
        assert result.quantiles[0.25] == pytest.approx(-0.5)

    def test_batch(self):
        batch = mp.SampleBatch([3.0, 1.0, 2.0], 1, seed=0, fingerprint="x")
        result = mp.summary(batch)

        assert result.count == 3
        assert result.mean == 2
        assert result.skewness == pytest.approx(0.0)
        assert result.mean_stderr == pytest.approx(math.sqrt(1 / 3))

    @pytest.mark.parametrize(["value"], [[[]], [[1.0]]])
    def test_exception(self, value):
        with pytest.raises(mp.InsufficientSamples):
            mp.summary(value)
