import math
from fractions import Fraction

import numpy as np
import pytest

import matprod as mp
from matprod.relu import (
    ReluJacobianSampler,
    ReluNetwork,
    default_input,
    jacobian,
    open_neuron_fractions,
    relu,
)

from ._common import GAUSSIAN, RADEMACHER, UNIFORM


def scalar_net(w, b):
    return ReluNetwork([np.array([[w]])], [np.array([b])])


class Test_relu:
    @pytest.mark.parametrize(
        ["value", "expected"], [[[-1.0, 2.0], [0.0, 2.0]], [[0.0], [0.0]], [[-3], [0.0]]]
    )
    def test_normal(self, value, expected):
        assert relu(value).tolist() == expected


class Test_ReluNetConfig:
    def test_normal(self):
        net_config = mp.ReluNetConfig([3, 5, 2], GAUSSIAN)

        assert net_config.depth == 2
        assert net_config.bias_law is GAUSSIAN
        assert net_config.product_config().p_exact == Fraction(1, 2)

    def test_exception_atomic(self):
        with pytest.raises(mp.AtomicDistributionError):
            mp.ReluNetConfig([3, 3], RADEMACHER)

    @pytest.mark.parametrize(["value"], [[0], [-1.0]])
    def test_exception_bias_scale(self, value):
        with pytest.raises(mp.ValidationError):
            mp.ReluNetConfig([3, 3], GAUSSIAN, bias_scale=value)


class Test_forward:
    def test_normal(self):
        net = ReluNetwork(
            [np.array([[1.0, -1.0], [2.0, 0.0]]), np.array([[1.0, 1.0]])],
            [np.array([0.0, -1.0]), np.array([0.5])],
        )
        trace = mp.forward(net, [1.0, 2.0])

        assert trace.preactivations[0].tolist() == [-1.0, 1.0]
        assert trace.activations[0].tolist() == [0.0, 1.0]
        assert trace.activations[1].tolist() == [1.5]
        assert [mask.tolist() for mask in trace.open_masks] == [[False, True], [True]]

    def test_exception(self):
        with pytest.raises(mp.DimensionMismatchError):
            mp.forward(scalar_net(1.0, 0.0), [1.0, 1.0])


class Test_jacobian_log_norm:
    @pytest.mark.parametrize(["w", "b", "x"], [[2.0, 0.5, 1.0], [-0.5, 1.0, 1.0], [3.0, -1.0, 1.0]])
    def test_scalar_open(self, w, b, x):
        assert mp.jacobian_log_norm(scalar_net(w, b), [x], [1.0]) == pytest.approx(
            math.log(w * w)
        )

    def test_scalar_dead(self):
        assert mp.jacobian_log_norm(scalar_net(1.0, -2.0), [1.0], [1.0]) is None

    def test_zero_preactivation_is_closed(self):
        assert mp.jacobian_log_norm(scalar_net(1.0, -1.0), [1.0], [1.0]) is None

    def test_exception(self):
        with pytest.raises(mp.ValidationError):
            mp.jacobian_log_norm(scalar_net(1.0, 1.0), [0.0], [1.0])
        with pytest.raises(mp.DimensionMismatchError):
            mp.jacobian_log_norm(scalar_net(1.0, 1.0), [1.0], [1.0, 0.0])

    def test_matches_finite_difference(self):
        eps = 1e-6
        checked = 0
        for trial_index in range(50):
            rng = mp.make_rng(2024, trial_index)
            depth = int(rng.integers(1, 4))
            widths = [int(n) for n in rng.integers(1, 9, size=depth + 1)]
            net_config = mp.ReluNetConfig(widths, GAUSSIAN)
            net = ReluNetwork.sample(net_config, rng)
            x = rng.standard_normal(widths[0])
            u = rng.standard_normal(widths[0])
            u /= np.linalg.norm(u)

            trace = mp.forward(net, x)
            if any(np.any(np.abs(act) < 1e-4) for act in trace.preactivations):
                continue

            directional = jacobian(net, x).matrix @ u
            shifted = mp.forward(net, x + eps * u)
            difference = (shifted.activations[-1] - trace.activations[-1]) / eps
            assert np.linalg.norm(difference - directional) <= 1e-5

            log_norm = mp.jacobian_log_norm(net, x, u)
            sq_norm = float(directional @ directional)
            if sq_norm == 0.0:
                assert log_norm is None
            else:
                assert log_norm == pytest.approx(
                    math.log(widths[0] / widths[-1] * sq_norm), rel=1e-9, abs=1e-9
                )
            checked += 1

        assert checked >= 40


class Test_evgp_beta:
    def test_gaussian(self):
        net_config = mp.ReluNetConfig([64] * 17, GAUSSIAN)

        assert mp.evgp_beta(net_config, mp.UnitVector.e1(64)).beta == pytest.approx(1.25)

    def test_fourth_moment_term(self):
        net_config = mp.ReluNetConfig([10, 10], UNIFORM)

        assert mp.evgp_beta(net_config, mp.UnitVector.e1(10)).term_fourth == pytest.approx(-0.24)


class Test_evgp_ks:
    def test_normal(self):
        net_config = mp.ReluNetConfig([4, 8, 8], GAUSSIAN)
        report = mp.evgp_ks(net_config, default_input(4), mp.UnitVector.e1(4), 300, seed=1)

        assert report.batch.trials == 300
        assert report.ks.sizes == (report.batch.sample_count,)
        assert 0.0 <= report.ks.statistic <= 1.0


class Test_compare_jacobian_vs_product:
    def test_control(self):
        net_config = mp.ReluNetConfig([4, 6, 6], GAUSSIAN)
        result = mp.compare_jacobian_vs_product(
            net_config, default_input(4), mp.UnitVector.e1(4), 200, seed=3, control=True
        )

        assert result.ks.statistic == 0.0
        assert result.jacobian_batch == result.product_batch

    def test_normal(self):
        net_config = mp.ReluNetConfig([4, 6, 6], GAUSSIAN)
        result = mp.compare_jacobian_vs_product(
            net_config, default_input(4), mp.UnitVector.uniform(4), 200, seed=3
        )

        assert result.jacobian_batch.trials == 200
        assert result.product_batch.trials == 200
        assert result.product_batch.seed == 4

    def test_exception(self):
        net_config = mp.ReluNetConfig([4, 4], GAUSSIAN)

        with pytest.raises(mp.ValidationError):
            mp.compare_jacobian_vs_product(
                net_config, default_input(4), mp.UnitVector.e1(4), 99, seed=0
            )


class Test_open_neuron_fractions:
    @pytest.mark.parametrize(["law"], [[GAUSSIAN], [UNIFORM]])
    def test_normal(self, law):
        trials = 10**4
        widths = [4, 8, 8]
        net_config = mp.ReluNetConfig(widths, law)
        fractions = open_neuron_fractions(net_config, default_input(4), trials, seed=0)

        assert len(fractions) == 2
        for fraction, n in zip(fractions, widths[1:]):
            # open indicators are independent fair coins given the previous layer
            assert abs(fraction - 0.5) <= 5 * math.sqrt(0.25 / (trials * n))


@pytest.mark.slow
class Test_jacobian_log_norm_input_invariance:
    def test_normal(self):
        trials = 2 * 10**4
        net_config = mp.ReluNetConfig([8, 16, 16, 16], GAUSSIAN)
        u = mp.UnitVector.uniform(8)

        unit_input = mp.run_trials(
            ReluJacobianSampler(net_config, mp.UnitVector.e1(8), u), trials=trials, seed=21
        )
        flat_input = mp.run_trials(
            ReluJacobianSampler(net_config, default_input(8), u), trials=trials, seed=22
        )

        assert mp.two_sample_ks(unit_input, flat_input).statistic <= 0.02
