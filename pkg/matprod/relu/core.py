"""
Randomly initialized fully connected ReLU networks and their input-output
Jacobians.

Layer j computes act^(j) = W^(j) Act^(j-1) + B^(j) and Act^(j) = ReLU(act^(j)),
with W^(j) entries drawn from the weight law and scaled by sqrt(2 / n_{j-1}).
The Jacobian is Jac = prod_j Diag(1{act^(j) > 0}) W^(j); a preactivation that
is exactly zero counts as closed.
"""

import math
from fractions import Fraction
from typing import List, NamedTuple, Optional

import numpy as np

from .._constant import Default
from .._logger import logger
from ..error import AtomicDistributionError, DimensionMismatchError, ValidationError
from ..interface import LogNormSamplerInterface
from ..model import Architecture, EnsembleConfig, ProductSampler, compute_beta, make_fingerprint
from ..montecarlo import SampleBatch, make_rng, run_trials
from ..stats import KSReport, one_sample_ks_report, two_sample_ks


MIN_COMPARISON_TRIALS = 100


class ReluNetConfig:
    """
    :param weight_law: Atomless entry law of the weight matrices.
    :param bias_law: Law of the bias entries. Defaults to the weight law.
    :param float bias_scale: Standard deviation scale sigma_b of the biases.
    :raises matprod.AtomicDistributionError: If the weight law has atoms.
    """

    @property
    def architecture(self):
        return self.__architecture

    @property
    def widths(self):
        return self.__architecture.widths

    @property
    def depth(self):
        return self.__architecture.depth

    @property
    def weight_law(self):
        return self.__weight_law

    @property
    def bias_law(self):
        return self.__bias_law

    @property
    def bias_scale(self):
        return self.__bias_scale

    @property
    def seed(self):
        return self.__seed

    def __init__(
        self,
        architecture,
        weight_law,
        bias_law=None,
        bias_scale=Default.BIAS_SCALE,
        seed=Default.SEED,
    ):
        if not isinstance(architecture, Architecture):
            architecture = Architecture(architecture)

        if not weight_law.atomless:
            raise AtomicDistributionError(
                f"ReLU weight law must be atomless: actual={weight_law.name}"
            )
        if not bias_scale > 0:
            raise ValidationError(f"bias scale must be positive: actual={bias_scale}")

        self.__architecture = architecture
        self.__weight_law = weight_law.validate()
        self.__bias_law = (bias_law or weight_law).validate()
        self.__bias_scale = float(bias_scale)
        self.__seed = seed

    def product_config(self, p=Fraction(1, 2)):
        """
        The masked product ensemble with the same widths and entry law.
        """

        return EnsembleConfig(self.__architecture, p, self.__weight_law)

    def fingerprint(self):
        return make_fingerprint(
            "relu", self.__architecture, self.__weight_law, self.__bias_law, self.__bias_scale
        )

    def __repr__(self):
        return (
            f"ReluNetConfig(widths={list(self.widths)}, weight_law={self.__weight_law!r}, "
            f"bias_law={self.__bias_law!r}, bias_scale={self.__bias_scale})"
        )


class ReluNetwork(NamedTuple):
    """
    One draw of the network parameters. ``weights[j - 1]`` is the already
    scaled n_j x n_{j-1} matrix W^(j).
    """

    weights: List[np.ndarray]
    biases: List[np.ndarray]

    @property
    def widths(self):
        return (self.weights[0].shape[1],) + tuple(w.shape[0] for w in self.weights)

    @classmethod
    def sample(cls, net_config, rng):
        """
        Draw W^(j) then B^(j) for j = 1..d from ``rng``.
        """

        weights = []
        biases = []
        widths = net_config.widths
        for n_prev, n_next in zip(widths, widths[1:]):
            scale = math.sqrt(2.0 / n_prev)
            weights.append(net_config.weight_law.sample(rng, (n_next, n_prev)) * scale)
            biases.append(net_config.bias_law.sample(rng, n_next) * net_config.bias_scale)

        return cls(weights, biases)


class ForwardTrace(NamedTuple):
    inputs: np.ndarray
    preactivations: List[np.ndarray]
    activations: List[np.ndarray]

    @property
    def open_masks(self):
        return [act > 0 for act in self.preactivations]


class JacobianResult(NamedTuple):
    matrix: np.ndarray
    open_counts: List[int]


def relu(values):
    return np.maximum(np.asarray(values, dtype=np.float64), 0.0)


def default_input(n):
    """
    The all-ones vector scaled to unit norm.
    """

    return np.full(n, 1.0 / math.sqrt(n))


def _check_vector(vector, dim, label):
    vector = np.asarray(getattr(vector, "coordinates", vector), dtype=np.float64)
    if vector.shape != (dim,):
        raise DimensionMismatchError(f"dim({label}) must be {dim}: actual={vector.shape}")

    return vector


def forward(net, x):
    """
    :rtype: ForwardTrace
    :raises matprod.DimensionMismatchError: If dim(x) != n_0.
    """

    x = _check_vector(x, net.widths[0], "x")

    preactivations = []
    activations = []
    current = x
    for weights, biases in zip(net.weights, net.biases):
        act = weights @ current + biases
        current = relu(act)
        preactivations.append(act)
        activations.append(current)

    return ForwardTrace(x, preactivations, activations)


def jacobian(net, x):
    """
    Dense Jacobian of the network output at ``x``; intended for tiny networks.

    :rtype: JacobianResult
    """

    trace = forward(net, x)

    matrix = np.eye(net.widths[0])
    open_counts = []
    for weights, is_open in zip(net.weights, trace.open_masks):
        matrix = (weights * is_open[:, np.newaxis]) @ matrix
        open_counts.append(int(np.count_nonzero(is_open)))

    return JacobianResult(matrix, open_counts)


def jacobian_log_norm(net, x, u):
    """
    ln((n_0 / n_d) ||Jac u||^2) by vector propagation of u through the
    chain rule, renormalizing after every layer.

    :return: The log-norm, or ``None`` when some layer annihilates the vector.
    :raises matprod.DimensionMismatchError: If dim(x) or dim(u) != n_0.
    """

    widths = net.widths
    u = _check_vector(u, widths[0], "u")
    trace = forward(net, x)
    if not np.any(trace.inputs):
        raise ValidationError("input x must be nonzero")

    vector = u
    log_norm = 0.0
    for j, (weights, is_open) in enumerate(zip(net.weights, trace.open_masks), start=1):
        raw = np.where(is_open, weights @ vector, 0.0)
        sq_norm = float(raw @ raw)
        if sq_norm == 0.0:
            return None

        log_norm += math.log(sq_norm * widths[j - 1] / widths[j])
        vector = raw / math.sqrt(sq_norm)

    return log_norm


class ReluJacobianSampler(LogNormSamplerInterface):
    """
    Per-trial sampler: draws a fresh network and evaluates
    :py:func:`jacobian_log_norm` at the fixed input ``x``.
    """

    @property
    def job_name(self):
        return "relu_jacobian"

    @property
    def widths(self):
        return self.__net_config.widths

    def __init__(self, net_config, x, u):
        n_0 = net_config.widths[0]

        self.__net_config = net_config
        self.__x = _check_vector(x, n_0, "x")
        self.__u = _check_vector(u, n_0, "u")

    def fingerprint(self):
        return make_fingerprint(
            self.job_name, self.__net_config.fingerprint(), self.__x.tolist(), self.__u.tolist()
        )

    def sample(self, rng):
        return jacobian_log_norm(ReluNetwork.sample(self.__net_config, rng), self.__x, self.__u)


class EvgpReport(NamedTuple):
    beta: object
    batch: SampleBatch
    ks: KSReport


class JacobianComparison(NamedTuple):
    jacobian_batch: SampleBatch
    product_batch: SampleBatch
    ks: KSReport

    @property
    def jacobian_zero_events(self):
        return self.jacobian_batch.zero_event_count

    @property
    def product_zero_events(self):
        return self.product_batch.zero_event_count


def evgp_beta(net_config, u):
    """
    beta of the gradient norm: the masked-product beta at p = 1/2.

    :rtype: matprod.BetaParams
    """

    return compute_beta(net_config.product_config(Fraction(1, 2)), u)


def evgp_ks(net_config, x, u, trials, seed, max_workers=None):
    """
    KS distance of the Jacobian log-norms to Normal(-beta/2, beta).

    :rtype: EvgpReport
    """

    beta = evgp_beta(net_config, u)
    batch = run_trials(
        ReluJacobianSampler(net_config, x, u), trials=trials, seed=seed, max_workers=max_workers
    )
    ks = one_sample_ks_report(batch, beta.mean, beta.variance)

    return EvgpReport(beta, batch, ks)


def compare_jacobian_vs_product(
    net_config,
    x,
    u,
    trials,
    seed,
    product_p=Fraction(1, 2),
    product_seed: Optional[int] = None,
    control=False,
    max_workers=None,
):
    """
    Draw ``trials`` Jacobian log-norms and ``trials`` masked-product
    log-norms with the same widths and entry law, and compare them by the
    two-sample KS statistic.

    :param product_p: Mask probability on the product side.
    :param product_seed: Seed of the product side. Defaults to ``seed + 1``.
    :param bool control:
        Feed both sides through the product sampler with the same seed.
    :rtype: JacobianComparison
    """

    if trials < MIN_COMPARISON_TRIALS:
        raise ValidationError(
            f"comparison requires at least {MIN_COMPARISON_TRIALS} trials: actual={trials}"
        )

    product_sampler = ProductSampler(net_config.product_config(product_p), u)
    if control:
        jacobian_sampler = product_sampler
        product_seed = seed
    else:
        jacobian_sampler = ReluJacobianSampler(net_config, x, u)
        if product_seed is None:
            product_seed = seed + 1

    logger.debug(
        f"compare_jacobian_vs_product: widths={list(net_config.widths)}, "
        f"product_p={product_p}, control={control}"
    )

    jacobian_batch = run_trials(jacobian_sampler, trials=trials, seed=seed, max_workers=max_workers)
    product_batch = run_trials(
        product_sampler, trials=trials, seed=product_seed, max_workers=max_workers
    )

    return JacobianComparison(
        jacobian_batch, product_batch, two_sample_ks(jacobian_batch, product_batch)
    )


def open_neuron_fractions(net_config, x, trials, seed):
    """
    Average fraction of open neurons per layer over ``trials`` networks.

    :return: One fraction per layer.
    """

    totals = np.zeros(net_config.depth)
    for trial_index in range(trials):
        net = ReluNetwork.sample(net_config, make_rng(seed, trial_index))
        totals += jacobian(net, x).open_counts

    return (totals / (trials * np.asarray(net_config.widths[1:], dtype=np.float64))).tolist()
