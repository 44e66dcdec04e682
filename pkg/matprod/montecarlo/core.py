"""
Reproducible Monte Carlo sampling of log-norms.

Every trial draws from its own generator seeded by ``(seed, trial_index)``,
so a batch does not depend on chunking, worker count or scheduling.
Chunks are dispatched to a :py:class:`~concurrent.futures.ProcessPoolExecutor`
and reduced in submission order.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple, Optional

import numpy as np

from .._common import get_max_workers
from .._constant import Default, DistKind
from .._logger import TrialLogger, logger
from .._validator import TrialsValidator
from ..error import InsufficientSamplesError, ValidationError
from ..interface import LogNormSamplerInterface
from ..model import (
    Architecture,
    EnsembleConfig,
    ProductSampler,
    UnitVector,
    gaussian_log_increment_mean,
    make_fingerprint,
)
from ..stats import normal_cdf, one_sample_ks
from ._stream import make_rng, split_chunks
from .batch import MomentEstimate, SampleBatch


class IncrementEstimate(NamedTuple):
    """
    Mean per-layer log-increment ln(||u^(i)||^2 / ||u^(i-1)||^2).
    ``reference`` is psi(n/2) + ln(2/n) for Gaussian entries with p = 1.
    """

    width: int
    mean: float
    stderr: float
    trials: int
    zero_event_count: int
    reference: Optional[float]


class ChiSquareProductSampler(LogNormSamplerInterface):
    """
    Samples sum_i ln(chi^2_{n_i} / n_i), the exact law of ln Z_d(u) for
    Gaussian entries with p = 1.
    """

    @property
    def job_name(self):
        return "chi_square_product"

    @property
    def widths(self):
        return self.__widths

    def __init__(self, widths):
        widths = tuple(widths)
        for n in widths:
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ValidationError(f"degrees of freedom must be positive integers: actual={n!r}")

        self.__widths = widths

    def fingerprint(self):
        return make_fingerprint(self.job_name, self.__widths)

    def sample(self, rng):
        total = 0.0
        for n in self.__widths:
            total += math.log(self._chi_square(rng, n) / n)

        return total

    @staticmethod
    def _chi_square(rng, n):
        if n <= Default.CHI2_DIRECT_MAX_DOF:
            normals = rng.standard_normal(n)
            return float(normals @ normals)

        return 2.0 * float(rng.standard_gamma(n / 2.0))


class _TrialJob(NamedTuple):
    job_name: str
    trials: int
    seed: int
    widths: tuple
    max_workers: int


def _run_chunk(sampler, seed, start, stop):
    samples = []
    zero_event_count = 0
    for trial_index in range(start, stop):
        value = sampler.sample(make_rng(seed, trial_index))
        if value is None:
            zero_event_count += 1
        else:
            samples.append(value)

    return samples, zero_event_count


def run_trials(
    sampler, u=None, trials=Default.TRIALS, seed=Default.SEED, first_trial=0, max_workers=None
):
    """
    Draw ``trials`` independent log-norm samples.

    :param sampler:
        A :py:class:`~matprod.interface.LogNormSamplerInterface` instance,
        or an :py:class:`~matprod.EnsembleConfig` together with ``u``.
    :param int first_trial:
        Index of the first trial stream. Batches over disjoint index ranges
        merge into the batch over their union.
    :param int max_workers:
        Worker process cap. Defaults to ``MATPROD_THREADS`` or the machine parallelism.
    :rtype: SampleBatch
    """

    if isinstance(sampler, EnsembleConfig):
        sampler = ProductSampler(sampler, u)
    TrialsValidator(trials).validate()
    if first_trial < 0:
        raise ValidationError(f"first trial index must be nonnegative: actual={first_trial}")

    if max_workers is None:
        max_workers = get_max_workers()

    chunks = split_chunks(first_trial, trials, Default.TRIAL_CHUNK_SIZE)
    job = _TrialJob(
        sampler.job_name, trials, seed, tuple(getattr(sampler, "widths", ())), max_workers
    )
    trial_logger = TrialLogger(job)
    trial_logger.logging_start()

    if max_workers <= 1 or len(chunks) <= 1:
        results = [_run_chunk(sampler, seed, start, stop) for start, stop in chunks]
    else:
        with ProcessPoolExecutor(max_workers=min(max_workers, len(chunks))) as executor:
            futures = [
                executor.submit(_run_chunk, sampler, seed, start, stop) for start, stop in chunks
            ]
            results = [future.result() for future in futures]

    samples = [value for chunk_samples, _ in results for value in chunk_samples]
    zero_event_count = sum(count for _, count in results)

    batch = SampleBatch(
        samples, zero_event_count, seed=seed, fingerprint=sampler.fingerprint(), trials=trials
    )
    trial_logger.logging_result(batch)

    return batch


def empirical_moment(batch, k):
    """
    Mean of exp(k L) over the batch, zero-norm events contributing 0,
    with the standard error from the sample variance.

    :rtype: MomentEstimate
    :raises matprod.InsufficientSamplesError: If the batch has fewer than two trials.
    """

    trials = batch.trials
    if trials < 2:
        raise InsufficientSamplesError(
            f"empirical moment requires at least 2 trials: actual={trials}"
        )

    values = np.concatenate([np.exp(k * batch.samples), np.zeros(batch.zero_event_count)])
    stderr = math.sqrt(float(np.var(values, ddof=1)) / trials)

    return MomentEstimate(k, float(np.mean(values)), stderr, trials)


def ks_to_gaussian(batch, mean, variance):
    """
    KS distance between the log-norm samples (zero-norm events excluded)
    and Normal(mean, variance).

    :raises matprod.EmptyBatchError: If the batch holds no log-norm samples.
    """

    samples = getattr(batch, "samples", batch)

    return one_sample_ks(samples, lambda t: normal_cdf(t, mean, variance))


def chi_square_product_sampler(widths, trials, seed, first_trial=0, max_workers=None):
    """
    :rtype: SampleBatch
    """

    return run_trials(
        ChiSquareProductSampler(widths),
        trials=trials,
        seed=seed,
        first_trial=first_trial,
        max_workers=max_workers,
    )


def lyapunov_increment(n, p, law, trials, seed, max_workers=None):
    """
    Estimate the mean log-increment of a single n x n masked layer applied to
    the uniform unit vector. Over d layers of constant width this mean is the
    per-layer rate of ln Z_d(u).

    :rtype: IncrementEstimate
    """

    config = EnsembleConfig(Architecture([n, n]), p, law)
    batch = run_trials(config, UnitVector.uniform(n), trials, seed, max_workers=max_workers)

    mean = math.nan
    stderr = math.nan
    if batch.sample_count >= 2:
        mean = float(np.mean(batch.samples))
        stderr = math.sqrt(float(np.var(batch.samples, ddof=1)) / batch.sample_count)

    reference = None
    if law.kind == DistKind.STANDARD_GAUSSIAN and config.p == 1:
        reference = gaussian_log_increment_mean(n)

    logger.debug(f"lyapunov_increment: n={n}, p={p}, mean={mean}, reference={reference}")

    return IncrementEstimate(n, mean, stderr, batch.trials, batch.zero_event_count, reference)
