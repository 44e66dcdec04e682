"""
Statistical primitives shared by the experiments: the normal CDF,
one- and two-sample Kolmogorov-Smirnov statistics and batch summaries.
"""

import math
from typing import NamedTuple, Tuple

import numpy as np
import scipy.special
import scipy.stats

from .._constant import Default
from ..error import EmptyBatchError, InsufficientSamplesError, ValidationError


DEFAULT_QUANTILE_LEVELS = (0.05, 0.25, 0.5, 0.75, 0.95)


class KSReport(NamedTuple):
    """
    ``critical_value`` is the asymptotic 5% critical value of the applicable test.
    """

    statistic: float
    sizes: Tuple[int, ...]
    reference: str
    critical_value: float

    @property
    def rejected(self):
        return self.statistic > self.critical_value


class Summary(NamedTuple):
    count: int
    mean: float
    variance: float
    skewness: float
    quantiles: dict

    @property
    def mean_stderr(self):
        return math.sqrt(self.variance / self.count)


def _as_samples(batch):
    samples = getattr(batch, "samples", batch)

    return np.sort(np.asarray(samples, dtype=np.float64).ravel())


def normal_cdf(t, mean=0.0, variance=1.0):
    """
    Phi((t - mean) / sqrt(variance)), evaluated with :py:func:`scipy.special.ndtr`.

    :raises matprod.ValidationError: If ``variance`` is not positive.
    """

    if not variance > 0:
        raise ValidationError(f"variance must be positive: actual={variance}")

    value = scipy.special.ndtr((np.asarray(t, dtype=np.float64) - mean) / math.sqrt(variance))
    if np.ndim(value) == 0:
        return float(value)

    return value


def one_sample_ks(samples, cdf):
    """
    sup_t |F_N(t) - cdf(t)| using both one-sided limits of the empirical CDF
    at every sample point.

    :raises matprod.EmptyBatchError: If there are no samples.
    """

    samples = _as_samples(samples)
    count = len(samples)
    if count == 0:
        raise EmptyBatchError("KS statistic of an empty sample")

    reference = np.asarray(cdf(samples), dtype=np.float64)
    ranks = np.arange(1, count + 1, dtype=np.float64)
    above = np.max(ranks / count - reference)
    below = np.max(reference - (ranks - 1.0) / count)

    return float(min(1.0, max(above, below, 0.0)))


def one_sample_ks_report(samples, mean, variance):
    """
    :rtype: KSReport
    """

    statistic = one_sample_ks(samples, lambda t: normal_cdf(t, mean, variance))
    count = len(_as_samples(samples))

    return KSReport(
        statistic,
        (count,),
        f"Normal(mean={mean!r}, variance={variance!r})",
        Default.KS_C_ALPHA / math.sqrt(count),
    )


def two_sample_ks(a, b):
    """
    sup_t |F_a(t) - F_b(t)| over the merged support, with the critical value
    c(0.05) sqrt((m + n) / (m n)).

    :rtype: KSReport
    :raises matprod.EmptyBatchError: If either sample is empty.
    """

    a = _as_samples(a)
    b = _as_samples(b)
    m, n = len(a), len(b)
    if m == 0 or n == 0:
        raise EmptyBatchError(f"two-sample KS requires nonempty samples: sizes=({m}, {n})")

    merged = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, merged, side="right") / m
    cdf_b = np.searchsorted(b, merged, side="right") / n

    return KSReport(
        float(np.max(np.abs(cdf_a - cdf_b))),
        (m, n),
        "two-sample",
        Default.KS_C_ALPHA * math.sqrt((m + n) / (m * n)),
    )


def summary(batch, levels=DEFAULT_QUANTILE_LEVELS):
    """
    Unbiased mean, variance and skewness of the log-norm samples (zero-norm
    events excluded) plus linearly interpolated quantiles.

    :rtype: Summary
    :raises matprod.InsufficientSamplesError: If there are fewer than two samples.
    """

    samples = _as_samples(batch)
    count = len(samples)
    if count < 2:
        raise InsufficientSamplesError(f"summary requires at least 2 samples: actual={count}")

    variance = float(np.var(samples, ddof=1))
    skewness = math.nan
    if count > 2 and variance > 0:
        skewness = float(scipy.stats.skew(samples, bias=False))

    quantiles = {
        level: float(value)
        for level, value in zip(levels, np.quantile(samples, levels, method="linear"))
    }

    return Summary(count, float(np.mean(samples)), variance, skewness, quantiles)
