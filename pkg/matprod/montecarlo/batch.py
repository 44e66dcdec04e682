from typing import NamedTuple

import numpy as np

from ..error import ValidationError


class MomentEstimate(NamedTuple):
    k: int
    estimate: float
    stderr: float
    trials: int


class SampleBatch:
    """
    Sorted log-norm samples of one experiment together with the number of
    zero-norm events. Instances are immutable.
    """

    @property
    def samples(self):
        return self.__samples

    @property
    def zero_event_count(self):
        return self.__zero_event_count

    @property
    def trials(self):
        return self.__trials

    @property
    def seed(self):
        return self.__seed

    @property
    def fingerprint(self):
        return self.__fingerprint

    @property
    def sample_count(self):
        return len(self.__samples)

    @property
    def zero_event_rate(self):
        if self.__trials == 0:
            return 0.0

        return self.__zero_event_count / self.__trials

    def __init__(self, samples, zero_event_count, seed, fingerprint, trials=None):
        samples = np.sort(np.asarray(samples, dtype=np.float64).ravel())
        samples.setflags(write=False)

        if zero_event_count < 0:
            raise ValidationError(
                f"zero event count must be nonnegative: actual={zero_event_count}"
            )
        if trials is None:
            trials = len(samples) + zero_event_count
        if len(samples) + zero_event_count != trials:
            raise ValidationError(
                f"samples ({len(samples)}) + zero events ({zero_event_count}) != trials ({trials})"
            )

        self.__samples = samples
        self.__zero_event_count = int(zero_event_count)
        self.__trials = int(trials)
        self.__seed = seed
        self.__fingerprint = fingerprint

    def merge(self, other):
        """
        Union of two batches of the same experiment.
        """

        if self.__fingerprint != other.fingerprint:
            raise ValidationError(
                f"cannot merge batches of different experiments: "
                f"{self.__fingerprint} != {other.fingerprint}"
            )

        return SampleBatch(
            np.concatenate([self.__samples, other.samples]),
            self.__zero_event_count + other.zero_event_count,
            seed=self.__seed,
            fingerprint=self.__fingerprint,
        )

    def __eq__(self, other):
        if not isinstance(other, SampleBatch):
            return NotImplemented

        return (
            self.__zero_event_count == other.zero_event_count
            and self.__fingerprint == other.fingerprint
            and np.array_equal(self.__samples, other.samples)
        )

    def __len__(self):
        return self.__trials

    def __repr__(self):
        return (
            f"SampleBatch(trials={self.__trials}, zero_events={self.__zero_event_count}, "
            f"seed={self.__seed}, fingerprint={self.__fingerprint})"
        )
