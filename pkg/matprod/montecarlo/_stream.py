import numpy as np


_SEED_MASK = (1 << 64) - 1


def make_rng(seed, trial_index):
    """
    Dedicated generator of one trial, derived from ``(seed, trial_index)`` only.

    :rtype: numpy.random.Generator
    """

    if trial_index < 0:
        raise ValueError(f"trial index must be nonnegative: actual={trial_index}")

    sequence = np.random.SeedSequence([seed & _SEED_MASK, trial_index])

    return np.random.Generator(np.random.PCG64(sequence))


def split_chunks(first_trial, trials, chunk_size):
    """
    :return: ``(start, stop)`` trial-index ranges covering
        ``[first_trial, first_trial + trials)`` in order.
    """

    stop = first_trial + trials

    return [
        (start, min(start + chunk_size, stop)) for start in range(first_trial, stop, chunk_size)
    ]
