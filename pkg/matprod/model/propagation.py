"""
Layer-by-layer propagation of a unit vector through the masked product.

The vector is renormalized after every layer and the log of each squared
norm ratio is accumulated, so ln Z_d(u) is a telescoping sum and the full
product matrix is never formed.
"""

import math
from typing import NamedTuple

import numpy as np

from ..interface import LogNormSamplerInterface
from .config import make_fingerprint


class LayerState(NamedTuple):
    """
    ``vector`` is the normalized current vector, ``log_norm`` the
    accumulated L_i = ln ||u^(i)||^2 and ``is_zero`` marks a zero-norm event.
    """

    vector: np.ndarray
    log_norm: float
    index: int
    is_zero: bool

    @classmethod
    def initial(cls, u):
        return cls(np.array(u.coordinates, dtype=np.float64), 0.0, 0, False)


def sample_layer(config, i, rng):
    """
    Draw the mask diagonal and the weight matrix of layer ``i``.
    Masks are drawn before weights; the weights are filled row-major.
    With p = 1 no mask is drawn.

    :return: ``(mask, weights)`` where ``mask`` is ``None`` when p = 1.
    """

    widths = config.widths
    n_prev, n_next = widths[i - 1], widths[i]

    mask = None
    if config.p < 1:
        mask = rng.random(n_next) < config.p

    weights = config.entry_law.sample(rng, (n_next, n_prev))

    return mask, weights


def propagate_layer(state, i, config, rng):
    """
    Apply u^(i) = (p n_i)^{-1/2} D^(i) W^(i) u^(i-1) to the normalized state.

    :rtype: LayerState
    """

    if state.is_zero:
        raise ValueError("cannot propagate a zero-norm state")
    if not (1 <= i <= config.depth):
        raise ValueError(f"layer index must be in [1, {config.depth}]: actual={i}")

    mask, weights = sample_layer(config, i, rng)

    raw = weights @ state.vector
    if mask is not None:
        raw = np.where(mask, raw, 0.0)

    sq_norm = float(raw @ raw)
    if sq_norm == 0.0:
        return LayerState(state.vector, state.log_norm, i, True)

    increment = math.log(sq_norm / (config.p * config.widths[i]))

    return LayerState(raw / math.sqrt(sq_norm), state.log_norm + increment, i, False)


def sample_log_norm(config, u, rng):
    """
    One realization of ln Z_d(u) = ln((n_0/n_d) ||M^(d) u||^2).

    :return: The log-norm, or ``None`` for a zero-norm event.
    """

    state = LayerState.initial(u)
    for i in range(1, config.depth + 1):
        state = propagate_layer(state, i, config, rng)
        if state.is_zero:
            return None

    return state.log_norm


def direct_log_norm(config, u, rng):
    """
    ln Z_d(u) computed from the explicit product matrix with the same
    draws as :py:func:`sample_log_norm`. Only meant for small instances.
    """

    widths = config.widths
    product = np.eye(widths[0])
    for i in range(1, config.depth + 1):
        mask, weights = sample_layer(config, i, rng)
        if mask is not None:
            weights = weights * mask[:, np.newaxis]
        product = (weights / math.sqrt(config.p * widths[i - 1])) @ product

    vector = product @ u.coordinates
    sq_norm = float(vector @ vector)
    if sq_norm == 0.0:
        return None

    return math.log(widths[0] / widths[-1] * sq_norm)


class ProductSampler(LogNormSamplerInterface):
    """
    Per-trial sampler of ln Z_d(u) for the masked product ensemble.
    """

    @property
    def job_name(self):
        return "product"

    @property
    def config(self):
        return self.__config

    @property
    def u(self):
        return self.__u

    @property
    def widths(self):
        return self.__config.widths

    def __init__(self, config, u):
        u.check_dim(config.architecture.input_width)

        self.__config = config
        self.__u = u

    def fingerprint(self):
        return make_fingerprint(self.job_name, repr(self.__config), repr(self.__u))

    def sample(self, rng):
        return sample_log_norm(self.__config, self.__u, rng)
