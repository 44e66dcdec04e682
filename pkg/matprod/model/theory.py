"""
Closed-form quantities of the masked product ensemble:
the variance parameter beta, per-layer variances, the probability of
a zero-norm event and the raw magnitudes of the KS error terms.
"""

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.special import digamma

from .._constant import Default
from .._logger import logger


class BetaParams(NamedTuple):
    """
    beta = term_width + term_fourth, where
    term_width = (3/p - 1) sum_{i=1}^d 1/n_i and
    term_fourth = (mu_4 - 3) / (p n_1) ||u||_4^4.
    """

    beta: float
    term_width: float
    term_fourth: float

    @property
    def mean(self):
        """
        Mean -beta/2 of the limiting Gaussian of ln Z_d(u).
        """

        return -self.beta / 2.0

    @property
    def variance(self):
        return self.beta


class ZeroEventProbability(NamedTuple):
    probability: float
    is_lower_bound: bool


class ErrorBudget(NamedTuple):
    """
    Raw magnitudes of the KS error terms; absolute constants are not applied.
    ``beta``-dependent terms are ``inf`` when beta is zero.
    """

    beta: float
    sum_inv_sq: float
    beta_scaled: float
    fifth_root_term: float
    sqrt_term: float
    mask_term: float
    mask_term_printed: float
    power_term: float
    power: int


def compute_beta(config, u):
    """
    :param matprod.EnsembleConfig config: Ensemble configuration.
    :param matprod.UnitVector u: Initial unit vector in R^{n_0}.
    :rtype: BetaParams
    :raises matprod.DimensionMismatchError: If dim(u) != n_0.
    """

    u.check_dim(config.architecture.input_width)

    p = config.p_exact
    hidden = config.architecture.hidden_widths
    term_width = (3 / p - 1) * sum(Fraction(1, n) for n in hidden)
    term_fourth = (config.entry_law.mu4 - 3) / (p * hidden[0]) * u.norm4_4

    term_width = float(term_width)
    term_fourth = float(term_fourth)

    return BetaParams(term_width + term_fourth, term_width, term_fourth)


def predict_layer_variance(u_current, n_next, p, mu4):
    """
    Variance of ||(p n)^{-1/2} D W u||^2 / ||u||^2 for a fixed nonzero u:
    (3/p - 1)/n + (mu_4 - 3)/(p n) * ||u||_4^4 / ||u||_2^4.
    """

    coordinates = getattr(u_current, "coordinates", u_current)
    coordinates = np.asarray(coordinates, dtype=np.float64)

    norm2_sq = math.fsum(coordinates**2)
    if norm2_sq == 0:
        raise ValueError("u_current must be nonzero")

    ratio = math.fsum(coordinates**4) / norm2_sq**2
    p = float(p)

    return (3.0 / p - 1.0) / n_next + (float(mu4) - 3.0) / (p * n_next) * ratio


def zero_event_probability(config):
    """
    Probability 1 - prod_j (1 - (1-p)^{n_j}) that some mask D^(j) is
    identically zero. For atom-bearing entry laws other events can also
    annihilate the vector, so the value is only a lower bound there.

    :rtype: ZeroEventProbability
    """

    q = 1.0 - config.p
    log_survival = math.fsum(math.log1p(-(q**n)) for n in config.architecture.hidden_widths)
    probability = -math.expm1(log_survival)

    if not config.atomless:
        logger.debug(
            f"entry law {config.entry_law.name} has atoms: zero-event probability is a lower bound"
        )

    return ZeroEventProbability(probability, not config.atomless)


def error_budget(config, u, power=Default.ERROR_BUDGET_POWER):
    """
    :param int power: Exponent m of the sum_{i} n_i^{-m} term.
    :rtype: ErrorBudget
    """

    beta = compute_beta(config, u).beta
    hidden = config.architecture.hidden_widths
    sum_inv_sq = math.fsum(1.0 / n**2 for n in hidden)

    if beta > 0:
        beta_scaled = sum_inv_sq / beta
        fifth_root_term = (sum_inv_sq / beta**2) ** 0.2
        sqrt_term = (sum_inv_sq / math.sqrt(beta)) ** 0.5
    else:
        beta_scaled = fifth_root_term = sqrt_term = math.inf

    return ErrorBudget(
        beta=beta,
        sum_inv_sq=sum_inv_sq,
        beta_scaled=beta_scaled,
        fifth_root_term=fifth_root_term,
        sqrt_term=sqrt_term,
        mask_term=math.fsum((1.0 - config.p) ** n for n in hidden),
        mask_term_printed=math.fsum(config.p**n for n in hidden),
        power_term=math.fsum(float(n) ** -power for n in hidden),
        power=power,
    )


def gaussian_log_increment_mean(n):
    """
    E[ln(chi^2_n / n)] = psi(n/2) + ln(2/n): the per-layer drift of
    ln Z_d(u) for Gaussian entries with p = 1.
    """

    return float(digamma(n / 2.0) + math.log(2.0 / n))
