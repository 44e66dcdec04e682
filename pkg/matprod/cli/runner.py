"""
Subcommand dispatch. Each runner produces one result table and, for
``--assert``, a pass/fail verdict of its acceptance-style check.
"""

import abc
import math
import sys
from fractions import Fraction
from typing import NamedTuple, Optional

from tabledata import TableData

from .._constant import DistKind, Subcommand
from .._logger import logger
from ..error import AtomicDistributionError, BudgetExceededError, UsageError, ValidationError
from ..model import (
    Architecture,
    EnsembleConfig,
    compute_beta,
    error_budget,
    zero_event_probability,
)
from ..montecarlo import (
    chi_square_product_sampler,
    empirical_moment,
    lyapunov_increment,
    run_trials,
)
from ..paths import brute_force_moment, exact_moment, product_moment_approximation, theory_moment
from ..relu import ReluNetConfig, compare_jacobian_vs_product, evgp_beta
from ..stats import DEFAULT_QUANTILE_LEVELS, one_sample_ks_report, summary, two_sample_ks
from .writer import make_table, write_table


BRUTE_FORCE_MAX_DEPTH = 3
BRUTE_FORCE_MAX_WIDTH = 4
BRUTE_FORCE_MAX_K = 2
STDERR_MULTIPLIER = 5
_REL_TOL = 1e-10


class RunResult(NamedTuple):
    exit_status: int
    table: TableData
    text: str


class SubcommandRunner(metaclass=abc.ABCMeta):
    """
    The abstract class of subcommand runners.
    """

    @abc.abstractproperty
    def table_name(self):  # pragma: no cover
        pass

    def __init__(self, config):
        self._config = config

    @abc.abstractmethod
    def run(self):  # pragma: no cover
        """
        :return: ``(table, passed)``.
        """

    def _ensemble(self):
        try:
            return self._config.ensemble_config()
        except ValidationError as e:
            raise UsageError(str(e), "--widths")

    def _unit_vector(self, dim=None):
        return self._config.unit_vector(dim)

    def _ks_passed(self, report):
        tolerance = self._config.tolerance
        if tolerance is None:
            tolerance = report.critical_value

        return report.statistic <= tolerance


def _summary_cells(batch):
    if batch.sample_count < 2:
        return [None, None, None] + [None] * len(DEFAULT_QUANTILE_LEVELS)

    result = summary(batch)

    return [result.mean, result.variance, result.skewness] + [
        result.quantiles[level] for level in DEFAULT_QUANTILE_LEVELS
    ]


_SUMMARY_HEADERS = ["mean", "variance", "skewness"] + [
    "q{:02d}".format(int(round(level * 100))) for level in DEFAULT_QUANTILE_LEVELS
]


def _moment_passed(estimate, expected):
    expected = float(expected)
    slack = STDERR_MULTIPLIER * estimate.stderr + 1e-12 * max(1.0, abs(expected))

    return abs(estimate.estimate - expected) <= slack


class BetaRunner(SubcommandRunner):
    @property
    def table_name(self):
        return Subcommand.BETA

    def run(self):
        config = self._ensemble()
        u = self._unit_vector()
        beta = compute_beta(config, u)
        budget = error_budget(config, u)
        zero = zero_event_probability(config)

        headers = [
            "beta",
            "term_width",
            "term_fourth",
            "sum_inv_sq",
            "beta_scaled",
            "fifth_root_term",
            "sqrt_term",
            "mask_term",
            "mask_term_printed",
            "power_term",
            "zero_event_probability",
            "zero_event_lower_bound",
        ]
        row = [
            beta.beta,
            beta.term_width,
            beta.term_fourth,
            budget.sum_inv_sq,
            budget.beta_scaled,
            budget.fifth_root_term,
            budget.sqrt_term,
            budget.mask_term,
            budget.mask_term_printed,
            budget.power_term,
            zero.probability,
            zero.is_lower_bound,
        ]

        return make_table(self.table_name, headers, [row]), True


class SimulateRunner(SubcommandRunner):
    @property
    def table_name(self):
        return Subcommand.SIMULATE

    def run(self):
        config = self._ensemble()
        u = self._unit_vector()
        beta = compute_beta(config, u)
        batch = run_trials(config, u, self._config.trials, self._config.seed)

        moment = None
        passed = True
        if batch.trials >= 2:
            moment = empirical_moment(batch, 1)
            passed = _moment_passed(moment, 1)

        headers = ["trials", "samples", "zero_events", "zero_event_rate"] + _SUMMARY_HEADERS
        headers += ["beta", "theory_mean", "theory_variance", "moment1", "moment1_stderr"]
        row = [batch.trials, batch.sample_count, batch.zero_event_count, batch.zero_event_rate]
        row += _summary_cells(batch)
        row += [
            beta.beta,
            beta.mean,
            beta.variance,
            moment.estimate if moment else None,
            moment.stderr if moment else None,
        ]

        return make_table(self.table_name, headers, [row]), passed


class MomentsRunner(SubcommandRunner):
    @property
    def table_name(self):
        return Subcommand.MOMENTS

    def run(self):
        config = self._ensemble()
        u = self._unit_vector()
        beta = compute_beta(config, u)
        batch = run_trials(config, u, self._config.trials, self._config.seed)

        headers = [
            "k",
            "exact",
            "brute_force",
            "monte_carlo",
            "mc_stderr",
            "theory",
            "theory_product",
            "beta",
            "zero_event_rate",
            "reason",
        ]
        rows = []
        passed = True
        for k in self._config.k:
            reasons = []
            exact = self.__exact(config, u, k, reasons)
            brute = self.__brute_force(config, u, k, reasons)

            estimate = None
            if batch.trials >= 2:
                estimate = empirical_moment(batch, k)
            else:
                reasons.append("monte_carlo: fewer than 2 trials")

            if exact is not None and brute is not None:
                passed &= self.__agree(exact, brute)
            if exact is not None and estimate is not None:
                passed &= _moment_passed(estimate, exact)

            rows.append(
                [
                    k,
                    exact,
                    brute,
                    estimate.estimate if estimate else None,
                    estimate.stderr if estimate else None,
                    theory_moment(beta, k),
                    product_moment_approximation(config, u, k),
                    beta.beta,
                    batch.zero_event_rate,
                    "; ".join(reasons),
                ]
            )

        return make_table(self.table_name, headers, rows), passed

    def __exact(self, config, u, k, reasons):
        try:
            return exact_moment(config, u, k, budget=self._config.budget)
        except BudgetExceededError as e:
            logger.warning(f"exact moment skipped: k={k}, cost={e.cost}, budget={e.budget}")
            reasons.append(f"exact: budget exceeded (cost={e.cost}, budget={e.budget})")
        except ValidationError as e:
            reasons.append(f"exact: {e}")

        return None

    @staticmethod
    def __brute_force(config, u, k, reasons):
        if (
            config.depth > BRUTE_FORCE_MAX_DEPTH
            or max(config.widths) > BRUTE_FORCE_MAX_WIDTH
            or k > BRUTE_FORCE_MAX_K
        ):
            reasons.append("brute_force: instance too large")
            return None

        try:
            return brute_force_moment(config, u, k)
        except BudgetExceededError as e:
            reasons.append(f"brute_force: budget exceeded (cost={e.cost}, budget={e.budget})")

        return None

    @staticmethod
    def __agree(lhs, rhs):
        if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
            return lhs == rhs

        return math.isclose(float(lhs), float(rhs), rel_tol=_REL_TOL)


class KsTestRunner(SubcommandRunner):
    @property
    def table_name(self):
        return Subcommand.KS_TEST

    def run(self):
        config = self._ensemble()
        u = self._unit_vector()
        beta = compute_beta(config, u)
        if not beta.beta > 0:
            raise UsageError(
                f"beta must be positive for a Gaussian reference: actual={beta.beta}", "--dist"
            )

        batch = run_trials(config, u, self._config.trials, self._config.seed)
        report = one_sample_ks_report(batch, beta.mean, beta.variance)

        headers = [
            "trials",
            "samples",
            "zero_events",
            "beta",
            "mean",
            "variance",
            "ks_statistic",
            "critical_value",
        ]
        row = [
            batch.trials,
            batch.sample_count,
            batch.zero_event_count,
            beta.beta,
            beta.mean,
            beta.variance,
            report.statistic,
            report.critical_value,
        ]

        return make_table(self.table_name, headers, [row]), self._ks_passed(report)


class Chi2CheckRunner(SubcommandRunner):
    @property
    def table_name(self):
        return Subcommand.CHI2_CHECK

    def run(self):
        config = self._ensemble()
        if config.p != 1:
            raise UsageError("chi-square check requires p = 1", "--p")
        if config.entry_law.kind != DistKind.STANDARD_GAUSSIAN:
            raise UsageError("chi-square check requires a Gaussian entry law", "--dist")

        u = self._unit_vector()
        trials = self._config.trials
        seed = self._config.seed
        product = run_trials(config, u, trials, seed)
        oracle = chi_square_product_sampler(config.architecture.hidden_widths, trials, seed + 1)
        report = two_sample_ks(product, oracle)

        headers = ["trials", "product_samples", "chi2_samples", "ks_statistic", "critical_value"]
        row = [
            trials,
            product.sample_count,
            oracle.sample_count,
            report.statistic,
            report.critical_value,
        ]

        return make_table(self.table_name, headers, [row]), self._ks_passed(report)


class JacobianCompareRunner(SubcommandRunner):
    @property
    def table_name(self):
        return Subcommand.JACOBIAN_COMPARE

    def run(self):
        try:
            net_config = ReluNetConfig(
                Architecture(self._config.widths),
                self._config.entry_law(),
                bias_scale=self._config.bias_scale,
                seed=self._config.seed,
            )
        except AtomicDistributionError as e:
            raise UsageError(str(e), "--dist")

        u = self._unit_vector()
        try:
            comparison = compare_jacobian_vs_product(
                net_config,
                self._config.input_vector(),
                u,
                self._config.trials,
                self._config.seed,
                product_p=self._config.product_p,
            )
        except ValidationError as e:
            raise UsageError(str(e), "--trials")

        beta = evgp_beta(net_config, u)
        evgp = one_sample_ks_report(comparison.jacobian_batch, beta.mean, beta.variance)

        headers = [
            "trials",
            "jacobian_zero_events",
            "product_zero_events",
            "product_p",
            "ks_statistic",
            "critical_value",
            "evgp_beta",
            "evgp_ks",
            "evgp_critical_value",
        ]
        row = [
            self._config.trials,
            comparison.jacobian_zero_events,
            comparison.product_zero_events,
            self._config.product_p,
            comparison.ks.statistic,
            comparison.ks.critical_value,
            beta.beta,
            evgp.statistic,
            evgp.critical_value,
        ]

        return make_table(self.table_name, headers, [row]), self._ks_passed(comparison.ks)


class ScalingRunner(SubcommandRunner):
    """
    Joint scaling n = round((3/p - 1) d / beta_target) for every depth d.
    """

    @property
    def table_name(self):
        return Subcommand.SCALING

    def run(self):
        law = self._config.entry_law()
        p = self._config.p
        trials = self._config.trials
        seed = self._config.seed

        headers = ["depth", "width", "beta", "trials", "zero_events"] + _SUMMARY_HEADERS
        headers += [
            "ks_statistic",
            "critical_value",
            "increment_mean",
            "increment_stderr",
            "increment_reference",
        ]
        rows = []
        passed = True
        for depth in self._config.depths:
            width = max(1, int(round(float((3 / p - 1) * depth) / self._config.beta_target)))
            config = EnsembleConfig(Architecture([width] * (depth + 1)), p, law)
            u = self._unit_vector(width)
            beta = compute_beta(config, u)
            batch = run_trials(config, u, trials, seed)
            increment = lyapunov_increment(width, p, law, trials, seed)

            ks = None
            if beta.beta > 0 and batch.sample_count > 0:
                ks = one_sample_ks_report(batch, beta.mean, beta.variance)
                passed &= self._ks_passed(ks)

            row = [depth, width, beta.beta, batch.trials, batch.zero_event_count]
            row += _summary_cells(batch)
            row += [
                ks.statistic if ks else None,
                ks.critical_value if ks else None,
                increment.mean,
                increment.stderr,
                increment.reference,
            ]
            rows.append(row)

        return make_table(self.table_name, headers, rows), passed


_RUNNERS = {
    Subcommand.BETA: BetaRunner,
    Subcommand.SIMULATE: SimulateRunner,
    Subcommand.MOMENTS: MomentsRunner,
    Subcommand.KS_TEST: KsTestRunner,
    Subcommand.CHI2_CHECK: Chi2CheckRunner,
    Subcommand.JACOBIAN_COMPARE: JacobianCompareRunner,
    Subcommand.SCALING: ScalingRunner,
}


def run(config, stream=None):
    """
    Execute the configured subcommand and emit its table.

    :return: Exit status 0, or 1 when ``--assert`` was given and the check failed.
    :rtype: RunResult
    :raises matprod.UsageError: On option combinations a subcommand rejects.
    """

    try:
        runner_class = _RUNNERS[config.subcommand]
    except KeyError:
        raise UsageError(f"unknown subcommand: {config.subcommand}", None)

    logger.debug(f"run: subcommand={config.subcommand}, fingerprint={config.fingerprint()}")

    table, passed = runner_class(config).run()
    text = write_table(table, config, sys.stdout if stream is None else stream)

    exit_status = 0
    if config.check and not passed:
        logger.debug(f"acceptance check failed: subcommand={config.subcommand}")
        exit_status = 1

    return RunResult(exit_status, table, text)
