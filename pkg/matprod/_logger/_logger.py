import abc

import tabledata

from ._null_logger import NullLogger


MODULE_NAME = "matprod"

try:
    from loguru import logger

    logger.disable(MODULE_NAME)
except ImportError:
    logger = NullLogger()  # type: ignore


def set_logger(is_enable, propagation_depth=1):
    """
    Enable or disable debug logging of matprod, and of the table and
    type conversion libraries it uses down to ``propagation_depth`` levels.
    """

    if is_enable:
        logger.enable(MODULE_NAME)
    else:
        logger.disable(MODULE_NAME)

    if propagation_depth <= 0:
        return

    tabledata.set_logger(is_enable, propagation_depth - 1)


class LoggerInterface(metaclass=abc.ABCMeta):
    @abc.abstractmethod
    def logging_start(self):  # pragma: no cover
        pass


class BaseLogger(LoggerInterface):
    def __init__(self, job):
        self._job = job

    def logging_start(self):
        logger.debug(self._get_start_message())

    def logging_result(self, result):
        logger.debug(f"{self._job.job_name} finished: {result}")

    @abc.abstractmethod
    def _get_start_message(self):
        pass


class TrialLogger(BaseLogger):
    def _get_start_message(self):
        message = "starting {:s}: trials={:d}, seed={:d}".format(
            self._job.job_name, self._job.trials, self._job.seed
        )

        try:
            message += f", widths={self._job.widths}"
        except AttributeError:
            pass

        try:
            message += f", workers={self._job.max_workers:d}"
        except (AttributeError, TypeError):
            pass

        return message


class MomentLogger(BaseLogger):
    def _get_start_message(self):
        message = "starting {:s}: k={:d}, method={:s}".format(
            self._job.job_name, self._job.k, self._job.method
        )

        try:
            message += f", cost={self._job.cost:d}, budget={self._job.budget:d}"
        except (AttributeError, TypeError):
            pass

        return message
