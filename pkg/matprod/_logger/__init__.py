from ._logger import MomentLogger, TrialLogger, logger, set_logger
