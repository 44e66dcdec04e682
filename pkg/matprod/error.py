"""
Exception classes of matprod.
"""


class ValidationError(Exception):
    """
    Exception raised when an input violates a model assumption.
    """


class NormalizationError(ValidationError):
    """
    Exception raised when an entry law is not centered or does not have
    unit variance.
    """


class AsymmetryError(ValidationError):
    """
    Exception raised when the value set of a discrete entry law is not
    symmetric about zero.
    """


class DimensionMismatchError(ValidationError):
    """
    Exception raised when a vector does not match the architecture.
    """


class AtomicDistributionError(ValidationError):
    """
    Exception raised when an atom-bearing entry law is used where
    an atomless law is required.
    """


class BudgetExceededError(Exception):
    """
    Exception raised when an exact computation would exceed
    the configured evaluation budget.
    """

    def __init__(self, cost, budget, description=""):
        self.cost = cost
        self.budget = budget

        message = f"evaluation budget exceeded: cost={cost}, budget={budget}"
        if description:
            message += f", {description}"

        super().__init__(message)


class InsufficientSamplesError(Exception):
    """
    Exception raised when a statistic needs more samples than available.
    """


class EmptyBatchError(Exception):
    """
    Exception raised when a statistic is requested from an empty batch.
    """


class DistributionNotFoundError(Exception):
    """
    Exception raised when no entry law matches a name.
    """


class PathError(Exception):
    """
    Base path exception class.
    """


class InvalidFilePathError(PathError):
    """
    Exception raised when invalid file path used.
    """


class UsageError(Exception):
    """
    Exception raised when command line arguments are invalid.

    .. py:attribute:: flag

        Name of the offending flag (may be empty).
    """

    def __init__(self, message, flag=""):
        self.flag = flag

        if flag:
            message = f"{flag}: {message}"

        super().__init__(message)


DimensionMismatch = DimensionMismatchError
BudgetExceeded = BudgetExceededError
InsufficientSamples = InsufficientSamplesError
EmptyBatch = EmptyBatchError
