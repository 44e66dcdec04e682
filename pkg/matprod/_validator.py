import abc
import numbers
import os

import pathvalidate as pv
import typepy

from ._logger import logger
from .error import InvalidFilePathError, ValidationError


class ValidatorInterface(metaclass=abc.ABCMeta):
    """
    An interface class for input validators.
    """

    @abc.abstractproperty
    def source_type(self):
        pass

    @abc.abstractmethod
    def validate(self):
        pass


class BaseValidator(ValidatorInterface):
    """
    An abstract base class for input validators.
    """

    @property
    def source(self):
        return self.__source

    def __init__(self, source):
        self.__source = source


class ProbabilityValidator(BaseValidator):
    """
    Validator for a mask probability, which must lie in (0, 1].
    """

    @property
    def source_type(self):
        return "probability"

    def validate(self):
        if isinstance(self.source, bool) or not (
            isinstance(self.source, numbers.Real)
            or typepy.RealNumber(self.source, strict_level=typepy.StrictLevel.MIN).is_type()
        ):
            raise ValidationError(f"probability must be a real number: actual={self.source!r}")

        if not (0 < float(self.source) <= 1):
            raise ValidationError(f"probability must be in (0, 1]: actual={self.source}")


class WidthsValidator(BaseValidator):
    """
    Validator for the layer widths n_0, ..., n_d.
    """

    @property
    def source_type(self):
        return "widths"

    def __init__(self, source, min_length=2):
        super().__init__(source)

        self.__min_length = min_length

    def validate(self):
        if typepy.is_empty_sequence(self.source):
            raise ValidationError("widths must not be empty")

        if len(self.source) < self.__min_length:
            raise ValidationError(
                "at least {:d} widths required: actual={}".format(self.__min_length, self.source)
            )

        for width in self.source:
            if (
                isinstance(width, bool)
                or not typepy.Integer(width, strict_level=typepy.StrictLevel.MAX).is_type()
                or width < 1
            ):
                raise ValidationError(f"widths must be positive integers: actual={self.source}")


class TrialsValidator(BaseValidator):
    """
    Validator for a trial count, which must be a nonnegative integer.
    """

    @property
    def source_type(self):
        return "trials"

    def validate(self):
        if isinstance(self.source, bool) or not typepy.Integer(
            self.source, strict_level=typepy.StrictLevel.MAX
        ).is_type():
            raise ValidationError(f"trials must be an integer: actual={self.source!r}")

        if self.source < 0:
            raise ValidationError(f"trials must be nonnegative: actual={self.source}")


class FileValidator(BaseValidator):
    """
    Validator class for file data source.
    """

    @property
    def source_type(self):
        return "file"

    def validate(self):
        try:
            pv.validate_filepath(self.source, platform="auto")
        except pv.ValidationError as e:
            raise InvalidFilePathError(e)

        if os.path.isfile(self.source):
            return

        logger.debug(f"file not found: {self.source}")
        raise OSError(f"file not found: {self.source}")


class OutputPathValidator(BaseValidator):
    """
    Validator class for an output file path (the file need not exist).
    """

    @property
    def source_type(self):
        return "output"

    def validate(self):
        try:
            pv.validate_filepath(self.source, platform="auto")
        except pv.ValidationError as e:
            raise InvalidFilePathError(e)
