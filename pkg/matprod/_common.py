import math
import os

import typepy

from ._constant import Default
from .error import UsageError


try:
    import simplejson as json
except ImportError:
    import json  # type: ignore # noqa


def get_file_encoding(file_path, encoding):
    from mbstrdecoder import detect_file_encoding

    if encoding:
        return encoding

    encoding = detect_file_encoding(file_path)
    if not encoding:
        return Default.ENCODING

    return encoding


def get_max_workers(environ=None):
    """
    :return:
        Number of worker processes allowed by ``MATPROD_THREADS``,
        or the machine parallelism when the variable is unset.
    :raises matprod.UsageError: If the variable is not a positive integer.
    """

    if environ is None:
        environ = os.environ

    value = environ.get(Default.THREADS_ENV)
    if typepy.is_null_string(value):
        return os.cpu_count() or 1

    try:
        workers = typepy.Integer(value.strip(), strict_level=typepy.StrictLevel.MIN).convert()
    except typepy.TypeConversionError:
        raise UsageError(f"expected a positive integer, actual={value!r}", Default.THREADS_ENV)

    if workers < 1:
        raise UsageError(f"expected a positive integer, actual={value!r}", Default.THREADS_ENV)

    return workers


def format_real(value):
    """
    Serialize a real number with 17 significant digits (empty for ``None``).
    """

    if value is None:
        return ""

    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"

    return format(value, f".{Default.SIGNIFICANT_DIGITS:d}g")
