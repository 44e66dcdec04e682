"""
Serialization of result tables. Every table is a
:py:class:`~tabledata.TableData`; CSV output is preceded by a comment line
recording the config fingerprint, the seed and the tool version.
"""

import abc
import csv
import io
import math
import numbers
from decimal import Decimal
from fractions import Fraction

from tabledata import TableData

from .._common import format_real, json
from .._constant import OutputFormat
from .._logger import logger
from ..__version__ import __version__


def to_text(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, (float, Fraction, Decimal, numbers.Real)):
        return format_real(value)

    return str(value)


def to_json_value(value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        value = float(value)
        if not math.isfinite(value):
            return format_real(value)

        return Decimal(format_real(value))

    return str(value)


def dumps_json_value(value):
    # numbers keep their 17-digit text whichever json module is installed
    if isinstance(value, Decimal):
        return str(value)

    return json.dumps(value)


def make_table(table_name, headers, rows):
    return TableData(table_name, headers, rows)


class TableWriterInterface(metaclass=abc.ABCMeta):
    @abc.abstractproperty
    def format_name(self):  # pragma: no cover
        pass

    @abc.abstractmethod
    def dumps(self, table, comment):  # pragma: no cover
        pass


class CsvTableWriter(TableWriterInterface):
    @property
    def format_name(self):
        return OutputFormat.CSV.value

    def dumps(self, table, comment):
        buffer = io.StringIO()
        buffer.write(f"# {comment}\r\n")

        writer = csv.writer(buffer, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        writer.writerow(table.headers)
        for row in table.rows:
            writer.writerow([to_text(value) for value in row])

        return buffer.getvalue()


class JsonLinesTableWriter(TableWriterInterface):
    @property
    def format_name(self):
        return OutputFormat.JSON.value

    def dumps(self, table, comment):
        lines = []
        for row in table.rows:
            lines.append(
                "{{{}}}".format(
                    ", ".join(
                        f"{json.dumps(str(header))}: {dumps_json_value(to_json_value(value))}"
                        for header, value in zip(table.headers, row)
                    )
                )
            )

        return "".join(f"{line}\n" for line in lines)


def make_comment(config, subcommand):
    return "matprod {} subcommand={} fingerprint={} seed={}".format(
        __version__, subcommand, config.fingerprint(), config.seed
    )


def create_writer(output_format):
    if output_format == OutputFormat.JSON:
        return JsonLinesTableWriter()

    return CsvTableWriter()


def write_table(table, config, stream=None):
    """
    Serialize ``table`` in the configured format to ``config.output``,
    or to ``stream`` when no output path is set.

    :return: The serialized text.
    """

    writer = create_writer(config.format)
    text = writer.dumps(table, make_comment(config, table.table_name))

    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.debug(f"wrote {writer.format_name} table '{table.table_name}' to {config.output}")
    elif stream is not None:
        stream.write(text)

    return text
