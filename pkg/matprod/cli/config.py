"""
Experiment configuration: command-line flags merged over an optional
JSON config file, merged over the documented defaults.

The config file is a flat JSON object whose keys are the long flag names
(``-`` or ``_`` separated), e.g.::

    {"widths": "64x16", "p": 0.5, "dist": "gaussian", "u": "e1", "trials": 100000}
"""

import argparse
import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

import jsonschema
import typepy

from .._common import get_file_encoding, json
from .._constant import Default, OutputFormat, Subcommand
from .._logger import logger
from .._validator import FileValidator, OutputPathValidator, ProbabilityValidator, WidthsValidator
from ..error import DistributionNotFoundError, PathError, UsageError, ValidationError
from ..factory import DistributionFactory
from ..model import Architecture, EnsembleConfig, UnitVector, make_fingerprint


DEFAULT_DIST = "gaussian"
DEFAULT_P = Fraction(1)
DEFAULT_X = "ones"
DEFAULT_PRODUCT_P = Fraction(1, 2)
DEFAULT_DEPTHS = (2, 4, 8, 16)
DEFAULT_BETA_TARGET = 0.5

_WIDTH_SHORTHAND = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")
_SEPARATOR = re.compile(r"[,\s]+")

_SCALAR = {"type": ["string", "number", "integer", "boolean", "null"]}
_LIST = {"type": "array", "items": {"type": ["string", "number", "integer"]}}
_CONFIG_FILE_SCHEMA = {
    "type": "object",
    "properties": {
        "subcommand": {"type": "string", "enum": list(Subcommand.ALL)},
        "widths": {"anyOf": [_SCALAR, _LIST]},
        "p": _SCALAR,
        "dist": _SCALAR,
        "dist_params": {"anyOf": [_SCALAR, {"type": "object"}]},
        "u": {"anyOf": [_SCALAR, _LIST]},
        "x": {"anyOf": [_SCALAR, _LIST]},
        "trials": _SCALAR,
        "seed": _SCALAR,
        "k": {"anyOf": [_SCALAR, _LIST]},
        "output": _SCALAR,
        "format": _SCALAR,
        "budget": _SCALAR,
        "assert": _SCALAR,
        "tolerance": _SCALAR,
        "product_p": _SCALAR,
        "bias_scale": _SCALAR,
        "depths": {"anyOf": [_SCALAR, _LIST]},
        "beta_target": _SCALAR,
    },
    "additionalProperties": False,
}


class ExperimentConfig(NamedTuple):
    subcommand: str
    widths: Tuple[int, ...]
    p: Fraction = DEFAULT_P
    dist: str = DEFAULT_DIST
    dist_params: Optional[object] = None
    u: object = Default.U
    trials: int = Default.TRIALS
    seed: int = Default.SEED
    k: Tuple[int, ...] = (1, 2)
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.CSV
    budget: int = Default.MOMENT_BUDGET
    check: bool = False
    tolerance: Optional[float] = None
    x: object = DEFAULT_X
    product_p: Fraction = DEFAULT_PRODUCT_P
    bias_scale: float = Default.BIAS_SCALE
    depths: Tuple[int, ...] = DEFAULT_DEPTHS
    beta_target: float = DEFAULT_BETA_TARGET

    def entry_law(self):
        try:
            params = self.dist_params
            if isinstance(params, dict):
                params = {Fraction(str(v)): Fraction(str(q)) for v, q in params.items()}

            return DistributionFactory().create_from_name(self.dist, params)
        except (DistributionNotFoundError, ValidationError) as e:
            raise UsageError(str(e), "--dist")

    def ensemble_config(self, widths=None, p=None):
        widths = self.widths if widths is None else widths
        p = self.p if p is None else p

        return EnsembleConfig(Architecture(widths), p, self.entry_law())

    def unit_vector(self, dim=None):
        return _make_vector(self.u, self.widths[0] if dim is None else dim, "--u")

    def input_vector(self):
        if self.x == DEFAULT_X:
            return UnitVector.uniform(self.widths[0]).coordinates

        return _make_vector(self.x, self.widths[0], "--x").coordinates

    def fingerprint(self):
        return make_fingerprint(
            self.subcommand,
            self.widths,
            self.p,
            self.dist,
            self.dist_params,
            self.u,
            self.trials,
            self.k,
            self.budget,
            self.x,
            self.product_p,
            self.bias_scale,
            self.depths,
            self.beta_target,
        )


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        flag = None
        match = re.search(r"(--[\w-]+)", message)
        if match:
            flag = match.group(1)

        raise UsageError(message, flag)


def _make_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--widths", help="n_0,n_1,...,n_d; NxD expands to D copies of N")
    common.add_argument("--p", help="mask probability in (0, 1] (default: 1)")
    common.add_argument("--dist", help="entry law: gaussian, rademacher, uniform or discrete")
    common.add_argument("--dist-params", help="value:prob pairs of a discrete law")
    common.add_argument("--u", help="e1, uniform or a coordinate file (default: uniform)")
    common.add_argument("--trials", help=f"Monte Carlo trials (default: {Default.TRIALS})")
    common.add_argument("--seed", help=f"base seed (default: {Default.SEED})")
    common.add_argument("--k", help="moment orders, e.g. 1,2")
    common.add_argument("--output", help="output file (default: standard output)")
    common.add_argument("--format", help="csv or json (default: csv)")
    common.add_argument("--budget", help="evaluation budget of exact moments")
    common.add_argument(
        "--assert",
        dest="assert",
        action="store_const",
        const=True,
        help="exit with status 1 when the acceptance check fails",
    )
    common.add_argument("--tolerance", help="KS tolerance of --assert (default: 5%% critical)")
    common.add_argument("--x", help="ReLU input: ones, e1 or a coordinate file")
    common.add_argument("--product-p", help="mask probability of the product side")
    common.add_argument("--bias-scale", help="bias scale sigma_b (default: 1)")
    common.add_argument("--depths", help="depths of the scaling run, e.g. 2,4,8,16")
    common.add_argument("--beta-target", help="target beta of the scaling run")
    common.add_argument("--debug", action="store_true", help="enable debug logging")

    parser = _ArgumentParser(prog="matprod", description="random matrix product laboratory")
    subparsers = parser.add_subparsers(dest="subcommand", metavar="subcommand")
    for name in Subcommand.ALL:
        subparsers.add_parser(name, parents=[common])

    return parser


def _normalize_key(key):
    return key.strip().replace("-", "_")


def load_config_file(file_path):
    """
    :return: Flat mapping of normalized keys to raw values.
    :raises matprod.UsageError: If the file is missing or invalid.
    """

    try:
        FileValidator(file_path).validate()
    except (ValidationError, PathError, OSError) as e:
        raise UsageError(str(e), "--config")

    with open(file_path, encoding=get_file_encoding(file_path, None)) as f:
        try:
            values = json.load(f)
        except ValueError as e:
            raise UsageError(f"invalid JSON: {e}", "--config")

    if isinstance(values, dict):
        values = {_normalize_key(key): value for key, value in values.items()}

    try:
        jsonschema.validate(values, _CONFIG_FILE_SCHEMA)
    except jsonschema.ValidationError as e:
        raise UsageError(e.message, "--config")

    logger.debug(f"loaded config file: path={file_path}, keys={sorted(values)}")

    return values


def _items(value):
    if isinstance(value, (list, tuple)):
        return list(value)

    return [item for item in _SEPARATOR.split(str(value).strip()) if item]


def _to_int(value, flag):
    if isinstance(value, bool):
        raise UsageError(f"expected an integer, actual={value!r}", flag)

    try:
        converted = typepy.Integer(value, strict_level=typepy.StrictLevel.MIN).convert()
        if Decimal(str(value).strip()) != converted:
            raise InvalidOperation
    except (typepy.TypeConversionError, InvalidOperation, ValueError):
        raise UsageError(f"expected an integer, actual={value!r}", flag)

    return int(converted)


def _to_real(value, flag):
    if isinstance(value, bool) or not typepy.RealNumber(
        value, strict_level=typepy.StrictLevel.MIN
    ).is_type():
        raise UsageError(f"expected a real number, actual={value!r}", flag)

    return float(typepy.RealNumber(value, strict_level=typepy.StrictLevel.MIN).convert())


def _to_probability(value, flag):
    try:
        if isinstance(value, float):
            probability = Fraction(repr(value))
        else:
            probability = Fraction(str(value).strip())
        ProbabilityValidator(probability).validate()
    except (ValueError, ZeroDivisionError, ValidationError) as e:
        raise UsageError(f"expected a probability in (0, 1], actual={value!r}: {e}", flag)

    return probability


def parse_widths(value, flag="--widths", min_length=2):
    """
    Parse ``"8,16,16"`` or the shorthand ``"64x16"``: ``NxD`` appends D copies
    of N, and a leading ``NxD`` also supplies n_0 = N.
    """

    widths = []
    for position, item in enumerate(_items(value)):
        match = _WIDTH_SHORTHAND.match(str(item))
        if match:
            width, count = int(match.group(1)), int(match.group(2))
            if position == 0:
                widths.append(width)
            widths.extend([width] * count)
        else:
            widths.append(_to_int(item, flag))

    try:
        WidthsValidator(widths, min_length=min_length).validate()
    except ValidationError as e:
        raise UsageError(str(e), flag)

    return tuple(widths)


def _to_bounded_int(value, flag, minimum):
    converted = _to_int(value, flag)
    if converted < minimum:
        raise UsageError(f"value must be >= {minimum}: actual={converted}", flag)

    return converted


def _to_int_list(value, flag, minimum):
    values = tuple(_to_int(item, flag) for item in _items(value))
    if not values:
        raise UsageError("expected at least one value", flag)
    for item in values:
        if item < minimum:
            raise UsageError(f"values must be >= {minimum}: actual={item}", flag)

    return values


def _make_vector(spec, dim, flag):
    if isinstance(spec, (list, tuple)):
        values = [_to_real(v, flag) for v in spec]
    elif spec == "e1":
        vector = UnitVector.e1(dim)
        values = None
    elif spec == "uniform":
        vector = UnitVector.uniform(dim)
        values = None
    else:
        values = load_coordinate_file(spec, flag)

    try:
        if values is not None:
            vector = UnitVector.from_coordinates(values, normalize=True)
        vector.check_dim(dim)
    except ValidationError as e:
        raise UsageError(str(e), flag)

    return vector


def load_coordinate_file(file_path, flag="--u"):
    """
    Read real coordinates separated by commas or whitespace.
    """

    try:
        FileValidator(file_path).validate()
    except (ValidationError, PathError, OSError) as e:
        raise UsageError(str(e), flag)

    with open(file_path, encoding=get_file_encoding(file_path, None)) as f:
        return [_to_real(item, flag) for item in _items(f.read())]


def parse_config(argv, config_file=None):
    """
    :param list argv: Command-line arguments without the program name.
    :param str config_file: JSON config file. ``--config`` takes precedence.
    :rtype: ExperimentConfig
    :raises matprod.UsageError: On any invalid or missing option.
    """

    args = _make_parser().parse_args(argv)
    flags = {key: value for key, value in vars(args).items() if value is not None}

    if flags.pop("debug", False):
        from .._logger import set_logger

        set_logger(True)

    config_file = flags.pop("config", config_file)
    values = load_config_file(config_file) if config_file else {}
    values.update(flags)

    subcommand = values.get("subcommand")
    if not subcommand:
        raise UsageError(f"a subcommand is required: {', '.join(Subcommand.ALL)}", None)

    logger.debug(f"parse_config: subcommand={subcommand}, keys={sorted(values)}")

    params = {}
    if "widths" in values:
        params["widths"] = parse_widths(values["widths"])
    elif subcommand == Subcommand.SCALING:
        params["widths"] = ()
    else:
        raise UsageError("--widths is required", "--widths")

    if "p" in values:
        params["p"] = _to_probability(values["p"], "--p")
    if "product_p" in values:
        params["product_p"] = _to_probability(values["product_p"], "--product-p")
    if "dist" in values:
        params["dist"] = str(values["dist"])
    if "dist_params" in values:
        params["dist_params"] = values["dist_params"]
    if "u" in values:
        params["u"] = values["u"]
    if "x" in values:
        params["x"] = values["x"]
    if "trials" in values:
        params["trials"] = _to_bounded_int(values["trials"], "--trials", 0)
    if "seed" in values:
        params["seed"] = _to_int(values["seed"], "--seed")
    if "k" in values:
        params["k"] = _to_int_list(values["k"], "--k", 1)
    if "budget" in values:
        params["budget"] = _to_bounded_int(values["budget"], "--budget", 1)
    if "depths" in values:
        params["depths"] = _to_int_list(values["depths"], "--depths", 1)
    if "assert" in values:
        params["check"] = bool(values["assert"])
    if "tolerance" in values:
        params["tolerance"] = _to_real(values["tolerance"], "--tolerance")
    if "bias_scale" in values:
        params["bias_scale"] = _to_real(values["bias_scale"], "--bias-scale")
        if not params["bias_scale"] > 0:
            raise UsageError("bias scale must be positive", "--bias-scale")
    if "beta_target" in values:
        params["beta_target"] = _to_real(values["beta_target"], "--beta-target")
        if not params["beta_target"] > 0:
            raise UsageError("target beta must be positive", "--beta-target")
    if "format" in values:
        try:
            params["format"] = OutputFormat(str(values["format"]).strip().casefold())
        except ValueError:
            raise UsageError(f"expected csv or json, actual={values['format']!r}", "--format")
    if "output" in values:
        try:
            OutputPathValidator(values["output"]).validate()
        except PathError as e:
            raise UsageError(str(e), "--output")
        params["output"] = values["output"]

    return ExperimentConfig(subcommand=subcommand, **params)
