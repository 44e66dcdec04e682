import hashlib
import math
from fractions import Fraction

import numpy as np

from .._constant import Default
from .._validator import ProbabilityValidator, WidthsValidator
from ..distribution.core import is_rational_number, to_exact
from ..error import DimensionMismatchError, ValidationError


class Architecture:
    """
    Layer widths n_0, ..., n_d of a product of d random matrices.
    """

    @property
    def widths(self):
        return self.__widths

    @property
    def depth(self):
        return len(self.__widths) - 1

    @property
    def input_width(self):
        return self.__widths[0]

    @property
    def output_width(self):
        return self.__widths[-1]

    @property
    def hidden_widths(self):
        """
        Widths n_1, ..., n_d.
        """

        return self.__widths[1:]

    def __init__(self, widths):
        WidthsValidator(widths).validate()

        self.__widths = tuple(widths)

    def __eq__(self, other):
        return isinstance(other, Architecture) and self.widths == other.widths

    def __hash__(self):
        return hash(self.widths)

    def __repr__(self):
        return f"Architecture(widths={list(self.widths)})"


class EnsembleConfig:
    """
    Configuration of the masked product ensemble
    X^(i) = (p n_{i-1})^{-1/2} D^(i) W^(i).

    :param Architecture architecture: Layer widths.
    :param p: Mask probability in (0, 1].
    :param matprod.distribution.DistributionSpec entry_law: Law of the entries of W^(i).
    """

    @property
    def architecture(self):
        return self.__architecture

    @property
    def widths(self):
        return self.__architecture.widths

    @property
    def depth(self):
        return self.__architecture.depth

    @property
    def p(self):
        return self.__p

    @property
    def p_exact(self):
        return self.__p_exact

    @property
    def entry_law(self):
        return self.__entry_law

    @property
    def atomless(self):
        return self.__entry_law.atomless

    def __init__(self, architecture, p, entry_law):
        if not isinstance(architecture, Architecture):
            architecture = Architecture(architecture)

        ProbabilityValidator(p).validate()

        self.__architecture = architecture
        self.__p_exact = to_exact(p)
        self.__p = float(p)
        self.__entry_law = entry_law

    def with_p(self, p):
        return EnsembleConfig(self.__architecture, p, self.__entry_law)

    def fingerprint(self):
        return make_fingerprint(repr(self))

    def __repr__(self):
        return "EnsembleConfig(widths={}, p={}, entry_law={!r})".format(
            list(self.widths), self.__p_exact, self.__entry_law
        )


def make_fingerprint(*items):
    digest = hashlib.sha256("|".join(str(item) for item in items).encode(Default.ENCODING))

    return digest.hexdigest()[:16]


class UnitVector:
    """
    An initial vector u with ||u||_2 = 1.

    Squared coordinates are kept as exact fractions when the vector was
    built from rational data (:py:meth:`e1`, :py:meth:`uniform`,
    or rational coordinates); :py:attr:`squares_exact` is ``None`` otherwise.
    """

    @property
    def coordinates(self):
        return self.__coordinates

    @property
    def dim(self):
        return len(self.__coordinates)

    @property
    def squares(self):
        return self.__coordinates**2

    @property
    def squares_exact(self):
        return self.__squares_exact

    @property
    def norm2(self):
        return self.__norm2

    @property
    def norm4_4(self):
        """
        ||u||_4^4, exact when the squares are exact.
        """

        return self.__norm4_4

    @property
    def label(self):
        return self.__label

    def __init__(self, coordinates, squares_exact=None, label="custom"):
        coordinates = np.array(coordinates, dtype=np.float64)
        if coordinates.ndim != 1 or len(coordinates) == 0:
            raise ValidationError("unit vector must be a nonempty one dimensional array")

        self.__norm2 = math.sqrt(math.fsum(coordinates**2))
        if abs(self.__norm2 - 1.0) > Default.UNIT_NORM_TOL:
            raise ValidationError(f"vector must have unit l2 norm: actual={self.__norm2!r}")

        if squares_exact is not None:
            squares_exact = tuple(Fraction(s) for s in squares_exact)
            if sum(squares_exact) != 1:
                raise ValidationError("exact squares must sum to one")
            self.__norm4_4 = sum((s * s for s in squares_exact), Fraction(0))
        else:
            self.__norm4_4 = math.fsum(coordinates**4)

        coordinates.setflags(write=False)
        self.__coordinates = coordinates
        self.__squares_exact = squares_exact
        self.__label = label

    @classmethod
    def e1(cls, dim):
        squares = [Fraction(0)] * dim
        squares[0] = Fraction(1)
        coordinates = np.zeros(dim)
        coordinates[0] = 1.0

        return cls(coordinates, squares, label="e1")

    @classmethod
    def uniform(cls, dim):
        return cls(np.full(dim, 1.0 / math.sqrt(dim)), [Fraction(1, dim)] * dim, label="uniform")

    @classmethod
    def from_coordinates(cls, values, normalize=False):
        """
        :param values: Coordinates. Exact squares are kept if every
            coordinate is an ``int``/``Fraction`` and ``normalize`` is false.
        :param bool normalize: Rescale to unit norm before validation.
        """

        values = list(values)

        if not normalize and values and all(is_rational_number(v) for v in values):
            squares = [Fraction(v) ** 2 for v in values]
            return cls([float(v) for v in values], squares)

        coordinates = np.array([float(v) for v in values], dtype=np.float64)
        if normalize:
            norm = math.sqrt(math.fsum(coordinates**2))
            if norm == 0:
                raise ValidationError("cannot normalize a zero vector")
            coordinates = coordinates / norm

        return cls(coordinates)

    def check_dim(self, dim):
        if self.dim != dim:
            raise DimensionMismatchError(f"vector dimension must be {dim}: actual={self.dim}")

    def __repr__(self):
        if self.__label != "custom":
            return f"UnitVector.{self.__label}({self.dim})"

        return "UnitVector({})".format(",".join(repr(float(v)) for v in self.__coordinates))
