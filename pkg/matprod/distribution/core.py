import abc
import math
from fractions import Fraction

import numpy as np

from .._constant import DistKind
from ..error import AsymmetryError, NormalizationError, ValidationError
from ..interface import DistributionInterface


_FLOAT_TOL = 1e-12


def to_exact(value):
    """
    Convert an ``int``/``Fraction``/decimal string into a ``Fraction``.
    Floats are converted through their shortest decimal representation,
    so ``0.5`` becomes ``1/2`` and ``0.9`` becomes ``9/10``.
    """

    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)

    return Fraction(repr(float(value)))


def is_rational_number(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class DistributionSpec(DistributionInterface):
    """
    The abstract class of symmetric, centered, unit-variance entry laws.

    Moments are exposed through :py:meth:`moment`; they are
    :py:class:`fractions.Fraction` instances when the law has rational
    moments and ``float`` otherwise.
    """

    @property
    def name(self):
        return self.kind.value

    @property
    def atomless(self):
        return True

    @property
    def is_rational(self):
        """
        ``True`` if every moment is returned as an exact rational.
        """

        return True

    @property
    def mu4(self):
        return self.moment(4)

    def moment(self, k):
        if k < 0:
            raise ValueError(f"moment order must be nonnegative: actual={k}")
        if k % 2 == 1:
            return Fraction(0) if self.is_rational else 0.0

        return self._even_moment(k // 2)

    def validate(self):
        if self.moment(0) != 1:
            raise NormalizationError(f"{self.name}: total mass must be 1: actual={self.moment(0)}")

        return self

    @abc.abstractmethod
    def _even_moment(self, half_order):  # pragma: no cover
        pass

    def __eq__(self, other):
        return isinstance(other, DistributionSpec) and repr(self) == repr(other)

    def __hash__(self):
        return hash(repr(self))

    def __repr__(self):
        return f"{type(self).__name__}()"


class StandardGaussian(DistributionSpec):
    """
    The standard normal law: mu_{2j} = (2j - 1)!!.
    """

    @property
    def kind(self):
        return DistKind.STANDARD_GAUSSIAN

    def _even_moment(self, half_order):
        value = 1
        for odd in range(1, 2 * half_order, 2):
            value *= odd

        return Fraction(value)

    def sample(self, rng, shape):
        return rng.standard_normal(shape)


class Rademacher(DistributionSpec):
    """
    The uniform law on {-1, +1}: every even moment is one.
    """

    @property
    def kind(self):
        return DistKind.RADEMACHER

    @property
    def atomless(self):
        return False

    def _even_moment(self, half_order):
        return Fraction(1)

    def support(self):
        return ((Fraction(-1), Fraction(1, 2)), (Fraction(1), Fraction(1, 2)))

    def sample(self, rng, shape):
        return rng.integers(0, 2, size=shape).astype(np.float64) * 2.0 - 1.0


class UniformSymmetric(DistributionSpec):
    """
    The uniform law on [-sqrt(3), sqrt(3)] (unit variance):
    mu_{2j} = 3^j / (2j + 1), in particular mu_4 = 9/5.
    """

    __HALF_WIDTH = math.sqrt(3.0)

    @property
    def kind(self):
        return DistKind.UNIFORM_SYMMETRIC

    def _even_moment(self, half_order):
        return Fraction(3**half_order, 2 * half_order + 1)

    def sample(self, rng, shape):
        return rng.uniform(-self.__HALF_WIDTH, self.__HALF_WIDTH, size=shape)


class DiscreteSymmetric(DistributionSpec):
    """
    A finite law given by explicit ``value: probability`` pairs.

    :param dict masses: Mapping of support points to their probabilities.
        Moments are exact when every value and probability is an
        ``int`` or :py:class:`~fractions.Fraction`.
    """

    @property
    def kind(self):
        return DistKind.DISCRETE_SYMMETRIC

    @property
    def atomless(self):
        return False

    @property
    def is_rational(self):
        return self.__is_rational

    @property
    def masses(self):
        return dict(self.__masses)

    def support(self):
        """
        :return: Nonzero-probability ``(value, probability)`` pairs.
        """

        return tuple((v, p) for v, p in self.__masses if p != 0)

    def __init__(self, masses):
        if not masses:
            raise ValidationError("discrete law requires at least one value")

        self.__is_rational = all(
            is_rational_number(value) and is_rational_number(prob) for value, prob in masses.items()
        )
        if self.__is_rational:
            self.__masses = tuple(sorted((Fraction(v), Fraction(p)) for v, p in masses.items()))
        else:
            self.__masses = tuple(sorted((float(v), float(p)) for v, p in masses.items()))

        if any(prob < 0 for _, prob in self.__masses):
            raise ValidationError(f"probabilities must be nonnegative: actual={masses}")

        self.__values = np.array([float(v) for v, _ in self.__masses])
        self.__probs = np.array([float(p) for _, p in self.__masses])
        self.__probs = self.__probs / self.__probs.sum()

    def moment(self, k):
        if k < 0:
            raise ValueError(f"moment order must be nonnegative: actual={k}")

        return self._raw_moment(k)

    def validate(self):
        super().validate()

        if not self.__is_close(self.moment(1), 0):
            raise NormalizationError(f"mean must be 0: actual={self.moment(1)}")
        if not self.__is_close(self.moment(2), 1):
            raise NormalizationError(f"variance must be 1: actual={self.moment(2)}")

        masses = {}
        for value, prob in self.__masses:
            if prob != 0:
                masses[value] = masses.get(value, 0) + prob
        for value, prob in masses.items():
            if not self.__is_close(masses.get(-value, 0), prob):
                raise AsymmetryError(
                    f"value set must be symmetric about 0: P({value})={prob}, "
                    f"P({-value})={masses.get(-value, 0)}"
                )

        return self

    def _raw_moment(self, k):
        if self.__is_rational:
            return sum((prob * value**k for value, prob in self.__masses), Fraction(0))

        return math.fsum(prob * value**k for value, prob in self.__masses)

    def _even_moment(self, half_order):
        return self._raw_moment(2 * half_order)

    def sample(self, rng, shape):
        return rng.choice(self.__values, size=shape, p=self.__probs)

    def __is_close(self, lhs, rhs):
        if self.__is_rational:
            return lhs == rhs

        return abs(float(lhs) - float(rhs)) <= _FLOAT_TOL

    def __repr__(self):
        pairs = ", ".join(f"{v}: {p}" for v, p in self.__masses)
        return f"{type(self).__name__}({{{pairs}}})"


def validate_distribution(spec):
    """
    Check the normalization and symmetry conditions of an entry law.

    :return: ``spec`` itself.
    :raises matprod.NormalizationError: If mu_0 != 1, mu_1 != 0 or mu_2 != 1.
    :raises matprod.AsymmetryError: If a discrete value set is not symmetric.
    """

    return spec.validate()
