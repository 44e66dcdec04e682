from fractions import Fraction

from .._logger import logger
from ..distribution import DiscreteSymmetric, Rademacher, StandardGaussian, UniformSymmetric
from ..error import ValidationError
from ._base import BaseDistributionFactory


def parse_masses(text):
    """
    Parse ``"value:prob,value:prob"`` pairs. Numbers are kept exact
    (``Fraction``) so rational laws keep exact moments.
    """

    masses = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue

        try:
            value, prob = item.split(":")
            value = Fraction(value.strip())
            prob = Fraction(prob.strip())
        except ValueError:
            raise ValidationError(f"invalid value:probability pair: '{item}'")

        masses[value] = masses.get(value, 0) + prob

    return masses


class DistributionFactory(BaseDistributionFactory):
    """
    Create validated entry laws from their names.

        ==================  ===========================================
        Name                Distribution
        ==================  ===========================================
        ``"gaussian"``      :py:class:`~.StandardGaussian`
        ``"normal"``        :py:class:`~.StandardGaussian`
        ``"rademacher"``    :py:class:`~.Rademacher`
        ``"uniform"``       :py:class:`~.UniformSymmetric`
        ``"discrete"``      :py:class:`~.DiscreteSymmetric`
        ==================  ===========================================
    """

    def create_from_name(self, name, params=None):
        """
        :param str name: Entry law name (case insensitive).
        :param params:
            ``value:prob`` pairs (a string or a dict) for ``"discrete"``.
        :raises matprod.DistributionNotFoundError: If the name is unknown.
        :raises matprod.ValidationError: If the law is not normalized/symmetric.
        """

        dist_class = self._get_distribution_class(self._get_name_distribution_mapping(), name)

        if dist_class is DiscreteSymmetric:
            if not params:
                raise ValidationError("discrete law requires value:probability pairs")
            if isinstance(params, str):
                params = parse_masses(params)

            dist = DiscreteSymmetric(params)
        else:
            dist = dist_class()

        logger.debug(f"DistributionFactory.create_from_name: name={name}, dist={dist!r}")

        return dist.validate()

    def _get_name_distribution_mapping(self):
        return {
            "gaussian": StandardGaussian,
            "normal": StandardGaussian,
            "rademacher": Rademacher,
            "uniform": UniformSymmetric,
            "discrete": DiscreteSymmetric,
        }
