import abc

from ..error import DistributionNotFoundError


class BaseDistributionFactory(metaclass=abc.ABCMeta):
    @abc.abstractmethod
    def create_from_name(self, name, params=None):  # pragma: no cover
        pass

    @abc.abstractmethod
    def _get_name_distribution_mapping(self):  # pragma: no cover
        pass

    def get_names(self):
        """
        :return: Available entry law names.
        :rtype: list
        """

        return sorted(self._get_name_distribution_mapping())

    def _get_distribution_class(self, mapping, name):
        try:
            name = name.strip().casefold()
        except AttributeError:
            raise TypeError("distribution name must be a string")

        try:
            return mapping[name]
        except KeyError:
            raise DistributionNotFoundError(
                "\n".join(
                    [
                        f"distribution not found: name='{name}'.",
                        "acceptable names are: {}.".format(", ".join(self.get_names())),
                    ]
                )
            )
