from ._base import BaseDistributionFactory
from ._name import DistributionFactory
