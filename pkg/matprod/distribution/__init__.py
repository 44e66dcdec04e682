from .core import (
    DiscreteSymmetric,
    DistributionSpec,
    Rademacher,
    StandardGaussian,
    UniformSymmetric,
    validate_distribution,
)
