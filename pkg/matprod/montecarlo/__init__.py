from ._stream import make_rng
from .batch import MomentEstimate, SampleBatch
from .core import (
    ChiSquareProductSampler,
    IncrementEstimate,
    chi_square_product_sampler,
    empirical_moment,
    ks_to_gaussian,
    lyapunov_increment,
    run_trials,
)
