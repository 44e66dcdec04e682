from .__version__ import __author__, __copyright__, __email__, __license__, __version__
from ._constant import DistKind, OutputFormat
from ._logger import set_logger
from .distribution import (
    DiscreteSymmetric,
    DistributionSpec,
    Rademacher,
    StandardGaussian,
    UniformSymmetric,
    validate_distribution,
)
from .error import (
    AsymmetryError,
    AtomicDistributionError,
    BudgetExceeded,
    BudgetExceededError,
    DimensionMismatch,
    DimensionMismatchError,
    DistributionNotFoundError,
    EmptyBatch,
    EmptyBatchError,
    InsufficientSamples,
    InsufficientSamplesError,
    InvalidFilePathError,
    NormalizationError,
    PathError,
    UsageError,
    ValidationError,
)
from .factory import DistributionFactory
from .model import (
    Architecture,
    BetaParams,
    EnsembleConfig,
    ErrorBudget,
    LayerState,
    ProductSampler,
    UnitVector,
    ZeroEventProbability,
    compute_beta,
    error_budget,
    gaussian_log_increment_mean,
    predict_layer_variance,
    propagate_layer,
    sample_log_norm,
    zero_event_probability,
)
from .montecarlo import (
    ChiSquareProductSampler,
    IncrementEstimate,
    MomentEstimate,
    SampleBatch,
    chi_square_product_sampler,
    empirical_moment,
    ks_to_gaussian,
    lyapunov_increment,
    make_rng,
    run_trials,
)
from .paths import (
    EdgeMultiplicity,
    brute_force_moment,
    collision_probabilities,
    edge_weight,
    exact_moment,
    layer_factor,
    multiplicity_count,
    product_moment_approximation,
    theory_moment,
)
from .relu import (
    ForwardTrace,
    JacobianResult,
    ReluNetConfig,
    compare_jacobian_vs_product,
    evgp_beta,
    evgp_ks,
    forward,
    jacobian_log_norm,
)
from .stats import KSReport, Summary, normal_cdf, summary, two_sample_ks
