from .config import Architecture, EnsembleConfig, UnitVector, make_fingerprint
from .propagation import (
    LayerState,
    ProductSampler,
    direct_log_norm,
    propagate_layer,
    sample_layer,
    sample_log_norm,
)
from .theory import (
    BetaParams,
    ErrorBudget,
    ZeroEventProbability,
    compute_beta,
    error_budget,
    gaussian_log_increment_mean,
    predict_layer_variance,
    zero_event_probability,
)
