from .core import (
    CollisionProbabilities,
    ExactMomentCalculator,
    PathCountCheck,
    PathEnsemble,
    collision_probabilities,
    exact_moment,
    layer_factor,
    product_moment_approximation,
    theory_moment,
    verify_path_count,
)
from .multiplicity import (
    EdgeMultiplicity,
    edge_weight,
    enumerate_multiplicity_count,
    multinomial,
    multiplicity_count,
)
from .oracle import brute_force_moment
from .partition import (
    CollisionClass,
    VertexTuple,
    block_count,
    block_sizes,
    canonical_pattern,
    coarsenings,
    falling_factorial,
    set_partitions,
)
