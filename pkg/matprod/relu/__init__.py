from .core import (
    EvgpReport,
    ForwardTrace,
    JacobianComparison,
    JacobianResult,
    ReluJacobianSampler,
    ReluNetConfig,
    ReluNetwork,
    compare_jacobian_vs_product,
    default_input,
    evgp_beta,
    evgp_ks,
    forward,
    jacobian,
    jacobian_log_norm,
    open_neuron_fractions,
    relu,
)
