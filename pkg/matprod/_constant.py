import enum


class Default:
    ENCODING = "utf-8"
    TRIALS = 10**5
    SEED = 0
    U = "uniform"
    FORMAT = "csv"
    MOMENT_BUDGET = 10**8
    MAX_K = 8
    KS_C_ALPHA = 1.358
    CHI2_DIRECT_MAX_DOF = 32
    BIAS_SCALE = 1.0
    THREADS_ENV = "MATPROD_THREADS"
    TRIAL_CHUNK_SIZE = 2048
    UNIT_NORM_TOL = 1e-12
    ERROR_BUDGET_POWER = 2
    SIGNIFICANT_DIGITS = 17


@enum.unique
class DistKind(enum.Enum):
    STANDARD_GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"
    UNIFORM_SYMMETRIC = "uniform"
    DISCRETE_SYMMETRIC = "discrete"


@enum.unique
class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


class Subcommand:
    BETA = "beta"
    SIMULATE = "simulate"
    MOMENTS = "moments"
    KS_TEST = "ks-test"
    CHI2_CHECK = "chi2-check"
    JACOBIAN_COMPARE = "jacobian-compare"
    SCALING = "scaling"

    ALL = (BETA, SIMULATE, MOMENTS, KS_TEST, CHI2_CHECK, JACOBIAN_COMPARE, SCALING)
