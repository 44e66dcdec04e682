from .core import (
    DEFAULT_QUANTILE_LEVELS,
    KSReport,
    Summary,
    normal_cdf,
    one_sample_ks,
    one_sample_ks_report,
    summary,
    two_sample_ks,
)
