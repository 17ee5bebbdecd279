"""Sign tests for principal directions of elliptical data.

Thin wrapper around the compiled core. The main entry points are
``sign_test``, ``tyler_lrt``, ``anderson_lrt``, ``tyler_shape``, the
samplers, and the asymptotic power helpers.
"""

from ._core import (
    ConvergenceError,
    DomainError,
    InsufficientDataError,
    __version__,
    anderson_lrt,
    asymptotic_power,
    chi2_cdf,
    chi2_quantile,
    noncentral_chi2_cdf,
    noncentrality,
    oracle_sign_test,
    sample_angular_gaussian,
    sample_elliptical,
    sign_test,
    simulate,
    spatial_signs,
    theoretical_curve,
    tyler_lrt,
    tyler_shape,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "InsufficientDataError",
    "__version__",
    "anderson_lrt",
    "asymptotic_power",
    "chi2_cdf",
    "chi2_quantile",
    "noncentral_chi2_cdf",
    "noncentrality",
    "oracle_sign_test",
    "sample_angular_gaussian",
    "sample_elliptical",
    "sign_test",
    "simulate",
    "spatial_signs",
    "theoretical_curve",
    "tyler_lrt",
    "tyler_shape",
]
