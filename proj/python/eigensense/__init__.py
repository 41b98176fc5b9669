"""Eigenvalue sensitivity toolkit.

Measures how strongly a dynamic model's eigenvalues depend on its input
parameters: Gaussian-kernel density estimation of the joint distribution,
discretization onto a probability grid, generalized mutual information,
and leave-one-out sensitivity ranking.
"""

from ._core import (
    Dataset,
    IoError,
    KdeModel,
    NumericError,
    ValidationError,
    __version__,
    cdf_ls_bandwidth,
    derive_ymax,
    entropy,
    mi,
    sensitivity,
    silverman_bandwidth,
    simulate,
)

__all__ = [
    "Dataset",
    "IoError",
    "KdeModel",
    "NumericError",
    "ValidationError",
    "__version__",
    "cdf_ls_bandwidth",
    "derive_ymax",
    "entropy",
    "mi",
    "sensitivity",
    "silverman_bandwidth",
    "simulate",
]
