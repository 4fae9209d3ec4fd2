"""Exact computations on the imaginary Wakimoto module of affine sl(2)."""

from .core import (
    DeltaConvention,
    FockMonomial,
    FockVector,
    Params,
    VermaMonomial,
    conformal_delta,
    d_eigenvalue,
    delta_gap,
    linear_combine,
    mono,
    vacuum,
    verma,
)

__version__ = "0.1.0"
