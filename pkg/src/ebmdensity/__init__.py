"""Density of the exponential functional ``int_0^t exp(2 B(s)) ds`` of Brownian motion."""

from .coefficients import AkRow, ak_row, r_n_eval
from .density import (
    DensityResult,
    EvalPoint,
    ToleranceSpec,
    density,
    f0_term,
    fn_term,
    tabulate,
)
from .errors import ConvergenceError, DomainError, TruncationCapError
from .kernels import h_kernel, phi0, phi_m
from .special import DmTable, ZetaCache, dm_coeffs, dm_decay_bound, zeta_int

__version__ = "0.1.0"

__all__ = [
    "AkRow",
    "ak_row",
    "r_n_eval",
    "DensityResult",
    "EvalPoint",
    "ToleranceSpec",
    "density",
    "f0_term",
    "fn_term",
    "tabulate",
    "ConvergenceError",
    "DomainError",
    "TruncationCapError",
    "h_kernel",
    "phi0",
    "phi_m",
    "DmTable",
    "ZetaCache",
    "dm_coeffs",
    "dm_decay_bound",
    "zeta_int",
]
