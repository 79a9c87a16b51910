"""Independent verification paths: Laplace inversion and Monte Carlo."""

from .laplace import (
    TalbotConfig,
    talbot_density,
    talbot_invert,
    talbot_kernel_invert,
    w_closed_form,
    w_n_transform,
)
from .montecarlo import McConfig, McEstimate, mc_cdf_check, mc_functional

__all__ = [
    "TalbotConfig",
    "talbot_density",
    "talbot_invert",
    "talbot_kernel_invert",
    "w_closed_form",
    "w_n_transform",
    "McConfig",
    "McEstimate",
    "mc_cdf_check",
    "mc_functional",
]
