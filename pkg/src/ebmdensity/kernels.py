"""Inverse-Laplace kernels in the variable ``sqrt(z)``.

``h_kernel(m, alpha, tau)`` inverts ``(sqrt z)^(m-1) exp(-alpha sqrt z)`` and
equals a Gaussian times a Hermite polynomial.  ``phi_m(m, alpha, beta, tau)``
inverts ``(sqrt z)^m exp(-alpha sqrt z) / (sqrt z + beta)``.  Since

    (sqrt z)^m / (sqrt z + beta) = (sqrt z)^(m-1) - beta (sqrt z)^(m-1) / (sqrt z + beta)

the Phi kernels obey ``Phi_m = h_m - beta Phi_{m-1}``, which replaces repeated
differentiation of ``Phi_0`` in ``alpha``.
"""

from __future__ import annotations

import math

from .errors import DomainError, TruncationCapError
from .special import erfc, erfcx, hermite

__all__ = [
    "MAX_PHI_ORDER",
    "h_kernel",
    "h_kernel_seq",
    "log_h_bound",
    "phi0",
    "phi_m",
    "phi_seq",
]

MAX_PHI_ORDER = 400

# Cramer: |H_m(x)| exp(-x^2/2) <= CRAMER * sqrt(2^m m!)
CRAMER = 1.086435


def _check_tau(tau):
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")


def h_kernel(m: int, alpha: float, tau: float) -> float:
    _check_tau(tau)
    if m < 0:
        raise DomainError(f"kernel order must be >= 0, got {m!r}")
    root = math.sqrt(tau)
    x = alpha / (2.0 * root)
    return (
        math.exp(-x * x)
        / math.sqrt(math.pi * tau)
        * (2.0 * root) ** -m
        * hermite(m, x)
    )


def h_kernel_seq(M: int, alpha: float, tau: float) -> list:
    """``[h_kernel(m, alpha, tau) for m in 0..M]`` in one scaled recurrence.

    Carries ``H_m(x) / (2 sqrt tau)^m`` so that neither factor overflows on
    its own.
    """
    _check_tau(tau)
    scale = 2.0 * math.sqrt(tau)
    x = alpha / scale
    base = math.exp(-x * x) / math.sqrt(math.pi * tau)
    y_prev, y = 1.0, 2.0 * x / scale
    out = [base]
    if M >= 1:
        out.append(base * y)
    for j in range(1, M):
        y_prev, y = y, (2.0 * x * y - 2.0 * j * y_prev / scale) / scale
        out.append(base * y)
    return out


def log_h_bound(m: int, tau: float) -> float:
    """Log of an alpha-uniform bound on ``|h_kernel(m, alpha, tau)|`` (Cramer)."""
    return (
        math.log(CRAMER)
        + 0.5 * (m * math.log(2.0) + math.lgamma(m + 1))
        - 0.5 * math.log(math.pi * tau)
        - m * math.log(2.0 * math.sqrt(tau))
    )


def phi0(alpha: float, beta: float, tau: float) -> float:
    """``exp(-alpha^2/(4 tau))/sqrt(pi tau) - beta exp(alpha beta + beta^2 tau) erfc(x)``

    with ``x = alpha/(2 sqrt tau) + beta sqrt tau``.  Because
    ``x^2 = alpha^2/(4 tau) + alpha beta + beta^2 tau`` the second product equals
    ``exp(-alpha^2/(4 tau)) erfcx(x)``; that form is used for ``x >= 0``.  For
    ``x < 0`` the exponent ``alpha beta + beta^2 tau`` is negative and the
    direct form cannot overflow.
    """
    _check_tau(tau)
    if not beta >= 1:
        raise DomainError(f"beta must be >= 1, got {beta!r}")
    root = math.sqrt(tau)
    x = alpha / (2.0 * root) + beta * root
    gauss = math.exp(-alpha * alpha / (4.0 * tau))
    if x >= 0.0:
        return gauss * (1.0 / math.sqrt(math.pi * tau) - beta * erfcx(x))
    return gauss / math.sqrt(math.pi * tau) - beta * math.exp(
        alpha * beta + beta * beta * tau
    ) * erfc(x)


def phi_seq(M: int, alpha: float, beta: float, tau: float, h=None) -> list:
    """``[Phi_0, ..., Phi_M]`` by the forward recursion.

    ``h`` may carry precomputed ``h_kernel_seq`` values of length >= M+1.
    """
    if M > MAX_PHI_ORDER:
        raise TruncationCapError(f"Phi order {M} exceeds cap {MAX_PHI_ORDER}")
    if h is None:
        h = h_kernel_seq(M, alpha, tau)
    out = [phi0(alpha, beta, tau)]
    for m in range(1, M + 1):
        out.append(h[m] - beta * out[-1])
    return out


def phi_m(m: int, alpha: float, beta: float, tau: float) -> float:
    if m < 0:
        raise DomainError(f"kernel order must be >= 0, got {m!r}")
    return phi_seq(m, alpha, beta, tau)[m]
