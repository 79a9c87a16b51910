"""Closed-form Laplace transform in ``t`` and its numerical inversion.

``w(lambda, q) = int_0^inf exp(-q t) f(lambda, t) dt`` has the closed form

    w = (2 lambda)^-1 exp(-1/(2 lambda)) (2 lambda)^(-s/2)
        * Gamma(s/2) / Gamma(s + 1) * 1F1(s/2; s + 1; 1/(2 lambda)),   s = sqrt(2q)

which shares nothing with the series path except the problem statement.
Inverting it with a fixed-Talbot contour gives an independent density value.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from ..errors import ConvergenceError, DomainError

__all__ = [
    "TalbotConfig",
    "TALBOT_LAMBDA_MIN",
    "TALBOT_T_RANGE",
    "complex_lgamma",
    "kummer_1f1",
    "w_closed_form",
    "w_n_transform",
    "talbot_invert",
    "talbot_density",
    "talbot_kernel_invert",
]

TALBOT_LAMBDA_MIN = 0.1
TALBOT_T_RANGE = (0.25, 5.0)

# B_2k / (2k (2k-1)), k = 1..8
_STIRLING = (
    1 / 12,
    -1 / 360,
    1 / 1260,
    -1 / 1680,
    1 / 1188,
    -691 / 360360,
    1 / 156,
    -3617 / 122400,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_STIRLING_SHIFT = 10.0


def complex_lgamma(z: complex) -> complex:
    """log Gamma(z) for ``Re z > 0`` (not necessarily the principal branch).

    Only ``exp`` of the result is meaningful.  Arguments with ``|z| < 10``
    are shifted up by the recurrence before applying Stirling's series.
    """
    z = complex(z)
    if z.real <= 0 and z.imag == 0 and z.real == int(z.real):
        raise DomainError(f"Gamma has a pole at {z}")
    shift = 0j
    while abs(z) < _STIRLING_SHIFT:
        shift += cmath.log(z)
        z += 1
    inv = 1 / z
    inv2 = inv * inv
    series = 0j
    power = inv
    for c in _STIRLING:
        series += c * power
        power *= inv2
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series - shift


def kummer_1f1(a: complex, c: complex, z: float, rtol: float = 1e-13) -> complex:
    """Confluent hypergeometric ``1F1(a; c; z)`` by its power series.

    Meant for moderate real ``z``; gives up after ``10 z + 200`` terms.
    """
    max_terms = int(10 * abs(z) + 200)
    term = 1 + 0j
    total = 1 + 0j
    quiet = 0
    for n in range(max_terms):
        term *= (a + n) / (c + n) * z / (n + 1)
        total += term
        if abs(term) <= rtol * abs(total) and n + 1 > abs(z):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise ConvergenceError(f"1F1({a}; {c}; {z}) did not converge in {max_terms} terms")


def _w(lam, q):
    s = cmath.sqrt(2 * q)
    x = 1.0 / (2.0 * lam)
    log_two_lam = math.log(2.0 * lam)
    log_mag = (
        -log_two_lam
        - x
        - 0.5 * s * log_two_lam
        + complex_lgamma(0.5 * s)
        - complex_lgamma(s + 1)
    )
    return cmath.exp(log_mag) * kummer_1f1(0.5 * s, s + 1, x)


def w_closed_form(lam: float, q: complex) -> complex:
    """Laplace transform in ``t`` of the density at ``lambda``; needs ``Re q > 0``."""
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    if not complex(q).real > 0:
        raise DomainError(f"Re q must be positive, got {q!r}")
    return _w(lam, complex(q))


def w_n_transform(n: int, lam: float, q: complex) -> complex:
    """``(2 lambda)^(-s/2) Gamma(s/2 + n) / Gamma(s + n + 1)``, the transform of one
    outer term before the ``sqrt z`` substitution."""
    s = cmath.sqrt(2 * complex(q))
    log_mag = (
        -0.5 * s * math.log(2.0 * lam)
        + complex_lgamma(0.5 * s + n)
        - complex_lgamma(s + n + 1)
    )
    return cmath.exp(log_mag)


@dataclass(frozen=True)
class TalbotConfig:
    node_count: int = 32
    precision_target: float = 1e-6

    def __post_init__(self):
        if self.node_count < 16 or self.node_count % 2:
            raise DomainError(f"node_count must be even and >= 16, got {self.node_count}")


def talbot_invert(F: Callable[[complex], complex], t: float, nodes: int = 32) -> float:
    """Fixed-Talbot inversion (Abate and Valko) of ``F`` at time ``t``.

    The contour ``s(theta) = r theta (cot theta + i)`` with ``r = 2 nodes / (5 t)``
    wraps the negative real axis, so ``F`` may have a branch cut there.
    """
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    r = 2.0 * nodes / (5.0 * t)
    try:
        acc = [0.5 * (F(complex(r)) * math.exp(r * t)).real]
        for k in range(1, nodes):
            theta = k * math.pi / nodes
            cot = math.cos(theta) / math.sin(theta)
            s = r * theta * complex(cot, 1.0)
            sigma = theta + (theta * cot - 1.0) * cot
            acc.append((cmath.exp(t * s) * F(s) * complex(1.0, sigma)).real)
    except (OverflowError, ZeroDivisionError, ValueError) as exc:
        raise ConvergenceError(f"Talbot node evaluation failed: {exc}") from exc
    return r / nodes * math.fsum(acc)


def _check_envelope(lam, t):
    lo, hi = TALBOT_T_RANGE
    if not lam >= TALBOT_LAMBDA_MIN:
        raise DomainError(f"Talbot oracle needs lambda >= {TALBOT_LAMBDA_MIN}, got {lam}")
    if not lo <= t <= hi:
        raise DomainError(f"Talbot oracle needs t in [{lo}, {hi}], got {t}")


def talbot_density(lam: float, t: float, cfg: TalbotConfig = TalbotConfig()) -> float:
    _check_envelope(lam, t)
    return talbot_invert(lambda q: _w(lam, q), t, cfg.node_count)


def talbot_kernel_invert(
    alpha: float, beta: int, tau: float, cfg: TalbotConfig = TalbotConfig()
) -> float:
    """Invert ``z -> exp(-alpha sqrt z) / (sqrt z + beta)`` at ``tau``."""
    if not beta >= 1:
        raise DomainError(f"beta must be >= 1, got {beta!r}")
    lo, hi = TALBOT_T_RANGE
    if not lo <= tau <= hi:
        raise DomainError(f"kernel oracle needs tau in [{lo}, {hi}], got {tau}")

    def F(z):
        root = cmath.sqrt(z)
        return cmath.exp(-alpha * root) / (root + beta)

    return talbot_invert(F, tau, cfg.node_count)
