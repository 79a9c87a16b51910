"""Partial-fraction coefficients of the rational factors ``r_n(w)``.

For ``n >= 1``

    r_n(w) = sqrt(pi) 2^-(n+1) / (w + n/2 + 1/2)
             * prod_{j=1..n} (w + j - 1/2) / (w + j/2) * (2w + 1) / w

has simple poles at ``w = 0, -1, ..., -kmax`` with ``kmax = (n-1)//2 + 1``
and decays like ``1/w``, so ``r_n(w) = sum_k a_k / (w + k)``.  The residues
are

    a_0 = Gamma(n + 1/2) / Gamma(n + 2)
    a_k = (-1)^(k-1) (2k - 1) / (k! 4^k) * Gamma(n - k + 1/2) / Gamma(n - 2k + 2)

for ``k >= 1``.  The factor ``(2k-1)/k`` is the value of ``(2w+1)/w`` at the
pole ``w = -k``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .errors import DomainError
from .special import lgamma_half

__all__ = ["AkRow", "ak_row", "kmax_for", "r_n_eval"]


def kmax_for(n: int) -> int:
    return (n - 1) // 2 + 1


@dataclass(frozen=True)
class AkRow:
    n: int
    coeffs: tuple

    @property
    def kmax(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def partial_fractions(self, w: float) -> float:
        return math.fsum(a / (w + k) for k, a in enumerate(self.coeffs))


@functools.lru_cache(maxsize=1024)
def ak_row(n: int) -> AkRow:
    if int(n) != n or n < 1:
        raise DomainError(f"ak_row needs an integer n >= 1, got {n!r}")
    n = int(n)
    coeffs = [math.exp(lgamma_half(2 * n + 1) - lgamma_half(2 * n + 4))]
    for k in range(1, kmax_for(n) + 1):
        # Gamma arguments n-k+1/2 >= 1/2 and n-2k+2 >= 1 for every k <= kmax
        assert 2 * (n - k) + 1 >= 1 and n - 2 * k + 2 >= 1
        log_mag = (
            math.log(2 * k - 1)
            - math.lgamma(k + 1)
            - 2 * k * math.log(2.0)
            + lgamma_half(2 * (n - k) + 1)
            - lgamma_half(2 * (n - 2 * k + 2))
        )
        sign = 1.0 if k % 2 == 1 else -1.0
        coeffs.append(sign * math.exp(log_mag))
    return AkRow(n, tuple(coeffs))


def r_n_eval(n: int, w: float) -> float:
    """Evaluate ``r_n(w)`` directly from its product form."""
    if int(n) != n or n < 1:
        raise DomainError(f"r_n_eval needs an integer n >= 1, got {n!r}")
    n = int(n)
    if w == 0 or (w < 0 and float(w).is_integer() and -w <= kmax_for(n)):
        raise DomainError(f"w = {w!r} is a pole of r_{n}")
    if any(w + j / 2 == 0 for j in range(1, n + 2)):
        # removable in r_n itself, but the product form divides by zero
        raise DomainError(f"product form of r_{n} is undefined at w = {w!r}")
    value = math.sqrt(math.pi) * 2.0 ** -(n + 1) / (w + n / 2 + 0.5)
    for j in range(1, n + 1):
        value *= (w + j - 0.5) / (w + j / 2)
    return value * (2 * w + 1) / w
