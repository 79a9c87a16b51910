"""Density of ``A_t = int_0^t exp(2 B(s)) ds`` as a double series.

With ``a = 8 lambda exp(-2t)``, ``alpha = ln a`` and ``tau = 2t``::

    f(lambda, t) = P * sum_n f_n / (n! (2 lambda)^n)
    P            = (2 lambda)^(-3/2) exp(-1/(2 lambda)) exp(t/2)
    f_0          = sqrt(pi) * S
    f_n          = a_0^(n) S + sum_{k=1..kmax(n)} a_k^(n) G_k
    S            = sum_m d_m h_m(alpha, tau)
    G_k          = sum_m d_m Phi_m(alpha, k, tau)

``S`` and ``G_k`` do not depend on ``n``, so each point costs one pass over
the inner index per distinct ``k``.

Truncation is adaptive.  The inner index stops at the first ``M`` whose
majorant tail (``|d_m|`` bound times an alpha-uniform kernel bound) is below
a tenth of the tolerance after weighting by every outer coefficient.  The
outer index stops once three consecutive weighted terms are negligible and
``max |f_n| * sum_{n>N} 1/(n! (2 lambda)^n)`` is below a tenth of the
tolerance.  A floating-point rounding estimate is added to the reported
error.
"""

from __future__ import annotations

import functools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .coefficients import ak_row
from .errors import DomainError, TruncationCapError
from .kernels import h_kernel_seq, log_h_bound, phi_seq
from .special import dm_coeffs, log_dm_decay_bound

__all__ = [
    "LAMBDA_MIN",
    "T_MIN",
    "T_MAX",
    "WORKERS_ENV",
    "EvalPoint",
    "ToleranceSpec",
    "DensityResult",
    "TabulatedPoint",
    "f0_term",
    "fn_term",
    "density",
    "tabulate",
    "worker_count",
]

# Supported domain in double precision.  Below LAMBDA_MIN the outer terms
# peak far above the result and cancel; for t below ~0.13 the inner tail
# majorant stops certifying 1e-10 and density() raises instead.
LAMBDA_MIN = 0.05
T_MIN = 0.1
T_MAX = 60.0

DM_TABLE_SIZE = 150
WORKERS_ENV = "EBMDENSITY_WORKERS"

_SQRT_PI = math.sqrt(math.pi)
_UNIT_ROUNDOFF = 2.0 ** -53


@dataclass(frozen=True)
class EvalPoint:
    lam: float
    t: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError(f"lambda must be positive and finite, got {self.lam!r}")
        if not (self.t > 0 and math.isfinite(self.t)):
            raise DomainError(f"t must be positive and finite, got {self.t!r}")

    @property
    def a(self) -> float:
        return 8.0 * self.lam * math.exp(-2.0 * self.t)

    @property
    def alpha(self) -> float:
        # ln(8 lambda e^{-2t}) without forming a
        return math.log(8.0 * self.lam) - 2.0 * self.t

    @property
    def tau(self) -> float:
        return 2.0 * self.t

    @property
    def log_prefactor(self) -> float:
        two_lam = 2.0 * self.lam
        return -1.5 * math.log(two_lam) - 1.0 / two_lam + 0.5 * self.t


@dataclass(frozen=True)
class ToleranceSpec:
    abs_tol: float = 1e-10
    max_outer_N: int = 150
    max_inner_M: int = 140

    def __post_init__(self):
        if not self.abs_tol >= 1e-14:
            raise DomainError(f"abs_tol must be >= 1e-14, got {self.abs_tol!r}")
        if self.max_outer_N < 1 or self.max_inner_M < 1:
            raise DomainError("truncation caps must be >= 1")
        if self.max_inner_M > DM_TABLE_SIZE:
            raise DomainError(f"max_inner_M is limited to {DM_TABLE_SIZE}")


@dataclass(frozen=True)
class DensityResult:
    value: float
    err_estimate: float
    n_used: int
    m_used: int
    prefactor: float


def _log_sum_exp(logs):
    peak = max(logs)
    if peak == -math.inf or peak == math.inf:
        return peak
    return peak + math.log(math.fsum(math.exp(x - peak) for x in logs))


class _InnerSums:
    """Inner sums at one point for a fixed truncation index ``M``."""

    def __init__(self, pt: EvalPoint, M: int):
        if M < 0:
            raise DomainError("inner truncation index must be >= 0")
        self.pt = pt
        self.M = M
        self.d = dm_coeffs(DM_TABLE_SIZE).coeffs[: M + 1]
        self.h = h_kernel_seq(M + 1, pt.alpha, pt.tau)
        terms = [dm * hm for dm, hm in zip(self.d, self.h)]
        self.S = math.fsum(terms)
        self.S_round = 8.0 * _UNIT_ROUNDOFF * math.fsum(abs(x) for x in terms)
        self.S_tail, self.G_tail_unit = inner_tail_bounds(pt.tau, M)
        self._G = {}

    def G(self, k):
        if k not in self._G:
            phis = phi_seq(self.M, self.pt.alpha, k, self.pt.tau, h=self.h)
            terms = [dm * p for dm, p in zip(self.d, phis)]
            rounding = 8.0 * _UNIT_ROUNDOFF * math.fsum(abs(x) for x in terms)
            self._G[k] = (math.fsum(terms), rounding)
        return self._G[k]

    def f0(self):
        return _SQRT_PI * self.S, _SQRT_PI * self.S_tail, _SQRT_PI * self.S_round

    def fn(self, n):
        row = ak_row(n)
        parts = [row[0] * self.S]
        tail = abs(row[0]) * self.S_tail
        rounding = abs(row[0]) * self.S_round
        for k in range(1, row.kmax + 1):
            g, g_round = self.G(k)
            parts.append(row[k] * g)
            tail += abs(row[k]) * self.G_tail_unit / k
            rounding += abs(row[k]) * g_round
        rounding += 4.0 * _UNIT_ROUNDOFF * math.fsum(abs(x) for x in parts)
        return math.fsum(parts), tail, rounding


def _log_abs_dm(m):
    # tabulated |d_m| where available, the calibrated majorant beyond
    if m <= DM_TABLE_SIZE:
        d = dm_coeffs(DM_TABLE_SIZE)[m]
        return math.log(abs(d)) if d != 0.0 else -math.inf
    return log_dm_decay_bound(m)


_TAIL_MAX_TERMS = 5000


@functools.lru_cache(maxsize=4096)
def _tail_tables(tau):
    """Log tails ``sum_{m>M}`` of the Hermite and Phi majorants, M = 0..cap.

    The terms are ``|d_m| * B_m`` and ``|d_m| * B_{m+1}`` with ``B_m`` the
    Cramer bound on ``|h_m|``.  Index ``M`` of each table covers ``m > M``.  Past the tabulated ``d_m`` they decay only
    when ``2 e tau > 1``; if they have not dropped 1e-20 below their peak
    within the term budget every tail is reported infinite.
    """
    log_s, log_g = [], []
    m = 1
    while True:
        ld = _log_abs_dm(m)
        log_s.append(ld + log_h_bound(m, tau))
        log_g.append(ld + log_h_bound(m + 1, tau))
        if m > DM_TABLE_SIZE:
            peak = max(max(log_s), max(log_g))
            if max(log_s[-1], log_g[-1]) < peak - 46.0:
                break
            if m > _TAIL_MAX_TERMS:
                inf = (math.inf,) * (DM_TABLE_SIZE + 1)
                return inf, inf
        m += 1
    # log_s[j] holds m = j + 1, so the tail beyond M starts at index M
    s_tails = [_log_sum_exp(log_s[M:]) for M in range(DM_TABLE_SIZE + 1)]
    g_tails = [_log_sum_exp(log_g[M:]) for M in range(DM_TABLE_SIZE + 1)]
    return tuple(s_tails), tuple(g_tails)


def inner_tail_bounds(tau: float, M: int):
    """Majorant tails beyond ``M`` for the Hermite sum and for ``k * G_k``.

    The Phi bound uses ``Phi_m = int_0^inf exp(-beta u) h_{m+1}(alpha+u) du``,
    so ``|Phi_m| <= sup|h_{m+1}| / beta``.
    """
    if not 0 <= M <= DM_TABLE_SIZE:
        raise DomainError(f"inner index must lie in [0, {DM_TABLE_SIZE}], got {M}")
    s_tails, g_tails = _tail_tables(float(tau))
    return _safe_exp(s_tails[M]), _safe_exp(g_tails[M])


def _safe_exp(x):
    return math.inf if x > 700 else math.exp(x)


def _log_weight(n, lam):
    return -math.lgamma(n + 1) - n * math.log(2.0 * lam)


def f0_term(pt: EvalPoint, M: int):
    """``(f_0 truncated after index M, majorant tail of the rest)``."""
    value, tail, _ = _InnerSums(pt, M).f0()
    return value, tail


def fn_term(n: int, pt: EvalPoint, M: int):
    """``(f_n truncated after index M, majorant tail of the rest)`` for n >= 1."""
    if n < 1:
        raise DomainError(f"fn_term needs n >= 1, got {n!r}")
    value, tail, _ = _InnerSums(pt, M).fn(n)
    return value, tail


def _choose_inner_index(pt, tol, P):
    """Smallest M whose weighted inner tail is below abs_tol / 10."""
    lam = pt.lam
    A0 = _SQRT_PI
    A1 = 0.0
    for n in range(1, tol.max_outer_N + 1):
        w = math.exp(_log_weight(n, lam))
        row = ak_row(n)
        A0 += w * abs(row[0])
        A1 += w * sum(abs(row[k]) / k for k in range(1, row.kmax + 1))
        if n > 3 and w * row[0] < 1e-30 * A0:
            break
    target = tol.abs_tol / 10.0
    err = math.inf
    for M in range(2, tol.max_inner_M + 1):
        s_tail, g_tail = inner_tail_bounds(pt.tau, M)
        err = P * (A0 * s_tail + A1 * g_tail)
        if err <= target:
            return M, err, True
    return tol.max_inner_M, err, False


def _outer_remainder(lam, N, C):
    """``C * sum_{n>N} x^n / n!`` with ``x = 1/(2 lambda)``."""
    x = 1.0 / (2.0 * lam)
    first = math.exp(_log_weight(N + 1, lam))
    ratio = x / (N + 2)
    if ratio >= 1.0:
        return math.inf
    return C * first / (1.0 - ratio)


def density(pt: EvalPoint, tol: Optional[ToleranceSpec] = None) -> DensityResult:
    """Density ``f(lambda, t)`` with adaptive truncation.

    Raises :class:`TruncationCapError` (with the partial result attached) when
    the caps bind before the error estimate reaches ``tol.abs_tol``, and for
    points outside ``lambda >= LAMBDA_MIN``, ``T_MIN <= t <= T_MAX``.
    """
    if tol is None:
        tol = ToleranceSpec()
    if pt.lam < LAMBDA_MIN:
        raise TruncationCapError(
            f"lambda = {pt.lam} is below the supported minimum {LAMBDA_MIN}: the "
            f"outer terms peak near n = 1/(2 lambda) = {1 / (2 * pt.lam):.0f} and "
            "cancel beyond double precision"
        )
    if not T_MIN <= pt.t <= T_MAX:
        raise TruncationCapError(
            f"t = {pt.t} is outside the supported range [{T_MIN}, {T_MAX}]"
        )
    P = math.exp(pt.log_prefactor)
    M, inner_err, inner_ok = _choose_inner_index(pt, tol, P)
    sums = _InnerSums(pt, M)

    f0, _, r0 = sums.f0()
    weighted = [f0]
    rounding = r0
    C = abs(f0)
    small_run = 0
    threshold = tol.abs_tol / (10.0 * P)
    outer_ok = False
    N = 0
    for n in range(1, tol.max_outer_N + 1):
        fn, _, rn = sums.fn(n)
        w = math.exp(_log_weight(n, pt.lam))
        weighted.append(w * fn)
        rounding += w * rn
        C = max(C, abs(fn))
        N = n
        small_run = small_run + 1 if abs(w * fn) < threshold else 0
        if small_run >= 3 and _outer_remainder(pt.lam, n, C) < threshold:
            outer_ok = True
            break
    rounding += 4.0 * _UNIT_ROUNDOFF * math.fsum(abs(x) for x in weighted)
    outer_err = _outer_remainder(pt.lam, N, C)
    err = inner_err + P * (outer_err + rounding)
    result = DensityResult(
        value=P * math.fsum(weighted),
        err_estimate=err,
        n_used=N,
        m_used=M,
        prefactor=P,
    )
    if not (inner_ok and outer_ok and err <= tol.abs_tol):
        raise TruncationCapError(
            f"error estimate {err:.3g} above tolerance {tol.abs_tol:.3g} at "
            f"lambda={pt.lam}, t={pt.t} (N={N}, M={M})",
            partial=result,
        )
    return result


@dataclass(frozen=True)
class TabulatedPoint:
    point: EvalPoint
    result: Optional[DensityResult]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise DomainError(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    return os.cpu_count() or 1


def _tabulate_one(args):
    lam, t, tol = args
    pt = EvalPoint(lam, t)
    try:
        return TabulatedPoint(pt, density(pt, tol))
    except TruncationCapError as exc:
        return TabulatedPoint(pt, exc.partial, str(exc))


def tabulate(
    lambda_grid: Sequence[float],
    t: float,
    tol: Optional[ToleranceSpec] = None,
    workers: Optional[int] = None,
) -> list:
    """Density at every grid point; failed points are flagged, not raised."""
    grid = [float(x) for x in lambda_grid]
    if not grid:
        raise DomainError("lambda grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("lambda grid must be strictly increasing")
    if grid[0] <= 0:
        raise DomainError("lambda grid must be positive")
    EvalPoint(grid[0], t)
    tol = tol or ToleranceSpec()
    workers = workers or worker_count()
    jobs = [(lam, t, tol) for lam in grid]
    if workers == 1:
        return [_tabulate_one(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_tabulate_one, jobs))
