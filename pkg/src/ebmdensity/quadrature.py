"""Integrals of the series density over ``lambda``: CDF and total mass."""

from __future__ import annotations

from dataclasses import dataclass

from scipy import integrate

from .density import LAMBDA_MIN, EvalPoint, ToleranceSpec, density
from .errors import DomainError

__all__ = ["MassEstimate", "series_mass", "series_cdf"]


@dataclass(frozen=True)
class MassEstimate:
    value: float
    err_bound: float


def _f(lam, t, tol):
    return density(EvalPoint(lam, t), tol).value


def series_mass(lo: float, hi: float, t: float, tol: ToleranceSpec = ToleranceSpec()) -> MassEstimate:
    """``int_lo^hi f(lambda, t) dlambda`` for ``LAMBDA_MIN <= lo < hi``."""
    if not LAMBDA_MIN <= lo < hi:
        raise DomainError(f"need {LAMBDA_MIN} <= lo < hi, got [{lo}, {hi}]")
    # break at decades so quad resolves the peak and the slow tail separately
    cuts = [lo] + [c for c in (0.2, 1.0, 4.0, 15.0) if lo < c < hi] + [hi]
    total = 0.0
    err = 0.0
    for a, b in zip(cuts, cuts[1:]):
        v, e = integrate.quad(_f, a, b, args=(t, tol), epsabs=1e-11, epsrel=1e-10, limit=200)
        total += v
        err += e + (b - a) * tol.abs_tol
    return MassEstimate(total, err)


def series_cdf(lam: float, t: float, tol: ToleranceSpec = ToleranceSpec()) -> MassEstimate:
    """``P(A_t < lambda)`` from the series density.

    The series is not evaluated below ``LAMBDA_MIN``.  The density increases
    on ``(0, LAMBDA_MIN)``, so the missing mass lies in
    ``[0, LAMBDA_MIN f(LAMBDA_MIN)]``; half of that is added and the other half
    goes into the error bound.
    """
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    edge = LAMBDA_MIN * _f(LAMBDA_MIN, t, tol)
    if lam <= LAMBDA_MIN:
        return MassEstimate(0.5 * edge, 0.5 * edge)
    body = series_mass(LAMBDA_MIN, lam, t, tol)
    return MassEstimate(body.value + 0.5 * edge, body.err_bound + 0.5 * edge)
