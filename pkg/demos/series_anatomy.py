"""
Anatomy of the double series
============================

Walks through one evaluation of f(lambda, t) and prints what the truncation
controller sees: the outer terms f_n / (n! (2 lambda)^n), the inner index it
picks, and how the error estimate splits.
"""

import math

from ebmdensity.density import EvalPoint, ToleranceSpec, density, f0_term, fn_term

# A point in the middle of the published table.
pt = EvalPoint(lam=1.0, t=1.0)
print(f"a = {pt.a:.6f}, alpha = ln a = {pt.alpha:.6f}, tau = 2t = {pt.tau}")

res = density(pt, ToleranceSpec(abs_tol=1e-12))
print(f"f(1, 1) = {res.value:.12f}  (estimate {res.err_estimate:.1e}, N = {res.n_used}, M = {res.m_used})")

# The outer weights 1/(n! (2 lambda)^n) win quickly at lambda = 1.
print("\n n   f_n              weighted term")
value, _ = f0_term(pt, res.m_used)
print(f"{0:2d}   {value:+.10e}   {value:+.3e}")
for n in range(1, res.n_used + 1):
    value, _ = fn_term(n, pt, res.m_used)
    weight = 1.0 / (math.factorial(n) * (2 * pt.lam) ** n)
    print(f"{n:2d}   {value:+.10e}   {value * weight:+.3e}")

# Smaller lambda means a larger ratio 1/(2 lambda) and more outer terms.
print("\nlambda   N    M    estimate")
for lam in (2.0, 1.0, 0.5, 0.2, 0.1, 0.05):
    r = density(EvalPoint(lam, 1.0))
    print(f"{lam:5.2f}  {r.n_used:3d}  {r.m_used:3d}   {r.err_estimate:.1e}")

# Below lambda = 0.05 the terms peak near n = 1/(2 lambda) and cancel beyond
# what double precision can hold, so the evaluator refuses.
try:
    density(EvalPoint(0.02, 1.0))
except ArithmeticError as exc:
    print(f"\nlambda = 0.02: {exc}")
