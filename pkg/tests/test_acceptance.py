"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import math
import random
import time
from math import comb

from ebmdensity.coefficients import ak_row, r_n_eval
from ebmdensity.density import EvalPoint, density, tabulate
from ebmdensity.kernels import phi0, phi_m
from ebmdensity.oracles.laplace import talbot_density, talbot_kernel_invert
from ebmdensity.oracles.montecarlo import McConfig, exact_mean, mc_cdf_check, mc_functional
from ebmdensity.quadrature import series_cdf, series_mass
from ebmdensity.special import dm_coeffs
from ebmdensity.table1 import TABLE

RESULTS = []


def report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number} ({title}): {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def check_table_reproduction():
    ref = dict(TABLE)
    start = time.perf_counter()
    rows = tabulate([lam for lam, _ in TABLE], 1.0)
    elapsed = time.perf_counter() - start
    worst_a = worst_b = 0.0
    missing = 0
    for row in rows:
        lam = row.point.lam
        in_a, in_b = 0.25 <= lam <= 2.0, 0.10 <= lam < 0.25
        if not (in_a or in_b):
            continue
        if not row.ok:
            missing += 1
            continue
        dev = abs(row.result.value - ref[lam])
        if in_a:
            worst_a = max(worst_a, dev)
        else:
            worst_b = max(worst_b, dev)
    ok = missing == 0 and worst_a <= 5e-9 and worst_b <= 1e-6 and elapsed < 10.0
    detail = (
        f"max dev {worst_a:.2e} on [0.25, 2.00] (limit 5e-9), {worst_b:.2e} on "
        f"[0.10, 0.25) (limit 1e-6), {missing} missing, {elapsed:.2f} s for 200 entries"
    )
    return report(1, "reference table at t = 1", ok, detail)


def check_coefficients():
    d = dm_coeffs(30)
    lead = max(
        abs(d[0] - 1.0),
        abs(d[1] - 0.5772156649015329),
        abs(d[2] - -0.6558780715202538),
    )
    recon = max(abs(math.gamma(1 + z) * d(z) - 1.0) for z in (-0.5 + 0.05 * i for i in range(21)))
    ok = lead <= 1e-13 and recon <= 1e-10
    return report(2, "d_m coefficients", ok, f"leading dev {lead:.1e}, reconstruction dev {recon:.1e}")


def check_partial_fractions():
    rng = random.Random(7)
    worst = 0.0
    for n in range(1, 21):
        row = ak_row(n)
        for _ in range(50):
            w = rng.uniform(-5, 5)
            ref = r_n_eval(n, w)
            worst = max(worst, abs(row.partial_fractions(w) - ref) / abs(ref))
    return report(3, "partial fractions", worst <= 1e-10, f"max relative dev {worst:.1e} (limit 1e-10)")


def _richardson(m, alpha, beta, tau):
    h = 1e-4 * 10 ** (m - 1)

    def central(step):
        acc = math.fsum(
            (-1) ** j * comb(m, j) * phi0(alpha + (m / 2 - j) * step, beta, tau) for j in range(m + 1)
        )
        return acc / step**m

    return (-1) ** m * (4 * central(h / 2) - central(h)) / 3


def check_phi_kernels():
    fd_worst = 0.0
    for m in (1, 2, 3):
        for beta in (1, 2):
            for tau in (0.5, 2.0):
                for alpha in (-1.0, 0.0, 1.5):
                    ref = phi_m(m, alpha, beta, tau)
                    fd_worst = max(fd_worst, abs(_richardson(m, alpha, beta, tau) - ref) / abs(ref))
    talbot_worst = max(
        abs(phi0(a, b, tau) - talbot_kernel_invert(a, b, tau))
        for a, b, tau in [(0.5, 1, 2.0), (-0.7, 2, 2.0), (1.3, 1, 0.5)]
    )
    ok = fd_worst <= 5e-5 and talbot_worst <= 1e-6
    detail = f"finite-difference rel dev {fd_worst:.1e} (limit 5e-5), Talbot dev {talbot_worst:.1e} (limit 1e-6)"
    return report(4, "Phi kernels", ok, detail)


def check_oracle_triangle():
    points = [(0.5, 1.0), (1.0, 1.0), (2.0, 1.0), (1.0, 2.0)]
    talbot_worst = max(
        abs(density(EvalPoint(lam, t)).value - talbot_density(lam, t)) for lam, t in points
    )
    cdf_worst = 0.0
    for t in (1.0, 2.0):
        lams = [lam for lam, tt in points if tt == t]
        cfg = McConfig(paths=100_000, seed=42, t=t)
        for point in mc_cdf_check(cfg, lams):
            ref = series_cdf(point.lam, t)
            cdf_worst = max(cdf_worst, abs(point.cdf - ref.value) / math.hypot(point.stderr, ref.err_bound))
    est = mc_functional(McConfig(paths=100_000, seed=42, t=1.0))
    z_mean = abs(est.mean - exact_mean(1.0)) / est.stderr
    ok = talbot_worst <= 2e-6 and cdf_worst <= 3.0 and z_mean <= 3.0
    detail = (
        f"series vs Talbot {talbot_worst:.1e} (limit 2e-6), CDF {cdf_worst:.2f} stderr, "
        f"MC mean {z_mean:.2f} stderr (limits 3)"
    )
    return report(5, "oracle triangle", ok, detail)


def check_properties():
    lams = [0.05 + 0.05 * i for i in range(100)]
    negative = 0
    for t in (0.5, 1.0, 2.0, 4.0):
        for row in tabulate(lams, t):
            if not row.ok or row.result.value < -row.result.err_estimate:
                negative += 1
    below = series_cdf(0.05, 1.0)
    body = series_mass(0.05, 60.0, 1.0)
    mass = below.value + body.value
    grid = [0.1 + 0.01 * i for i in range(191)]
    deterministic = [r.result for r in tabulate(grid, 1.0, workers=1)] == [
        r.result for r in tabulate(grid, 1.0, workers=8)
    ]
    mc = McConfig(paths=20_000, steps_per_unit_time=32, seed=3)
    deterministic = deterministic and mc_functional(mc, workers=1) == mc_functional(mc, workers=4)
    ok = negative == 0 and 0.998 <= mass <= 1.0005 and deterministic
    detail = (
        f"{negative} negative or failed grid points, mass on [0, 60] = {mass:.5f} "
        f"(band [0.998, 1.0005]), deterministic and thread-independent: {deterministic}"
    )
    return report(6, "properties", ok, detail)


def test_criterion_1_table():
    assert check_table_reproduction(), RESULTS[-1]


def test_criterion_2_coefficients():
    assert check_coefficients(), RESULTS[-1]


def test_criterion_3_partial_fractions():
    assert check_partial_fractions(), RESULTS[-1]


def test_criterion_4_phi_kernels():
    assert check_phi_kernels(), RESULTS[-1]


def test_criterion_5_oracle_triangle():
    assert check_oracle_triangle(), RESULTS[-1]


def test_criterion_6_properties():
    assert check_properties(), RESULTS[-1]


if __name__ == "__main__":
    checks = [
        check_table_reproduction,
        check_coefficients,
        check_partial_fractions,
        check_phi_kernels,
        check_oracle_triangle,
        check_properties,
    ]
    passed = sum(bool(check()) for check in checks)
    print(f"{passed}/{len(checks)} criteria pass")
