import cmath
import math

import mpmath
import numpy as np
import pytest

from ebmdensity.density import EvalPoint, density
from ebmdensity.errors import ConvergenceError, DomainError
from ebmdensity.oracles.laplace import (
    TalbotConfig,
    complex_lgamma,
    kummer_1f1,
    talbot_density,
    w_closed_form,
)
from ebmdensity.oracles.montecarlo import (
    McConfig,
    exact_mean,
    exact_second_moment,
    mc_cdf_check,
    mc_functional,
    simulate_functional,
)
from ebmdensity.quadrature import series_cdf, series_mass
from ebmdensity.table1 import TABLE

REF = dict(TABLE)


# ---- closed-form transform -------------------------------------------------


@pytest.mark.parametrize("z", [0.3 + 0.2j, 1 + 5j, 0.01 + 30j, 12 - 3j, 2.5 + 0j])
def test_complex_lgamma_against_mpmath(z):
    ref = complex(mpmath.gamma(z))
    assert abs(cmath.exp(complex_lgamma(z)) / ref - 1) <= 1e-12


@pytest.mark.parametrize("a, c, z", [(0.5 + 1j, 2 + 2j, 3.0), (1.2, 3.4, 10.0), (0.1 - 2j, 1.2 - 4j, 0.25)])
def test_kummer_against_mpmath(a, c, z):
    ref = complex(mpmath.hyp1f1(a, c, z))
    assert abs(kummer_1f1(a, c, z) - ref) <= 1e-12 * abs(ref)


def test_kummer_reports_non_convergence():
    with pytest.raises(ConvergenceError):
        kummer_1f1(complex(math.nan, 0.0), 1.5, 2.0)


def test_kummer_terms_decrease_after_crossover():
    a, c = 0.7 + 1.1j, 2.4 + 2.2j
    for z in (0.5, 3.0, 10.0):
        term, mags = 1 + 0j, []
        for n in range(60):
            term *= (a + n) / (c + n) * z / (n + 1)
            mags.append(abs(term))
        start = int(z) + 1
        assert all(x > y for x, y in zip(mags[start:], mags[start + 1 :]))


def test_w_large_lambda_limit():
    lam, q = 1e6, 1.0 + 0.5j
    s = cmath.sqrt(2 * q)
    limit = (
        1 / (2 * lam)
        * cmath.exp(-s / 2 * math.log(2 * lam))
        * cmath.exp(complex_lgamma(s / 2) - complex_lgamma(s + 1))
    )
    assert abs(w_closed_form(lam, q) / limit - 1) <= 1e-5


def test_w_conjugate_symmetry():
    q = 1 + 2j
    assert abs(w_closed_form(0.8, q.conjugate()) - w_closed_form(0.8, q).conjugate()) <= 1e-15


def test_w_real_on_real_axis():
    v = w_closed_form(1.0, 1.0)
    assert abs(v.imag) <= 1e-16 and v.real > 0


@pytest.mark.parametrize("q", [0.0, -1.0, 1j])
def test_w_rejects_left_half_plane(q):
    with pytest.raises(DomainError):
        w_closed_form(1.0, q)


# ---- Talbot inversion --------------------------------------------------------


@pytest.mark.parametrize("lam", [1.0, 0.5])
def test_talbot_reproduces_published_values(lam):
    assert abs(talbot_density(lam, 1.0) - REF[lam]) <= 1e-6


@pytest.mark.parametrize("lam, t", [(0.5, 1.0), (1.0, 1.0), (2.0, 1.0), (1.0, 2.0)])
def test_talbot_agrees_with_series(lam, t):
    assert abs(talbot_density(lam, t) - density(EvalPoint(lam, t)).value) <= 2e-6


def test_talbot_node_doubling():
    a = talbot_density(1.0, 1.0, TalbotConfig(32))
    b = talbot_density(1.0, 1.0, TalbotConfig(64))
    assert abs(a - b) < 1e-7


@pytest.mark.parametrize("lam, t", [(0.05, 1.0), (1.0, 0.2), (1.0, 5.5)])
def test_talbot_envelope(lam, t):
    with pytest.raises(DomainError):
        talbot_density(lam, t)


@pytest.mark.parametrize("nodes", [8, 15, 33])
def test_talbot_config_invariants(nodes):
    with pytest.raises(DomainError):
        TalbotConfig(nodes)


# ---- Monte Carlo -----------------------------------------------------------------


def test_exact_moments():
    assert abs(exact_mean(1.0) - 3.1945280495) <= 1e-10
    assert abs(exact_second_moment(1.0) - 123.100) <= 1e-3


def test_mc_mean_at_t1():
    est = mc_functional(McConfig(paths=100_000, seed=42, t=1.0))
    assert est.samples == 100_000
    assert est.stderr > 0
    assert abs(est.mean - exact_mean(1.0)) <= 3 * est.stderr
    assert est.raw_moments[0] == est.mean


def test_mc_second_moment_at_t1():
    x = simulate_functional(McConfig(paths=1_000_000, steps_per_unit_time=64, seed=42, t=1.0))
    sq = x * x
    stderr = float(np.std(sq, ddof=1)) / math.sqrt(sq.size)
    assert abs(float(np.mean(sq)) - exact_second_moment(1.0)) <= 3 * stderr


def test_mc_mean_small_t():
    est = mc_functional(McConfig(paths=20_000, steps_per_unit_time=1600, seed=3, t=0.01))
    assert abs(est.mean - 0.01) <= 2e-4


def test_mc_discretisation():
    # the estimator's expectation is the trapezoid rule applied to exp(2s)
    t = 1.0
    bias = []
    for steps in (16, 32, 64):
        dt = t / steps
        s = np.arange(steps + 1) * dt
        trap = dt * (np.exp(2 * s).sum() - 0.5 - 0.5 * math.exp(2 * t))
        bias.append(trap - exact_mean(t))
        est = mc_functional(McConfig(paths=50_000, steps_per_unit_time=steps, seed=11, t=t))
        assert abs(est.mean - exact_mean(t)) <= 3 * est.stderr + abs(bias[-1])
    assert bias[0] > bias[1] > bias[2] > 0


def test_mc_deterministic_and_thread_independent():
    cfg = McConfig(paths=10_000, steps_per_unit_time=32, seed=7, t=1.0)
    a = simulate_functional(cfg, workers=1)
    b = simulate_functional(cfg, workers=6)
    assert np.array_equal(a, b)
    assert mc_functional(cfg) == mc_functional(cfg, workers=3)


def test_mc_seed_changes_samples():
    a = simulate_functional(McConfig(paths=100, steps_per_unit_time=16, seed=1))
    b = simulate_functional(McConfig(paths=100, steps_per_unit_time=16, seed=2))
    assert not np.array_equal(a, b)


def test_mc_prefix_stable_in_path_count():
    # path i depends only on (seed, i), not on the total number of paths
    a = simulate_functional(McConfig(paths=5000, steps_per_unit_time=16, seed=9))
    b = simulate_functional(McConfig(paths=9000, steps_per_unit_time=16, seed=9))
    assert np.array_equal(a, b[:5000])


@pytest.mark.parametrize(
    "kwargs",
    [dict(paths=0), dict(steps_per_unit_time=8), dict(seed=-1), dict(seed=2**64), dict(t=0.0), dict(t=0.001)],
)
def test_mc_config_invariants(kwargs):
    with pytest.raises(DomainError):
        McConfig(**kwargs)


def test_mc_cdf_against_series():
    cfg = McConfig(paths=100_000, seed=42, t=1.0)
    (point,) = mc_cdf_check(cfg, [1.0])
    ref = series_cdf(1.0, 1.0)
    assert abs(point.cdf - ref.value) <= 3 * math.hypot(point.stderr, ref.err_bound)


def test_mc_cdf_limits():
    cfg = McConfig(paths=20_000, seed=5, t=1.0)
    lo, hi = mc_cdf_check(cfg, [1e-3, 1e6])
    assert lo.cdf == 0.0 and hi.cdf == 1.0
    assert lo.stderr == 0.0


# ---- series integrals ----------------------------------------------------------


def test_total_mass_is_one():
    below = series_cdf(0.05, 1.0)
    body = series_mass(0.05, 1e5, 1.0)
    assert abs(below.value + body.value - 1.0) <= 1e-4


def test_mass_beyond_60_matches_mc():
    tail = series_mass(60.0, 1e5, 1.0).value
    x = simulate_functional(McConfig(paths=400_000, steps_per_unit_time=64, seed=42, t=1.0))
    p = float(np.mean(x > 60.0))
    assert abs(p - tail) <= 3 * math.sqrt(p * (1 - p) / x.size)
    assert tail > 2e-3
