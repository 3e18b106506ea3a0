import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symcurves import bounds
from symcurves.errors import ConvergenceError, InvalidParameters
from symcurves.reference import FIXED_JUMP_EXAMPLES, OESTERLE_EXAMPLES, OESTERLE_MISPRINTS


def scan_theta0(q, N, m):
    """Root of the defining cosine equation by dense sampling plus linear interpolation."""
    L, r = N - 1, math.sqrt(q)
    u = (r ** (m + 1) - L) / (L * r - r**m)
    th = np.linspace(math.pi / (m + 1), math.pi / m, 200_001)
    f = np.cos((m + 1) * th / 2) + u * np.cos((m - 1) * th / 2)
    k = int(np.flatnonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0])
    return th[k] - f[k] * (th[k + 1] - th[k]) / (f[k + 1] - f[k])


@pytest.mark.parametrize("ex", OESTERLE_EXAMPLES, ids=lambda e: e.name)
def test_examples_m_and_ceiling(ex):
    r = bounds.oesterle(ex.q, ex.N)
    assert r.m == ex.m
    assert r.g_ceiling == ex.g_ceiling
    assert r.residual < bounds.RESIDUAL_TOL


@pytest.mark.parametrize("ex", OESTERLE_EXAMPLES, ids=lambda e: e.name)
def test_examples_printed_values_that_are_consistent(ex):
    r = bounds.oesterle(ex.q, ex.N)
    for name in ("u", "theta0", "g_min"):
        if (ex.name, name) in OESTERLE_MISPRINTS:
            continue
        printed = getattr(ex, name)
        assert abs(getattr(r, name) - printed.value) <= printed.tol, name


@pytest.mark.parametrize("q,N", [(8, 33), (16, 129), (27, 244), (8, 17), (64, 1025), (81, 2188)])
def test_theta0_agrees_with_a_dense_scan(q, N):
    r = bounds.oesterle(q, N)
    assert abs(r.theta0 - scan_theta0(q, N, r.m)) < 1e-8


def test_recomputed_values_for_inconsistent_printed_cells():
    # computed independently of the printed values; see the examples file for printed ones
    assert bounds.oesterle(8, 33).theta0 == pytest.approx(0.928533, abs=1e-6)
    assert bounds.oesterle(8, 33).g_min == pytest.approx(5.08276, abs=1e-5)
    assert bounds.oesterle(16, 129).theta0 == pytest.approx(0.877239, abs=1e-6)
    assert bounds.oesterle(27, 244).g_min == pytest.approx(25.2363, abs=1e-4)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81]), st.integers(3, 10**6))
def test_m_brackets_n_minus_one(q, N):
    L = N - 1
    if L * L <= q:
        return
    r = bounds.oesterle(q, N)
    assert q**r.m < L * L <= q ** (r.m + 1)
    assert math.pi / (r.m + 1) <= r.theta0 <= math.pi / r.m
    assert r.g_min > -1e-9 and r.g_ceiling >= 0  # the projective line attains g = 0


def test_bound_is_monotone_in_N():
    gs = [bounds.oesterle(16, N).g_min for N in range(30, 400, 7)]
    assert all(a < b for a, b in zip(gs, gs[1:]))


def test_oesterle_input_validation():
    with pytest.raises(InvalidParameters):
        bounds.oesterle(9, 3)
    with pytest.raises(InvalidParameters):
        bounds.oesterle(6, 50)


def test_bisection_reports_missing_sign_change():
    with pytest.raises(ConvergenceError):
        bounds._bisect(lambda x: x * x + 1, 0.0, 1.0)


def test_ceiling_does_not_round_up_noise():
    r = bounds.OesterleResult(4, 5, 1, 0.0, 0.0, 6.0 + 1e-12, 0.0)
    assert r.g_ceiling == 6
    assert r.to_dict()["g_ceiling"] == 6


def test_hasse_weil():
    assert bounds.hasse_weil_max_N(4, 1) == 9
    assert bounds.hasse_weil_max_N(2, 1) == 5  # floor(2 sqrt 2) = 2
    assert bounds.hasse_weil_max_N(9, 3) == 28
    with pytest.raises(InvalidParameters):
        bounds.hasse_weil_max_N(4, -1)


@settings(max_examples=200)
@given(st.integers(2, 10**4), st.integers(0, 10**4))
def test_hasse_weil_is_exact_floor(q, g):
    extra = bounds.hasse_weil_max_N(q, g) - q - 1
    assert extra * extra <= 4 * g * g * q < (extra + 1) ** 2


def test_maximality_threshold():
    assert bounds.maximality_threshold(4) == pytest.approx(1.0)
    assert bounds.maximality_threshold(64) == pytest.approx(28.0)


@pytest.mark.parametrize("d,k,q,N,g,printed,tol", FIXED_JUMP_EXAMPLES)
def test_fixed_jump_examples(d, k, q, N, g, printed, tol):
    assert bounds.fixed_jumps_curve(d, k, q) == (N, g)
    assert abs(float(2 * bounds.ng_ratio_fixed_jumps(d, k, q)) - printed) <= tol


@settings(max_examples=200)
@given(st.integers(2, 200), st.integers(2, 60), st.sampled_from([2, 3, 4, 5, 8, 9, 16]))
def test_fixed_jump_ratio_decreases_in_d(d, k, q):
    assert bounds.ng_ratio_fixed_jumps(d + 1, k, q) < bounds.ng_ratio_fixed_jumps(d, k, q)
    N, g = bounds.fixed_jumps_curve(d, k, q)
    assert bounds.ng_ratio_fixed_jumps(d, k, q) == Fraction(N) / (2 * g)


def test_fixed_jump_validation():
    with pytest.raises(InvalidParameters):
        bounds.ng_ratio_fixed_jumps(1, 3, 2)
    with pytest.raises(InvalidParameters):
        bounds.fixed_jumps_curve(3, 1, 2)


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_trace_norm_ratio_increases_along_divisor_chains(n, q):
    divisors = [m for m in range(1, n) if n % m == 0]
    for a in divisors:
        for b in divisors:
            if a < b and b % a == 0:
                assert bounds.trace_norm_ratio(n, a, q)[2] < bounds.trace_norm_ratio(n, b, q)[2]
    for m in divisors:
        N, g, ratio = bounds.trace_norm_ratio(n, m, q)
        assert ratio == Fraction(N, 2 * g)


def test_trace_norm_ratio_validation():
    with pytest.raises(InvalidParameters):
        bounds.trace_norm_ratio(4, 3, 2)
    with pytest.raises(InvalidParameters):
        bounds.trace_norm_ratio(4, 4, 2)
