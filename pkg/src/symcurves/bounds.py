"""Genus lower bounds and N/g comparisons.

Floating point is used only where the quantities are genuinely real (the
Oesterlé search); everything rational is computed with ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceError, InvalidParameters
from .ff import prime_power

BISECTION_TOL = 1e-12
BISECTION_MAX_ITER = 200
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class OesterleResult:
    q: int
    N: int
    m: int
    u: float
    theta0: float
    g_min: float
    residual: float

    @property
    def g_ceiling(self) -> int:
        # a bound landing on an integer up to rounding noise should not round up
        return math.ceil(self.g_min - 1e-9)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "N": self.N,
            "m": self.m,
            "u": self.u,
            "theta0": self.theta0,
            "g_min": self.g_min,
            "g_ceiling": self.g_ceiling,
        }


def _oesterle_m(q: int, L: int) -> int:
    """Unique m with sqrt(q)^m < L <= sqrt(q)^(m+1), decided in integers."""
    if L * L <= q:
        raise InvalidParameters(f"N - 1 = {L} must exceed sqrt(q) = {math.sqrt(q):.6g}")
    m = 1
    while q ** (m + 1) < L * L:
        m += 1
    return m


def _bisect(f, a: float, b: float) -> float:
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise ConvergenceError(f"no sign change on [{a}, {b}]: f = {fa}, {fb}")
    for _ in range(BISECTION_MAX_ITER):
        mid = (a + b) / 2
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
        if b - a < BISECTION_TOL:
            break
    return (a + b) / 2


def oesterle(q: int, N: int) -> OesterleResult:
    """Lower bound on the genus of a curve over F_q with N rational places."""
    prime_power(q)
    L = N - 1
    m = _oesterle_m(q, L)
    r = math.sqrt(q)
    u = (r ** (m + 1) - L) / (L * r - r**m)

    def f(theta: float) -> float:
        return math.cos((m + 1) * theta / 2) + u * math.cos((m - 1) * theta / 2)

    theta0 = _bisect(f, math.pi / (m + 1), math.pi / m)
    residual = abs(f(theta0))
    if residual >= RESIDUAL_TOL:
        raise ConvergenceError(f"residual {residual:.3e} at theta0 = {theta0}")
    c = math.cos(theta0)
    g_min = ((L - 1) * r * c + q - L) / (q + 1 - 2 * r * c)
    return OesterleResult(q, N, m, u, theta0, g_min, residual)


def hasse_weil_max_N(q: int, g: int) -> int:
    """q + 1 + floor(2 g sqrt(q)), exactly."""
    if g < 0:
        raise InvalidParameters("genus must be non-negative")
    return q + 1 + math.isqrt(4 * g * g * q)


def maximality_threshold(l: int) -> float:
    """Genus above which no curve over F_l can be maximal: sqrt(l)(sqrt(l) - 1)/2."""
    r = math.sqrt(l)
    return r * (r - 1) / 2


def ng_ratio_fixed_jumps(d: int, k: int, q: int) -> Fraction:
    """N/(2g) for a degree-d extension of F_q(x) with G_0 = ... = G_k and G_(k+1) trivial,
    one totally ramified place and every other rational place split."""
    if d < 2 or k < 2:
        raise InvalidParameters(f"need d >= 2 and k >= 2, got d={d}, k={k}")
    return Fraction(d * q + 1, (d - 1) * (k - 1))


def fixed_jumps_curve(d: int, k: int, q: int) -> tuple[int, Fraction]:
    """(N, g) behind ``ng_ratio_fixed_jumps``; g may be a half-integer for odd data."""
    if d < 2 or k < 2:
        raise InvalidParameters(f"need d >= 2 and k >= 2, got d={d}, k={k}")
    return d * q + 1, Fraction((d - 1) * (k - 1), 2)


def trace_norm_ratio(n: int, m: int, q: int) -> tuple[int, int, Fraction]:
    """(N, g, N/(2g)) for trace(y) = norm(x) taken from F_{q^n} down to F_{q^m}."""
    if m < 1 or n % m or m == n:
        raise InvalidParameters(f"m must be a proper divisor of n, got n={n}, m={m}")
    N = q ** (2 * n - m) + 1
    g = Fraction(q**m * (q ** (n - m) - 1) ** 2, 2 * (q**m - 1))
    if g.denominator != 1:
        raise AssertionError("trace-norm genus is not an integer")  # pragma: no cover
    ratio = Fraction((q**m - 1) * (q**m + q ** (2 * n)), (q**n - q**m) ** 2)
    return N, int(g), ratio
