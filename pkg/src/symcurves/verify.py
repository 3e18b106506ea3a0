"""Property suites over a parameter grid, recorded into a ``Report``.

Each ``check_*`` helper returns ``(passed, detail)`` and is usable on its own;
the ``run_*`` functions sweep a grid and record one check per grid point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from . import bounds, curves
from .errors import BudgetExceeded, UnsupportedRamification
from .ff import field, prime_power
from .polys import (
    SparsePoly,
    SubgroupV,
    coprime_term_criterion,
    decompose_linearized,
    derivative,
    elementary_symmetric,
    is_permutation,
    linearized_from_subgroup,
    outer_linearized,
    roots_with_multiplicity,
    subgroups,
)
from .reference import FIXED_JUMP_EXAMPLES, OESTERLE_EXAMPLES, GENUS_TABLE
from .report import Report

Result = tuple[bool, str]

SUITES = ("sympoly", "curves", "bounds")


def prime_powers_upto(qmax: int) -> list[int]:
    out = []
    for q in range(2, qmax + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def _s(n: int, q: int, i: int, level) -> SparsePoly:
    return elementary_symmetric(n, q, i, level)


def _level(q: int, k: int):
    p, m = prime_power(q)
    return field(p, m * k)


# -- polynomial identities -------------------------------------------------------------


def check_values_in_base_field(n: int, q: int) -> Result:
    """Every s_{n,i} maps F_{q^n} into F_q."""
    K = _level(q, n)
    xs = K.elements()
    bad = []
    for i in range(1, n + 1):
        vals = _s(n, q, i, K).evaluate_all(xs)
        if not np.array_equal(K.vpow(vals, q), vals):
            bad.append(i)
    return not bad, f"values escape F_q for i={bad}" if bad else f"i=1..{n} over F_{q**n}"


def check_reciprocal(n: int, q: int) -> Result:
    """s_{n,i}(t) = t^deg(s_{n,n}) s_{n,n-i}(1/t), and the matching root bijection on F_{q^n}^*."""
    K = _level(q, n)
    top = _s(n, q, n, K).degree
    xs = K.elements()[1:]
    inv = K.vinv(xs)
    for i in range(0, n + 1):
        a, b = _s(n, q, i, K), _s(n, q, n - i, K)
        if a != SparsePoly(K, {top - e: c for e, c in b.terms.items()}):
            return False, f"reversal identity fails at i={i}"
        if not np.array_equal(a.evaluate_all(xs) == 0, b.evaluate_all(inv) == 0):
            return False, f"root bijection fails at i={i}"
    return True, f"i=0..{n}"


def check_derivative(n: int, q: int) -> Result:
    """d/dt s_{n,i} = s_{n-1,i-1}^q."""
    K = _level(q, 1)
    for i in range(1, n + 1):
        if derivative(_s(n, q, i, K)) != _s(n - 1, q, i - 1, K) ** q:
            return False, f"fails at i={i}"
    return True, f"i=1..{n}"


def check_frobenius_identity(n: int, q: int) -> Result:
    """s^q - s = (t^(q^n) - t) * s_{n-1,i-1}^q."""
    K = _level(q, 1)
    t_part = SparsePoly(K, {q**n: 1, 1: K.neg(1)})
    for i in range(1, n + 1):
        s = _s(n, q, i, K)
        if s**q - s != t_part * _s(n - 1, q, i - 1, K) ** q:
            return False, f"fails at i={i}"
    return True, f"i=1..{n}"


def root_profile(n: int, q: int, i: int) -> list[tuple[int, int, int]]:
    """(d, code, multiplicity) for every root of s_{n,i} of exact degree d <= n over F_q.

    A root of exact degree d is listed once, found in F_{q^d}.
    """
    out = []
    for d in range(1, n + 1):
        L = _level(q, d)
        for root, mult in roots_with_multiplicity(_s(n, q, i, L), L):
            a = root.value
            if all(L.pow(a, q**e) != a for e in range(1, d) if d % e == 0):
                out.append((d, a, mult))
    return out


def check_root_properties(n: int, q: int) -> dict[str, Result]:
    """Root location and multiplicity statements, for all i at one (n, q)."""
    p, _ = prime_power(q)
    found = {k: [] for k in ("complete", "coprime", "location", "double", "binomial")}
    for i in range(1, n + 1):
        prof = root_profile(n, q, i)
        deg = _s(n, q, i, _level(q, 1)).degree
        if sum(m for _, _, m in prof) != deg:
            found["complete"].append(i)
        if any(n % d for d, _, m in prof if m % p):
            found["coprime"].append(i)
        if any(not any(k % d == 0 for k in range(n - i + 1, n + 1)) for d, _, _ in prof):
            found["location"].append(i)
        special = [(d, a) for d, a, m in prof if m > 1 and m % p and (m - 1) % p]
        if any(d != 1 for d, _ in special):
            found["double"].append(i)
        both = math.comb(n, i) % p == 0 and math.comb(n - 1, i - 1) % p == 0
        if not both and any(a != 0 for _, a in special):
            found["binomial"].append(i)
    return {k: (not v, f"violations at i={v}" if v else f"i=1..{n}") for k, v in found.items()}


def check_permutation(n: int, q: int, max_order: int = 4096) -> Result:
    """s_{n,1} permutes F_{q^m} whenever gcd(m, n) = 1 and p does not divide n."""
    p, _ = prime_power(q)
    if n % p == 0:
        return True, "hypothesis p | n, nothing to check"
    ms = [m for m in range(1, 64) if math.gcd(m, n) == 1 and q**m <= max_order]
    bad = [m for m in ms if not is_permutation(_s(n, q, 1, _level(q, m)))]
    return not bad, f"not a permutation for m={bad}" if bad else f"m in {ms}"


def check_linearized(n: int, q: int, max_lines: int = 32) -> Result:
    """L_W is additive on F_{q^n} with root set exactly W.

    W runs over the flag spanned by prefixes of the trace-zero basis and over
    the lines through its first nonzero elements.
    """
    V = curves.trace_zero_group(n, q)
    K = V.field
    xs = K.elements()
    subs = [SubgroupV(K, V.basis[:j]) for j in range(V.dim + 1)]
    subs += [SubgroupV(K, [v]) for v in V.elements[1 : max_lines + 1]]
    for W in subs:
        L = linearized_from_subgroup(W)
        vals = L.evaluate_all(xs)
        if set(np.flatnonzero(vals == 0).tolist()) != set(W.elements):
            return False, f"root set differs from W={W.basis}"
        if K.order <= 256:
            a, b = np.meshgrid(xs, xs)
            if not np.array_equal(vals[K.vadd(a, b)], K.vadd(vals[a], vals[b])):
                return False, f"not additive for W={W.basis}"
    return True, f"{len(subs)} subgroups"


def check_irreducible_rhs(n: int, q: int) -> Result:
    """Every s_{n,i}, 2 <= i <= n, passes the coprime-term test and admits no decomposition."""
    V = curves.trace_zero_group(n, q)
    for i in range(2, n + 1):
        s = _s(n, q, i, V.field)
        if not coprime_term_criterion(s):
            return False, f"coprime-term test fails at i={i}"
        if decompose_linearized(s, V) is not None:
            return False, f"decomposition found at i={i}"
    return True, f"i=2..{n}"


def random_decomposition_instance(rng: np.random.Generator, n: int, q: int, terms: int = 3):
    """(V, W, g, f) with f = L_{W'}(g) for a random W and random g."""
    V = curves.trace_zero_group(n, q)
    K = V.field
    candidates = subgroups(V)
    W = candidates[int(rng.integers(len(candidates)))]
    exps = sorted({int(e) for e in rng.integers(0, 3 * q + 3, size=terms)})
    g = SparsePoly(K, {e: int(rng.integers(1, K.order)) for e in exps})
    return V, W, g, outer_linearized(W, V)(g)


def check_round_trips(count: int = 100, seed: int = 0) -> Result:
    rng = np.random.default_rng(seed)
    grid = [(3, 2), (4, 2), (3, 3), (2, 4), (3, 4)]
    for k in range(count):
        n, q = grid[k % len(grid)]
        V, _, _, f = random_decomposition_instance(rng, n, q)
        found = decompose_linearized(f, V)
        if found is None:
            return False, f"instance {k} (n={n}, q={q}) not decomposed"
        W, g = found
        if outer_linearized(W, V)(g) != f:
            return False, f"instance {k} (n={n}, q={q}) returned an invalid pair"
    return True, f"{count} instances, seed {seed}"


# -- suites -------------------------------------------------------------------------------


def _guarded(report: Report, name: str, fn: Callable[[], Result]) -> None:
    try:
        passed, detail = fn()
    except BudgetExceeded as exc:
        report.skipped.append(f"{name}: {exc}")
        return
    report.check(name, passed, detail)


def run_sympoly(report: Report, qmax: int = 4, nmax: int = 5, seed: int = 0) -> None:
    for q in prime_powers_upto(qmax):
        p, _ = prime_power(q)
        for n in range(2, nmax + 1):
            tag = f"n={n},q={q}"
            _guarded(report, f"sympoly.values-in-Fq[{tag}]", lambda: check_values_in_base_field(n, q))
            _guarded(report, f"sympoly.reciprocal[{tag}]", lambda: check_reciprocal(n, q))
            _guarded(report, f"sympoly.derivative[{tag}]", lambda: check_derivative(n, q))
            _guarded(report, f"sympoly.frobenius-identity[{tag}]", lambda: check_frobenius_identity(n, q))
            try:
                roots = check_root_properties(n, q)
            except BudgetExceeded as exc:
                report.skipped.append(f"sympoly.roots[{tag}]: {exc}")
            else:
                for key, (passed, detail) in roots.items():
                    report.check(f"sympoly.roots-{key}[{tag}]", passed, detail)
            _guarded(report, f"sympoly.permutation[{tag}]", lambda: check_permutation(n, q))
            if q**n <= 1024:
                _guarded(report, f"sympoly.linearized[{tag}]", lambda: check_linearized(n, q))
            # subgroup search grows like p^(dim^2 / 4); stay where it is exhaustive and quick
            if (prime_power(q)[1] * (n - 1)) <= 4 or q**n <= 243:
                _guarded(report, f"sympoly.irreducible-rhs[{tag}]", lambda: check_irreducible_rhs(n, q))
    _guarded(report, "sympoly.decompose-round-trip", lambda: check_round_trips(100, seed))


def _census_ok(spec, report: Report, tag: str) -> None:
    inv = curves.invariants(spec)
    census = curves.count_N1(spec)
    report.check(f"curves.N1[{tag}]", census.N1 == inv.predicted_N1, f"counted {census.N1}, predicted {inv.predicted_N1}")
    report.check(f"curves.hurwitz[{tag}]", inv.hurwitz_ok, f"g={inv.genus}, deg Diff={inv.different_degree}")
    hw = bounds.hasse_weil_max_N(census.constants_order, inv.genus)
    report.check(f"curves.hasse-weil[{tag}]", census.N1 <= hw, f"{census.N1} <= {hw}")


def check_automorphisms(n: int, q: int) -> dict[str, Result]:
    autos = curves.automorphisms(n, q)
    pts = curves.affine_points(n, q)
    point_set = set(pts)
    out: dict[str, Result] = {}
    out["order"] = (len(autos) == q ** (2 * n - 1), f"|pairs| = {len(autos)}")
    out["identity"] = ((0, 0) in autos, "(0, 0) present")
    images = {pair: [curves.apply_automorphism(pair, pt, n, q) for pt in pts] for pair in autos.pairs}
    bij = all(set(img) == point_set and len(set(img)) == len(pts) for img in images.values())
    out["bijective"] = (bij, f"{len(autos)} maps on {len(pts)} points")
    closed = True
    for a in autos.pairs:
        for b in autos.pairs:
            c = curves.compose_pairs(a, b, n, q)
            composed = [curves.apply_automorphism(b, x, n, q) for x in images[a]]
            if c not in autos or images[c] != composed:
                closed = False
                break
        if not closed:
            break
    out["closure"] = (closed, f"{len(autos) ** 2} compositions")
    orbit = curves.orbit_of(pts[0], n, q, autos)
    out["transitive"] = (orbit == point_set, f"orbit size {len(orbit)}")
    return out


def run_curves(report: Report, qmax: int = 3, nmax: int = 4, max_order: int = 2**12) -> None:
    for q in prime_powers_upto(qmax):
        for n in range(2, nmax + 1):
            if q**n > max_order:
                report.skipped.append(f"curves[n={n},q={q}]: F_{q**n} above the suite limit {max_order}")
                continue
            genera, counts = [], []
            for i in range(2, n + 1):
                spec = curves.ArtinSchreierSym(n, q, i)
                tag = f"as,n={n},q={q},i={i}"
                _census_ok(spec, report, tag)
                census = curves.count_N1(spec)
                report.check(
                    f"curves.split-profile[{tag}]",
                    set(census.per_x_histogram) == {q ** (n - 1)},
                    f"fibre sizes {sorted(set(census.per_x_histogram))}",
                )
                genera.append(curves.invariants(spec).genus)
                counts.append(census.N1)
            if n > 2:
                tag = f"n={n},q={q}"
                report.check(f"curves.N1-independent-of-i[{tag}]", len(set(counts)) == 1, f"N1 = {counts}")
                report.check(
                    f"curves.genus-increasing[{tag}]",
                    all(a < b for a, b in zip(genera, genera[1:])),
                    f"g = {genera}",
                )
            for m in range(1, n):
                if n % m == 0:
                    spec = curves.TraceNorm(n, q, m)
                    _census_ok(spec, report, f"tn,n={n},q={q},m={m}")
                    N, g, ratio = bounds.trace_norm_ratio(n, m, q)
                    inv = curves.invariants(spec)
                    report.check(
                        f"curves.trace-norm-closed-form[n={n},q={q},m={m}]",
                        (N, g) == (inv.predicted_N1, inv.genus),
                        f"N={N}, g={g}",
                    )
            for i in range(1, n):
                spec = curves.KummerSym(n, q, i)
                tag = f"kummer,n={n},q={q},i={i}"
                try:
                    _census_ok(spec, report, tag)
                except UnsupportedRamification as exc:
                    report.skipped.append(f"curves.kummer[{tag}]: {exc}")
        # the i = 2, n = 2 curve is the Hermitian one: maximal, no degree-two places
        herm = curves.hermitian(q)
        inv = curves.invariants(herm)
        census = curves.count_N1(herm)
        hw = bounds.hasse_weil_max_N(q * q, inv.genus)
        report.check(f"curves.hermitian-maximal[q={q}]", census.N1 == hw == q**3 + 1, f"N1={census.N1}, bound={hw}")
        _guarded(report, f"curves.hermitian-N2[q={q}]", lambda: (curves.count_N2(herm) == 0, "N2 = 0"))
        gs = curves.GSTowerStep(q)
        _census_ok(gs, report, f"gs,q={q}")
        if 3 <= nmax:
            base = curves.ArtinSchreierSym(3, q, 2)
            sub = curves.Subcover(base, curves.line_subgroup(base).basis)
            inv = curves.invariants(sub)
            _census_ok(sub, report, f"subcover,n=3,q={q}")
            report.check(
                f"curves.subcover-closed-form[q={q}]",
                (inv.genus, inv.different_exponent, inv.predicted_N1)
                == ((q - 1) * q * q // 2, (q - 1) * (q * q + 2), q**4 + 1),
                f"g={inv.genus}, d={inv.different_exponent}",
            )
    for n, q in ((2, 2), (3, 2), (2, 3)):
        if q <= qmax and n <= nmax:
            for key, (passed, detail) in check_automorphisms(n, q).items():
                report.check(f"curves.automorphisms-{key}[n={n},q={q}]", passed, detail)
    for n in range(3, nmax + 1):
        for q in prime_powers_upto(qmax):
            if n in (3, 4, 6) or q ** (2 * n) > 2**16:
                continue
            _guarded(
                report,
                f"curves.no-degree-two-witnesses[n={n},q={q}]",
                lambda: (not curves.degree_two_witnesses(n, q, 2), "empty"),
            )
    if nmax >= 5 and 2 <= qmax:
        spec = curves.ArtinSchreierSym(5, 2, 2)
        _guarded(report, "curves.N2-vanishes[n=5,q=2]", lambda: (curves.count_N2(spec) == 0, "N2 = 0"))
    report.check("curves.kummer-genus[n=3,q=2,i=2]", curves.invariants(curves.KummerSym(3, 2, 2)).genus == 9, "g = 9")
    for n, q in ((3, 2), (4, 2), (3, 3)):
        for i in range(1, n):
            _guarded(report, f"curves.kummer-pairing[n={n},q={q},i={i}]", lambda: (curves.kummer_iso_check(n, q, i), ""))
    for n, q, m in ((3, 2, 1), (3, 2, 2), (5, 2, 2), (5, 2, 3), (4, 3, 3), (3, 4, 2)):
        if q <= qmax:
            got = curves.median_count(n, q, m)
            report.check(f"curves.median[n={n},q={q},m={m}]", got == q**m + 1, f"counted {got}")


def run_bounds(report: Report) -> None:
    for ex in OESTERLE_EXAMPLES:
        r = bounds.oesterle(ex.q, ex.N)
        report.check(f"bounds.oesterle[{ex.name}].m", r.m == ex.m, f"{r.m}")
        for name in ("u", "theta0", "g_min"):
            printed = getattr(ex, name)
            got = getattr(r, name)
            report.check(
                f"bounds.oesterle[{ex.name}].{name}",
                abs(got - printed.value) <= printed.tol,
                f"computed {got:.6g}, printed {printed.value} (tol {printed.tol:g})",
            )
        report.check(f"bounds.oesterle[{ex.name}].ceiling", r.g_ceiling == ex.g_ceiling, f"{r.g_ceiling}")
        report.check(f"bounds.oesterle[{ex.name}].residual", r.residual < bounds.RESIDUAL_TOL, f"{r.residual:.2e}")
    for row in GENUS_TABLE:
        qq = row.q**row.n
        r = bounds.oesterle(qq, row.N)
        report.check(
            f"bounds.table-oesterle[{row.key}]",
            r.g_ceiling == row.oesterle,
            f"ceil({r.g_min:.6g}) = {r.g_ceiling}, printed {row.oesterle}",
        )
    dec = all(
        bounds.ng_ratio_fixed_jumps(d + 1, k, q) < bounds.ng_ratio_fixed_jumps(d, k, q)
        for d in range(2, 65)
        for k in range(2, 33)
        for q in (2, 4, 8, 16)
    )
    report.check("bounds.fixed-jump-ratio-decreasing", dec, "d in 2..64, k in 2..32, q in {2,4,8,16}")
    for d, k, q, N, g, printed, tol in FIXED_JUMP_EXAMPLES:
        N2, g2 = bounds.fixed_jumps_curve(d, k, q)
        ratio = 2 * bounds.ng_ratio_fixed_jumps(d, k, q)
        report.check(
            f"bounds.fixed-jump-example[d={d}]",
            (N2, g2) == (N, g) and abs(float(ratio) - printed) <= tol,
            f"N={N2}, g={g2}, N/g={float(ratio):.4g}",
        )
    for q in (2, 3, 4):
        for n in range(2, 7):
            chain = [m for m in range(1, n) if n % m == 0]
            ratios = [bounds.trace_norm_ratio(n, m, q)[2] for m in chain]
            exact = all(r == Fraction(N, 2 * g) for N, g, r in (bounds.trace_norm_ratio(n, m, q) for m in chain))
            report.check(
                f"bounds.trace-norm-ratio[n={n},q={q}]",
                exact and all(a < b for a, b in zip(ratios, ratios[1:])),
                f"m in {chain}",
            )
    for q in (2, 3):
        for n in (3, 4, 5):
            lhs = q * (q ** (n - 1) - 1) ** 2 / (2 * (q - 1))
            report.check(
                f"bounds.not-maximal[n={n},q={q}]",
                lhs > bounds.maximality_threshold(q**n),
                f"g={lhs:g} > {bounds.maximality_threshold(q**n):.6g}",
            )


def run(report: Report, suite: str = "all", qmax: int | None = None, nmax: int | None = None) -> Report:
    if suite not in SUITES + ("all",):
        raise ValueError(f"unknown suite {suite!r}")
    if suite in ("sympoly", "all"):
        run_sympoly(report, qmax or 4, nmax or 5)
    if suite in ("curves", "all"):
        run_curves(report, qmax or 3, nmax or 4)
    if suite in ("bounds", "all"):
        run_bounds(report)
    return report
