"""Curve families built from symmetric polynomials: invariants and point censuses.

Families (constants field K = F_{q^n} unless noted):

* ``ArtinSchreierSym(n, q, i)``:  s_{n,1}(y) = s_{n,i}(x),  2 <= i <= n
* ``KummerSym(n, q, i)``:         y^((q^n-1)/(q-1)) = s_{n,i}(x),  1 <= i <= n-1
* ``TraceNorm(n, q, m)``:         trace(y) = norm(x), both taken down to F_{q^m}
* ``Subcover(base, W)``:          L_{W'}(z) = s_{n,i}(x), the fixed field of W
* ``GSTowerStep(q)``:             y^q + y = x^(q+1) / (x^q + x) over F_{q^2}
"""

from __future__ import annotations

import hashlib
import math
from functools import lru_cache
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Union

import numpy as np

from .errors import InvalidParameters, UnsupportedRamification
from .ff import GF, FieldElement, FieldTower, build_tower, field, prime_power, trace_zero_codes
from .polys import (
    LinearizedPoly,
    SparsePoly,
    SubgroupV,
    coprime_degree,
    elementary_symmetric,
    image_subgroup,
    linearized_from_subgroup,
    roots_with_multiplicity,
    squarefree_decomposition,
)


def _geom(q: int, k: int) -> int:
    """1 + q + ... + q^(k-1)."""
    return (q**k - 1) // (q - 1)


# -- curve specifications -------------------------------------------------------


@dataclass(frozen=True)
class ArtinSchreierSym:
    n: int
    q: int
    i: int

    family = "artin-schreier"

    def __post_init__(self):
        prime_power(self.q)
        if self.n < 2 or not 2 <= self.i <= self.n:
            raise InvalidParameters(f"need n >= 2 and 2 <= i <= n, got n={self.n}, i={self.i}")

    def params(self) -> dict:
        return {"n": self.n, "q": self.q, "i": self.i}


def hermitian(q: int) -> ArtinSchreierSym:
    """y^q + y = x^(q+1) over F_{q^2}."""
    return ArtinSchreierSym(2, q, 2)


@dataclass(frozen=True)
class KummerSym:
    n: int
    q: int
    i: int

    family = "kummer"

    def __post_init__(self):
        prime_power(self.q)
        if self.n < 2 or not 1 <= self.i <= self.n - 1:
            raise InvalidParameters(f"need 1 <= i <= n-1, got n={self.n}, i={self.i}")

    def params(self) -> dict:
        return {"n": self.n, "q": self.q, "i": self.i}


@dataclass(frozen=True)
class TraceNorm:
    n: int
    q: int
    m: int

    family = "trace-norm"

    def __post_init__(self):
        prime_power(self.q)
        if self.m < 1 or self.n % self.m or self.m == self.n:
            raise InvalidParameters(f"m must be a proper divisor of n, got n={self.n}, m={self.m}")

    def params(self) -> dict:
        return {"n": self.n, "q": self.q, "m": self.m}


@dataclass(frozen=True)
class GSTowerStep:
    q: int

    family = "gs-tower-step"

    def __post_init__(self):
        prime_power(self.q)

    def params(self) -> dict:
        return {"q": self.q}


@dataclass(frozen=True)
class Subcover:
    """Fixed field of a subgroup W of the trace-zero group V of an ArtinSchreierSym curve.

    ``w_basis`` holds codes of F_{q^n}; W must be a proper nontrivial subgroup of V.
    """

    base: ArtinSchreierSym
    w_basis: tuple[int, ...]

    family = "subcover"

    def __post_init__(self):
        object.__setattr__(self, "w_basis", tuple(int(b) for b in self.w_basis))
        V = trace_zero_group(self.base.n, self.base.q)
        W = SubgroupV(V.field, self.w_basis)
        if not W.issubset(V):
            raise InvalidParameters("W is not contained in the trace-zero group")
        if W.dim == 0 or W.dim == V.dim:
            raise InvalidParameters("W must be a proper nontrivial subgroup")

    def params(self) -> dict:
        return {**self.base.params(), "w_basis": list(self.w_basis)}

    @property
    def W(self) -> SubgroupV:
        return SubgroupV(constants_field(self.base), self.w_basis)


CurveSpec = Union[ArtinSchreierSym, KummerSym, TraceNorm, Subcover, GSTowerStep]


def constants_order(spec: CurveSpec) -> int:
    if isinstance(spec, GSTowerStep):
        return spec.q**2
    if isinstance(spec, Subcover):
        return spec.base.q**spec.base.n
    return spec.q**spec.n


def constants_field(spec: CurveSpec) -> GF:
    p, k = prime_power(constants_order(spec))
    return field(p, k)


def trace_zero_group(n: int, q: int) -> SubgroupV:
    """Elements of F_{q^n} with vanishing trace to F_q."""
    p, m = prime_power(q)
    K = field(p, m * n)
    return SubgroupV.from_elements(K, trace_zero_codes(K, q).tolist())


# -- subcovers ------------------------------------------------------------------


@dataclass(frozen=True)
class SubcoverEquation:
    """L_{W'}(z) = s_{n,i}(x) with W' = L_W(V)."""

    lhs: LinearizedPoly
    rhs: SparsePoly
    degree: int


def subcover_equation(base: ArtinSchreierSym, W: SubgroupV) -> SubcoverEquation:
    V = trace_zero_group(base.n, base.q)
    if W.field != V.field or not W.issubset(V):
        raise InvalidParameters("W is not a subgroup of the trace-zero group")
    W_prime = image_subgroup(linearized_from_subgroup(W), V)
    lhs = linearized_from_subgroup(W_prime)
    rhs = elementary_symmetric(base.n, base.q, base.i, V.field)
    return SubcoverEquation(lhs, rhs, len(V) // len(W))


def line_subgroup(base: ArtinSchreierSym, b: int | None = None) -> SubgroupV:
    """F_q * b for a nonzero trace-zero b (default: the first one in code order)."""
    V = trace_zero_group(base.n, base.q)
    K = V.field
    if b is None:
        b = next(v for v in V.elements if v)
    if b == 0 or b not in V:
        raise InvalidParameters("b must be a nonzero trace-zero element")
    _, m = prime_power(base.q)
    Fq = [c for c in range(K.order) if K.pow(c, base.q) == c] if m > 1 else list(range(K.p))
    return SubgroupV.from_elements(K, {K.mul(c, b) for c in Fq})


# -- equations --------------------------------------------------------------


@dataclass(frozen=True)
class AffineEquation:
    """lhs(y) = num(x) / den(x); ``den`` is None for polynomial right sides."""

    lhs: SparsePoly
    num: SparsePoly
    den: SparsePoly | None = None


@lru_cache(maxsize=256)
def equation(spec: CurveSpec) -> AffineEquation:
    K = constants_field(spec)
    if isinstance(spec, ArtinSchreierSym):
        return AffineEquation(
            elementary_symmetric(spec.n, spec.q, 1, K),
            elementary_symmetric(spec.n, spec.q, spec.i, K),
        )
    if isinstance(spec, KummerSym):
        return AffineEquation(
            SparsePoly.monomial(K, _geom(spec.q, spec.n)),
            elementary_symmetric(spec.n, spec.q, spec.i, K),
        )
    if isinstance(spec, TraceNorm):
        r, Q = spec.n // spec.m, spec.q**spec.m
        return AffineEquation(elementary_symmetric(r, Q, 1, K), elementary_symmetric(r, Q, r, K))
    if isinstance(spec, Subcover):
        eq = subcover_equation(spec.base, spec.W)
        return AffineEquation(eq.lhs.as_sparse(), eq.rhs)
    if isinstance(spec, GSTowerStep):
        q = spec.q
        return AffineEquation(
            SparsePoly(K, {q: 1, 1: 1}),
            SparsePoly.monomial(K, q + 1),
            SparsePoly(K, {q: 1, 1: 1}),
        )
    raise InvalidParameters(f"unknown curve family {spec!r}")


# -- closed-form invariants --------------------------------------------------------


@dataclass(frozen=True)
class RamifiedPlace:
    """Ramification data above one place (or a group of conjugate places) of K(x).

    ``degree`` is the residue degree of the place below, or the total over a
    group of non-rational places sharing the same data.
    """

    label: str
    degree: int
    e: int
    d: int
    v: int | None = None
    r: int | None = None

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("label", "degree", "v", "r", "e", "d")}


@dataclass(frozen=True)
class CurveInvariants:
    family: str
    params: dict
    constants_order: int
    degree: int
    genus: int
    predicted_N1: int
    coprime_degree: int | None
    different_exponent: int | None
    ramification_break: int | None
    ramified_places: tuple[RamifiedPlace, ...]

    @property
    def different_degree(self) -> int:
        return sum(pl.degree * (self.degree // pl.e) * pl.d for pl in self.ramified_places)

    @property
    def hurwitz_ok(self) -> bool:
        return 2 * self.genus - 2 == -2 * self.degree + self.different_degree

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "constants_order": self.constants_order,
            "degree": self.degree,
            "genus": self.genus,
            "predicted_N1": self.predicted_N1,
            "coprime_degree": self.coprime_degree,
            "different_exponent": self.different_exponent,
            "ramification_break": self.ramification_break,
            "different_degree": self.different_degree,
            "hurwitz_ok": self.hurwitz_ok,
            "ramified_places": [pl.to_dict() for pl in self.ramified_places],
        }


def coprime_degree_formula(n: int, q: int, i: int) -> int:
    """q^(n-1) + ... + q^(n-i+1) + 1."""
    return sum(q ** (n - j) for j in range(1, i)) + 1


def _wild_invariants(spec, degree: int, pole: int, N1: int, genus: int | None = None) -> CurveInvariants:
    """One totally ramified place at infinity with a single break at the pole order."""
    d = (degree - 1) * (pole + 1)
    g = (degree - 1) * (pole - 1) // 2 if genus is None else genus
    return CurveInvariants(
        family=spec.family,
        params=spec.params(),
        constants_order=constants_order(spec),
        degree=degree,
        genus=g,
        predicted_N1=N1,
        coprime_degree=pole,
        different_exponent=d,
        ramification_break=pole,
        ramified_places=(RamifiedPlace("inf", 1, degree, d),),
    )


def invariants(spec: CurveSpec) -> CurveInvariants:
    if isinstance(spec, ArtinSchreierSym):
        n, q, i = spec.n, spec.q, spec.i
        return _wild_invariants(spec, q ** (n - 1), coprime_degree_formula(n, q, i), q ** (2 * n - 1) + 1)
    if isinstance(spec, TraceNorm):
        n, q, m = spec.n, spec.q, spec.m
        r, Q = n // m, q**m
        genus_num = q**m * (q ** (n - m) - 1) ** 2
        if genus_num % (2 * (q**m - 1)):
            raise AssertionError("trace-norm genus is not an integer")  # pragma: no cover
        return _wild_invariants(
            spec, q ** (n - m), coprime_degree_formula(r, Q, r), q ** (2 * n - m) + 1, genus_num // (2 * (q**m - 1))
        )
    if isinstance(spec, Subcover):
        base = spec.base
        V = trace_zero_group(base.n, base.q)
        degree = len(V) // len(spec.W)
        return _wild_invariants(
            spec, degree, coprime_degree_formula(base.n, base.q, base.i), base.q**base.n * degree + 1
        )
    if isinstance(spec, GSTowerStep):
        q = spec.q
        d = 2 * (q - 1)
        places = [RamifiedPlace("inf", 1, q, d)]
        K = constants_field(spec)
        for a in trace_zero_codes(K, q).tolist():
            if a:
                places.append(RamifiedPlace(f"x={a}", 1, q, d))
        return CurveInvariants(
            family=spec.family,
            params=spec.params(),
            constants_order=q**2,
            degree=q,
            genus=(q - 1) ** 2,
            predicted_N1=q**3 - q**2 + 2 * q,
            coprime_degree=1,
            different_exponent=d,
            ramification_break=1,
            ramified_places=tuple(places),
        )
    if isinstance(spec, KummerSym):
        return _kummer_invariants(spec)
    raise InvalidParameters(f"unknown curve family {spec!r}")


def _kummer_invariants(spec: KummerSym) -> CurveInvariants:
    """Tame cyclic cover: genus from Hurwitz with d = e - 1 at every ramified place."""
    n, q, i = spec.n, spec.q, spec.i
    D = _geom(q, n)
    K = constants_field(spec)
    s = elementary_symmetric(n, q, i, K)
    v_inf = q ** (n - i) * _geom(q, i)
    if s.degree != v_inf:
        raise AssertionError("pole order of s_{n,i} disagrees with its degree")  # pragma: no cover

    places: list[RamifiedPlace] = []

    def add(label: str, degree: int, v: int) -> None:
        r = math.gcd(D, v)
        if r > 1:
            raise UnsupportedRamification(
                f"{label}: r = gcd({D}, {v}) = {r} > 1, residue degrees above it are not determined"
            )
        places.append(RamifiedPlace(label, degree, D // r, D // r - 1, v, r))

    add("inf", 1, v_inf)
    rational = roots_with_multiplicity(s, K)
    for root, mult in rational:
        if root.value == 0 and mult != _geom(q, i):
            raise AssertionError("valuation at x = 0 disagrees with (q^i - 1)/(q - 1)")  # pragma: no cover
        add(f"x={root.value}", 1, mult)
    rational_by_mult: dict[int, int] = {}
    for _, mult in rational:
        rational_by_mult[mult] = rational_by_mult.get(mult, 0) + 1
    for factor, mult in squarefree_decomposition(s):
        extra = factor.degree - rational_by_mult.get(mult, 0)
        if extra:
            add(f"non-rational zeros of multiplicity {mult}", extra, mult)

    diff = sum(pl.degree * pl.d for pl in places)
    two_g = -2 * D + diff + 2
    if two_g % 2:
        raise AssertionError("Hurwitz formula gave a half-integer genus")  # pragma: no cover
    return CurveInvariants(
        family=spec.family,
        params=spec.params(),
        constants_order=q**n,
        degree=D,
        genus=two_g // 2,
        predicted_N1=(q**n - len(rational)) * D + len(rational) + 1,
        coprime_degree=coprime_degree(s),
        different_exponent=None,
        ramification_break=None,
        ramified_places=tuple(places),
    )


# -- brute-force censuses ------------------------------------------------------------


@dataclass(frozen=True)
class PlaceCensus:
    family: str
    params: dict
    constants_order: int
    N1: int
    per_x_histogram: tuple[int, ...]
    infinity_contribution: int
    N2: int | None = None

    def histogram_digest(self) -> str:
        data = ",".join(map(str, self.per_x_histogram)).encode()
        return hashlib.sha256(data).hexdigest()[:16]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "constants_order": self.constants_order,
            "N1": self.N1,
            "N2": self.N2,
            "infinity_contribution": self.infinity_contribution,
            "histogram_digest": self.histogram_digest(),
            "histogram_summary": _summarize(self.per_x_histogram),
        }


def _summarize(hist: Iterable[int]) -> dict[str, int]:
    counts: dict[int, int] = {}
    for h in hist:
        counts[h] = counts.get(h, 0) + 1
    return {str(k): v for k, v in sorted(counts.items())}


def _lhs_histogram(lhs: SparsePoly, L: GF) -> np.ndarray:
    return np.bincount(lhs.evaluate_all(L.elements()), minlength=L.order)


def _per_x_counts(eq: AffineEquation, L: GF) -> np.ndarray:
    """Number of y in L solving the equation, for each x in L (poles give 0 here)."""
    hist = _lhs_histogram(eq.lhs, L)
    xs = L.elements()
    num = eq.num.evaluate_all(xs)
    if eq.den is None:
        return hist[num]
    den = eq.den.evaluate_all(xs)
    safe = np.where(den == 0, 1, den)
    rhs = L.vmul(num, L.vinv(safe))
    return np.where(den == 0, 0, hist[rhs])


def count_N1(spec: CurveSpec, tower: FieldTower | None = None) -> PlaceCensus:
    """Count degree-one places by enumerating affine solutions over the constants field."""
    K = tower.top if tower is not None else constants_field(spec)
    if K.order != constants_order(spec):
        raise InvalidParameters("tower top level is not the constants field of this curve")
    eq = equation(spec)
    per_x = _per_x_counts(eq, K)

    if isinstance(spec, KummerSym):
        D = _geom(spec.q, spec.n)
        if math.gcd(D, eq.num.degree) > 1:
            raise UnsupportedRamification("place at infinity has r > 1")
        for root, mult in roots_with_multiplicity(eq.num, K):
            if math.gcd(D, mult) > 1:
                raise UnsupportedRamification(f"place x={root.value} has r > 1")
    if isinstance(spec, GSTowerStep):
        # x = 0 is a common zero of numerator and denominator: x^(q+1)/(x^q+x) = x^q/(x^(q-1)+1)
        hist = _lhs_histogram(eq.lhs, K)
        poles = np.flatnonzero(eq.den.evaluate_all(K.elements()) == 0)
        per_x = per_x.copy()
        for a in poles.tolist():
            per_x[a] = int(hist[0]) if a == 0 else 1

    return PlaceCensus(
        family=spec.family,
        params=spec.params(),
        constants_order=K.order,
        N1=int(per_x.sum()) + 1,
        per_x_histogram=tuple(int(h) for h in per_x),
        infinity_contribution=1,
    )


def _affine_count_over(spec: CurveSpec, L: GF, tower: FieldTower) -> int:
    eq = equation(spec)
    K = eq.lhs.field
    emb = tower.embedding(K, L)
    moved = AffineEquation(eq.lhs.rehome(L, emb), eq.num.rehome(L, emb))
    return int(_per_x_counts(moved, L).sum())


def count_N2(spec: CurveSpec, tower: FieldTower | None = None) -> int:
    """Degree-two places: new affine points over F_{q^{2n}}, paired by conjugation.

    Only for the Artin-Schreier type families, whose finite places are all unramified.
    """
    if not isinstance(spec, (ArtinSchreierSym, TraceNorm, Subcover)):
        raise InvalidParameters(f"degree-two count is not supported for the {spec.family} family")
    K = constants_field(spec)
    if tower is None:
        tower = build_tower(K.p, 1, K.k)
    small = _affine_count_over(spec, tower.top, tower)
    big = _affine_count_over(spec, tower.double, tower)
    if (big - small) % 2:
        raise AssertionError("new points do not pair up under conjugation")  # pragma: no cover
    return (big - small) // 2


def degree_two_witnesses(n: int, q: int, i: int, tower: FieldTower | None = None) -> list[FieldElement]:
    """All a in F_{q^{2n}} outside F_{q^n} with s_{n-1,i-1}(a) in F_{q^n}."""
    if n < 2 or not 1 <= i <= n:
        raise InvalidParameters(f"need 1 <= i <= n, got n={n}, i={i}")
    p, m = prime_power(q)
    L = tower.double if tower is not None else field(p, 2 * m * n)
    xs = L.elements()
    big = q**n
    vals = elementary_symmetric(n - 1, q, i - 1, L).evaluate_all(xs)
    hit = (L.vpow(vals, big) == vals) & (L.vpow(xs, big) != xs)
    return [FieldElement(L, int(a)) for a in np.flatnonzero(hit)]


# -- the automorphism group of the i = 2 family ------------------------------------------


@dataclass(frozen=True)
class AutomorphismSet:
    """Pairs (delta, tau) with s_{n,1}(delta) = s_{n,2}(tau), acting by
    (x, y) -> (x + tau, y + x * (tau^q + ... + tau^(q^(n-1))) + delta)."""

    n: int
    q: int
    field: GF
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return tuple(pair) in set(self.pairs)


def _shift_coefficient(F: GF, n: int, q: int, tau: int) -> int:
    acc = 0
    for j in range(1, n):
        acc = F.add(acc, F.pow(tau, q**j))
    return acc


def affine_points(n: int, q: int, i: int = 2) -> list[tuple[int, int]]:
    """Affine solutions (x, y) over F_{q^n} of s_{n,1}(y) = s_{n,i}(x), as codes."""
    eq = equation(ArtinSchreierSym(n, q, i))
    K = eq.lhs.field
    lhs = eq.lhs.evaluate_all(K.elements())
    rhs = eq.num.evaluate_all(K.elements())
    by_value: dict[int, list[int]] = {}
    for y, v in enumerate(lhs.tolist()):
        by_value.setdefault(v, []).append(y)
    return [(x, y) for x, v in enumerate(rhs.tolist()) for y in by_value.get(v, [])]


def automorphisms(n: int, q: int, tower: FieldTower | None = None) -> AutomorphismSet:
    eq = equation(ArtinSchreierSym(n, q, 2))
    K = eq.lhs.field
    pairs = sorted((delta, tau) for tau, delta in affine_points(n, q, 2))
    return AutomorphismSet(n, q, K, tuple(pairs))


def _on_curve(n: int, q: int, point: tuple[int, int]) -> bool:
    eq = equation(ArtinSchreierSym(n, q, 2))
    x, y = point
    return eq.lhs(y) == eq.num(x)


def apply_automorphism(pair: tuple[int, int], point: tuple[int, int], n: int, q: int) -> tuple[int, int]:
    if not _on_curve(n, q, point):
        raise InvalidParameters(f"point {point} is not on the curve")
    p, m = prime_power(q)
    F = field(p, m * n)
    delta, tau = pair
    x, y = point
    return F.add(x, tau), F.add(F.add(y, F.mul(x, _shift_coefficient(F, n, q, tau))), delta)


def compose_pairs(first: tuple[int, int], second: tuple[int, int], n: int, q: int) -> tuple[int, int]:
    """The pair whose map is 'apply ``first``, then ``second``'."""
    p, m = prime_power(q)
    F = field(p, m * n)
    d1, t1 = first
    d2, t2 = second
    delta = F.add(F.add(d1, d2), F.mul(t1, _shift_coefficient(F, n, q, t2)))
    return delta, F.add(t1, t2)


def orbit_of(point: tuple[int, int], n: int, q: int, autos: AutomorphismSet | None = None) -> set[tuple[int, int]]:
    autos = autos or automorphisms(n, q)
    return {apply_automorphism(pair, point, n, q) for pair in autos.pairs}


# -- other checks -----------------------------------------------------------------------


def median_count(n: int, q: int, m: int, i: int = 2) -> int:
    """Degree-one places of s_{n,1}(y) = s_{n,i}(x) over the constants field F_{q^m}."""
    p, e = prime_power(q)
    if math.gcd(m, n) != 1 or n % p == 0:
        raise InvalidParameters(f"need gcd(m, n) = 1 and p not dividing n, got n={n}, m={m}, p={p}")
    L = field(p, e * m)
    eq = AffineEquation(elementary_symmetric(n, q, 1, L), elementary_symmetric(n, q, i, L))
    return int(_per_x_counts(eq, L).sum()) + 1


def kummer_iso_check(n: int, q: int, i: int, tower: FieldTower | None = None) -> bool:
    """Necessary condition for the i and n-i Kummer curves being isomorphic."""
    if 2 * i == n:
        return True
    a, b = KummerSym(n, q, i), KummerSym(n, q, n - i)
    ia, ib = invariants(a), invariants(b)
    if (ia.degree, ia.genus) != (ib.degree, ib.genus):
        return False
    return count_N1(a, tower).N1 == count_N1(b, tower).N1


def spec_from_dict(family: str, params: dict) -> CurveSpec:
    if family == ArtinSchreierSym.family:
        return ArtinSchreierSym(params["n"], params["q"], params["i"])
    if family == KummerSym.family:
        return KummerSym(params["n"], params["q"], params["i"])
    if family == TraceNorm.family:
        return TraceNorm(params["n"], params["q"], params["m"])
    if family == GSTowerStep.family:
        return GSTowerStep(params["q"])
    if family == Subcover.family:
        base = ArtinSchreierSym(params["n"], params["q"], params["i"])
        return Subcover(base, tuple(params["w_basis"]))
    raise InvalidParameters(f"unknown family {family!r}")
