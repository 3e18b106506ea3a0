"""Sparse polynomials over a field level, symmetric and linearized polynomials.

Coefficients are stored as integer codes of the owning level (see ``ff``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import ExponentOverflow, InvalidParameters
from .ff import GF, FieldElement, check_budget

MAX_EXPONENT = 2**63 - 1


def _checked(e: int) -> int:
    if e < 0 or e > MAX_EXPONENT:
        raise ExponentOverflow(f"exponent {e} outside the signed 64-bit range")
    return e


@dataclass(frozen=True, eq=False)
class SparsePoly:
    """Univariate polynomial as exponent -> nonzero coefficient code."""

    field: GF
    terms: Mapping[int, int] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            if not 0 <= c < self.field.order:
                raise InvalidParameters(f"coefficient code {c} out of range")
            if c:
                clean[_checked(int(e))] = int(c)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, field: GF, e: int, c: int = 1) -> SparsePoly:
        return cls(field, {e: c})

    @classmethod
    def constant(cls, field: GF, c: int) -> SparsePoly:
        return cls(field, {0: c})

    @classmethod
    def from_dense(cls, field: GF, coeffs: Sequence[int]) -> SparsePoly:
        return cls(field, {j: c for j, c in enumerate(coeffs) if c})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparsePoly) and self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, tuple(self.terms.items())))

    def __repr__(self) -> str:
        return f"SparsePoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*t^{e}" for e, c in sorted(self.terms.items(), reverse=True))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return max(self.terms) if self.terms else -1

    @property
    def leading(self) -> tuple[int, int]:
        e = self.degree
        return e, self.terms[e]

    def coeff(self, e: int) -> int:
        return self.terms.get(e, 0)

    def exponents(self) -> list[int]:
        return list(self.terms)

    # -- ring operations ------------------------------------------------------

    def _same(self, other: SparsePoly) -> None:
        if self.field != other.field:
            raise InvalidParameters("polynomials over different levels")

    def __add__(self, other: SparsePoly) -> SparsePoly:
        self._same(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return SparsePoly(F, out)

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.field, {e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        self._same(other)
        F = self.field
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _checked(e1 + e2)
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return SparsePoly(F, out)

    def __pow__(self, e: int) -> SparsePoly:
        """Plain repeated squaring, deliberately not using the Frobenius shortcut."""
        if e < 0:
            raise InvalidParameters("negative polynomial power")
        result, base = SparsePoly.constant(self.field, 1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> SparsePoly:
        return SparsePoly(self.field, {e: self.field.mul(c, v) for e, v in self.terms.items()})

    def frobenius_power(self, j: int = 1) -> SparsePoly:
        """self^(p^j), computed termwise since p-th powering is additive."""
        P = self.field.p**j
        return SparsePoly(self.field, {_checked(e * P): self.field.pow(c, P) for e, c in self.terms.items()})

    def compose_power(self, r: int) -> SparsePoly:
        """self(t^r)."""
        return SparsePoly(self.field, {_checked(e * r): c for e, c in self.terms.items()})

    def rehome(self, target: GF, embedding: np.ndarray | None = None) -> SparsePoly:
        """The same polynomial with coefficients mapped into ``target``.

        Without an embedding array only prime-field coefficients can be moved.
        """
        if target == self.field:
            return self
        if embedding is None:
            if any(c >= self.field.p for c in self.terms.values()) or target.p != self.field.p:
                raise InvalidParameters("coefficients outside the prime field need an embedding")
            return SparsePoly(target, dict(self.terms))
        return SparsePoly(target, {e: int(embedding[c]) for e, c in self.terms.items()})

    # -- evaluation -----------------------------------------------------------

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for e, c in self.terms.items():
            acc = F.add(acc, F.mul(c, F.pow(x, e)))
        return acc

    def evaluate_all(self, xs: np.ndarray) -> np.ndarray:
        F = self.field
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for e, c in self.terms.items():
            acc = F.vadd(acc, F.vmul(F.vpow(xs, e), c))
        return acc

    def to_dense(self) -> list[int]:
        out = [0] * (self.degree + 1)
        for e, c in self.terms.items():
            out[e] = c
        return out

    def derivative(self) -> SparsePoly:
        F = self.field
        return SparsePoly(F, {e - 1: F.mul(F.scalar(e), c) for e, c in self.terms.items() if e % F.p})


def derivative(f: SparsePoly) -> SparsePoly:
    return f.derivative()


def evaluate(f: SparsePoly, e: FieldElement, embedding: np.ndarray | None = None) -> FieldElement:
    """Value of f at e; f is moved to e's level when its coefficients allow it."""
    if e.field != f.field:
        f = f.rehome(e.field, embedding)
    return FieldElement(e.field, f(e.value))


def elementary_symmetric(n: int, q: int, i: int, level: GF) -> SparsePoly:
    """Sum over i-subsets S of {0..n-1} of t^(sum of q^j for j in S).

    ``i = 0`` gives the constant 1 (empty product), which keeps index shifts
    such as s_{n-1,i-1} total.
    """
    if n < 1 or not 0 <= i <= n:
        raise InvalidParameters(f"need 0 <= i <= n, got n={n}, i={i}")
    powers = [_checked(q**j) for j in range(n)]
    terms = {_checked(sum(S)): 1 for S in itertools.combinations(powers, i)}
    return SparsePoly(level, terms)


def coprime_degree(f: SparsePoly, p: int | None = None) -> int | None:
    p = p or f.field.p
    coprime = [e for e in f.terms if e % p]
    return max(coprime) if coprime else None


def coprime_term_criterion(f: SparsePoly, p: int | None = None) -> bool:
    """True when some coprime-degree term d has no companion terms d*p^j, j >= 1.

    Such an f is not the image of any linearized polynomial, so L(T) - f(x)
    is absolutely irreducible for every additive subgroup.
    """
    p = p or f.field.p
    top = f.degree
    for d in f.terms:
        if d % p == 0:
            continue
        k = d * p
        clash = False
        while k <= top:
            if k in f.terms:
                clash = True
                break
            k *= p
        if not clash:
            return True
    return False


# -- dense helpers over a level, lowest degree first --------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_mul(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _dense_divmod(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    a, b = _trim(list(a)), _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(a) < len(b):
        return [], a
    inv = F.inv(b[-1])
    quot = [0] * (len(a) - len(b) + 1)
    for s in range(len(a) - len(b), -1, -1):
        c = F.mul(a[s + len(b) - 1], inv)
        quot[s] = c
        if c:
            for j, bj in enumerate(b):
                a[s + j] = F.sub(a[s + j], F.mul(c, bj))
    return _trim(quot), _trim(a[: len(b) - 1])


def _dense_monic(F: GF, a: list[int]) -> list[int]:
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def _dense_gcd(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _dense_divmod(F, a, b)[1]
    return _dense_monic(F, a) if a else a


def _dense_derivative(F: GF, a: Sequence[int]) -> list[int]:
    return _trim([F.mul(F.scalar(j), c) for j, c in enumerate(a)][1:])


def _synthetic_division(F: GF, a: Sequence[int], root: int) -> tuple[list[int], int]:
    """Divide by (t - root); returns quotient and remainder."""
    n = len(a) - 1
    quot = [0] * n
    carry = 0
    for j in range(n, 0, -1):
        carry = F.add(a[j], F.mul(carry, root))
        quot[j - 1] = carry
    rem = F.add(a[0], F.mul(carry, root))
    return quot, rem


def squarefree_decomposition(f: SparsePoly) -> list[tuple[SparsePoly, int]]:
    """Pairs (g, m): g is the monic product of the distinct roots of f of multiplicity exactly m."""
    if f.is_zero:
        raise InvalidParameters("zero polynomial")
    F = f.field
    result: dict[int, list[int]] = {}

    def collect(a: list[int], scale: int) -> None:
        c = _dense_gcd(F, a, _dense_derivative(F, a))
        w = _dense_divmod(F, a, c)[0] if c else a
        i = 1
        while len(w) > 1:
            y = _dense_gcd(F, w, c)
            fac = _dense_divmod(F, w, y)[0]
            if len(fac) > 1:
                m = i * scale
                result[m] = _dense_mul(F, result.get(m, [1]), fac)
            c = _dense_divmod(F, c, y)[0]
            w = y
            i += 1
        if len(c) > 1:
            p = F.p
            root = [F.pth_root(c[j]) for j in range(0, len(c), p)]
            collect(root, scale * p)

    a = _dense_monic(F, f.to_dense())
    if len(a) > 1:
        collect(a, 1)
    return [(SparsePoly.from_dense(F, g), m) for m, g in sorted(result.items())]


def roots_with_multiplicity(f: SparsePoly, level: GF | None = None) -> list[tuple[FieldElement, int]]:
    """Roots of f in ``level`` with multiplicities found by repeated exact division."""
    if f.is_zero:
        raise InvalidParameters("the zero polynomial has every element as a root")
    level = level or f.field
    f = f.rehome(level)
    check_budget(level.order)
    roots = np.flatnonzero(f.evaluate_all(level.elements()) == 0)
    dense = f.to_dense()
    out = []
    for r in roots.tolist():
        a, mult = dense, 0
        while len(a) > 1:
            quot, rem = _synthetic_division(level, a, r)
            if rem:
                break
            a, mult = quot, mult + 1
        out.append((FieldElement(level, r), mult))
    return out


def is_permutation(f: SparsePoly, level: GF | None = None) -> bool:
    level = level or f.field
    f = f.rehome(level)
    check_budget(level.order)
    values = f.evaluate_all(level.elements())
    return len(np.unique(values)) == level.order


# -- additive subgroups and linearized polynomials ----------------------------


def _span(F: GF, gens: Iterable[int]) -> tuple[frozenset[int], tuple[int, ...]]:
    elems = {0}
    basis = []
    for g in gens:
        if g in elems:
            continue
        basis.append(g)
        multiples = [F.mul(c, g) for c in range(F.p)]
        elems = {F.add(s, m) for s in elems for m in multiples}
    return frozenset(elems), tuple(basis)


def _greedy_basis(F: GF, elems: Iterable[int]) -> tuple[int, ...]:
    return _span(F, sorted(elems))[1]


class SubgroupV:
    """A finite F_p-subspace of a level, kept with its full element list."""

    def __init__(self, level: GF, basis: Sequence[int | FieldElement]):
        codes = [int(b) for b in basis]
        elems, independent = _span(level, codes)
        if len(independent) != len(codes):
            raise InvalidParameters("basis is not F_p-linearly independent")
        self.field = level
        self.elements = tuple(sorted(elems))
        self._set = elems
        self.basis = _greedy_basis(level, elems)

    @classmethod
    def span(cls, level: GF, gens: Iterable[int | FieldElement]) -> SubgroupV:
        return cls(level, _span(level, [int(g) for g in gens])[1])

    @classmethod
    def from_elements(cls, level: GF, elems: Iterable[int | FieldElement]) -> SubgroupV:
        elems = {int(e) for e in elems}
        sub = cls.span(level, elems)
        if sub._set != frozenset(elems) | {0}:
            raise InvalidParameters("element set is not closed under addition")
        return sub

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e: int | FieldElement) -> bool:
        return int(e) in self._set

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubgroupV) and self.field == other.field and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.field, self.elements))

    def __repr__(self) -> str:
        return f"SubgroupV({self.field!r}, basis={list(self.basis)})"

    def issubset(self, other: SubgroupV) -> bool:
        return self._set <= other._set

    def sort_key(self) -> tuple:
        return (self.dim, tuple(sorted(self.basis)))


def subgroups(V: SubgroupV, proper: bool = True, nontrivial: bool = True) -> list[SubgroupV]:
    """All F_p-subspaces of V, by dimension then by sorted canonical basis."""
    F = V.field
    layers = [{frozenset({0})}]
    for _ in range(V.dim):
        nxt = set()
        for S in layers[-1]:
            for v in V.elements:
                if v not in S:
                    nxt.add(_span(F, sorted(S) + [v])[0])
        layers.append(nxt)
    found = [SubgroupV.span(F, S) for layer in layers for S in layer]
    found = [W for W in found if not (proper and W.dim == V.dim) and not (nontrivial and W.dim == 0)]
    return sorted(found, key=SubgroupV.sort_key)


@dataclass(frozen=True, eq=False)
class LinearizedPoly:
    """sum_j a_j T^(p^j); ``coeffs[j]`` is the code of a_j."""

    field: GF
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @classmethod
    def from_sparse(cls, f: SparsePoly) -> LinearizedPoly:
        p = f.field.p
        coeffs: dict[int, int] = {}
        for e, c in f.terms.items():
            j = 0
            while p**j < e:
                j += 1
            if p**j != e:
                raise InvalidParameters(f"term of degree {e} is not at a power of p")
            coeffs[j] = c
        return cls(f.field, tuple(coeffs.get(j, 0) for j in range(max(coeffs, default=-1) + 1)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearizedPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __str__(self) -> str:
        return str(self.as_sparse())

    @property
    def p_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return self.field.p ** self.p_degree if self.coeffs else -1

    def as_sparse(self) -> SparsePoly:
        p = self.field.p
        return SparsePoly(self.field, {p**j: c for j, c in enumerate(self.coeffs) if c})

    def evaluate(self, x: int) -> int:
        F = self.field
        acc = 0
        for j, c in enumerate(self.coeffs):
            if c:
                acc = F.add(acc, F.mul(c, F.pow(x, F.p**j)))
        return acc

    def evaluate_all(self, xs: np.ndarray) -> np.ndarray:
        return self.as_sparse().evaluate_all(xs)

    def __call__(self, g: SparsePoly) -> SparsePoly:
        """The composition L(g(x))."""
        F = self.field
        out = SparsePoly(F)
        for j, c in enumerate(self.coeffs):
            if c:
                out = out + g.frobenius_power(j).scale(c)
        return out

    def rehome(self, target: GF, embedding: np.ndarray | None = None) -> LinearizedPoly:
        return LinearizedPoly.from_sparse(self.as_sparse().rehome(target, embedding))


def linearized_from_subgroup(W: SubgroupV) -> LinearizedPoly:
    """Expand the product of (T - w) over w in W."""
    F = W.field
    poly = [1]
    for w in W.elements:
        poly = _dense_mul(F, poly, [F.neg(w), 1])
    return LinearizedPoly.from_sparse(SparsePoly.from_dense(F, poly))


def image_subgroup(L: LinearizedPoly, V: SubgroupV) -> SubgroupV:
    """L(V), which is again an additive subgroup."""
    return SubgroupV.from_elements(V.field, {L.evaluate(v) for v in V.elements})


def _solve_constant(L: LinearizedPoly, c: int) -> int | None:
    F = L.field
    check_budget(F.order)
    hits = np.flatnonzero(L.evaluate_all(F.elements()) == c)
    return int(hits[0]) if len(hits) else None


def peel_linearized(L: LinearizedPoly, f: SparsePoly) -> SparsePoly | None:
    """The unique g with L(g) = f, found by cancelling leading terms, or None."""
    F = f.field
    J = L.p_degree
    P = F.p**J
    top_inv = F.inv(L.coeffs[-1])
    residue = f
    g_terms: dict[int, int] = {}
    while not residue.is_zero:
        E, c = residue.leading
        if E == 0 and J > 0:
            b = _solve_constant(L, c)
            if b is None:
                return None
            g_terms[0] = b
            residue = residue - L(SparsePoly.constant(F, b))
            continue
        if E % P:
            return None
        e = E // P
        b = F.pth_root(F.mul(c, top_inv), J)
        g_terms[e] = b
        residue = residue - L(SparsePoly.monomial(F, e, b))
    return SparsePoly(F, g_terms)


def decompose_linearized(f: SparsePoly, V: SubgroupV) -> tuple[SubgroupV, SparsePoly] | None:
    """Search for a proper subgroup W of V and g with f = L_{W'}(g), W' = L_W(V).

    Nontrivial W are tried first in ``subgroups`` order.  When V is a line
    (dimension 1) its only proper subgroup is {0}, which is then used.
    """
    if f.field != V.field:
        f = f.rehome(V.field)
    candidates = subgroups(V)
    if not candidates and V.dim >= 1:
        candidates = [SubgroupV(V.field, [])]
    for W in candidates:
        L_W = linearized_from_subgroup(W)
        L_Wp = linearized_from_subgroup(image_subgroup(L_W, V))
        g = peel_linearized(L_Wp, f)
        if g is not None:
            return W, g
    return None


def outer_linearized(W: SubgroupV, V: SubgroupV) -> LinearizedPoly:
    """L_{W'} with W' = L_W(V)."""
    return linearized_from_subgroup(image_subgroup(linearized_from_subgroup(W), V))
