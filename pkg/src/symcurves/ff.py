"""Small finite fields F_{p^k} with table-driven arithmetic, embeddings and towers.

Elements are coded as integers: the coefficient vector (c_0, ..., c_{k-1}) of
c_0 + c_1 t + ... + c_{k-1} t^{k-1} read as base-p digits, least significant
first.  Every level is the quotient of F_p[t] by the smallest monic irreducible
polynomial of its degree, so the prime field always occupies codes 0..p-1.
"""

from __future__ import annotations

import contextlib
import functools
import math
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidParameters

DEFAULT_MAX_FIELD_ORDER = 2**20
BUDGET_ENV_VAR = "SYMCURVES_MAX_FIELD_ORDER"

_budget_override: int | None = None


def max_field_order() -> int:
    """Largest field cardinality that may be enumerated or tabulated."""
    if _budget_override is not None:
        return _budget_override
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_MAX_FIELD_ORDER


def set_max_field_order(order: int | None) -> None:
    global _budget_override
    _budget_override = order


@contextlib.contextmanager
def field_budget(order: int) -> Iterator[None]:
    previous = _budget_override
    set_max_field_order(order)
    try:
        yield
    finally:
        set_max_field_order(previous)


def check_budget(order: int) -> None:
    if order > max_field_order():
        raise BudgetExceeded(f"field of order {order} exceeds enumeration budget {max_field_order()}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m; raises InvalidParameters when q is not a prime power."""
    if q < 2:
        raise InvalidParameters(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise InvalidParameters(f"{q} is not a prime power")
    return p, m


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p as coefficient lists, lowest degree first ------


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(_fp_trim(a)) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1] * inv % p
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mj) % p
    return a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _fp_mod(prod, m, p)


def _fp_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_trim(_fp_mod(a, b, p))
    return a


def is_irreducible_fp(poly: Sequence[int], p: int) -> bool:
    """Ben-Or test for a monic polynomial over F_p given low-to-high."""
    f = _fp_trim(list(poly))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    h = x
    for _ in range(k // 2):
        h = _fp_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(f, diff, p)) > 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p, ordered by lower-coefficient code."""
    for code in range(p**k):
        low = [(code // p**j) % p for j in range(k)]
        if is_irreducible_fp(low + [1], p):
            return tuple(low + [1])
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The field F_{p^k} = F_p[t]/(modulus) with log/antilog tables.

    Scalar methods take and return integer codes; methods prefixed with ``v``
    are the numpy-vectorised equivalents used by the enumeration oracles.
    """

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise InvalidParameters(f"{p} is not prime")
        if k < 1:
            raise InvalidParameters("extension degree must be >= 1")
        order = p**k
        check_budget(order)
        self.p = p
        self.k = k
        self.order = order
        self.modulus = smallest_irreducible(p, k)
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    # -- table construction --------------------------------------------------

    def _scalar_is_primitive(self, code: int) -> bool:
        p, k, n = self.p, self.k, self.order - 1
        if code == 0:
            return False
        digits = [(code // p**j) % p for j in range(k)]
        mod = list(self.modulus)
        for ell in _prime_factors(n) if n > 1 else []:
            if _fp_trim(_fp_powmod(digits, n // ell, mod, p)) == [1]:
                return False
        return True

    def _build_tables(self) -> None:
        p, k, Q = self.p, self.k, self.order
        codes = np.arange(Q, dtype=np.int64)
        pw = p ** np.arange(k, dtype=np.int64)
        digits = (codes[:, None] // pw[None, :]) % p

        # multiplication by t, for every code at once
        shifted = np.zeros_like(digits)
        shifted[:, 1:] = digits[:, :-1]
        low = np.array(self.modulus[:k], dtype=np.int64)
        shifted = (shifted - digits[:, -1:] * low[None, :]) % p
        mul_t = shifted @ pw

        gen = next(c for c in range(1, Q) if self._scalar_is_primitive(c))
        gdigits = [(gen // p**j) % p for j in range(k)]
        acc = np.zeros_like(digits)
        cur = codes
        for j, gj in enumerate(gdigits):
            if j:
                cur = mul_t[cur]
            if gj:
                acc += gj * digits[cur]
        mul_g = ((acc % p) @ pw).tolist()

        exp = [1] * (Q - 1)
        c = 1
        for j in range(1, Q - 1):
            c = mul_g[c]
            exp[j] = c
        self.generator = gen
        self._exp_a = np.array(exp, dtype=np.int64)
        log_a = np.full(Q, -1, dtype=np.int64)
        log_a[self._exp_a] = np.arange(Q - 1, dtype=np.int64)
        self._log_a = log_a
        self._exp = exp
        self._log = log_a.tolist()
        self._pw = pw
        if p != 2:
            plus_one = np.where(digits[:, 0] == p - 1, codes - (p - 1), codes + 1)
            self._zech_a = log_a[plus_one[self._exp_a]]
            self._zech = self._zech_a.tolist()
            self._half = (Q - 1) // 2

    # -- scalar arithmetic on codes -------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        n = self.order - 1
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % n]
        if z < 0:
            return 0
        return self._exp[(la + z) % n]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self._exp[(self._log[a] + self._half) % (self.order - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * (e % (self.order - 1))) % (self.order - 1)]

    def scalar(self, c: int) -> int:
        """Code of the prime-field integer c."""
        return c % self.p

    def pth_root(self, a: int, j: int = 1) -> int:
        """The unique b with b^(p^j) = a."""
        return self.pow(a, self.p ** ((-j) % self.k))

    def digits(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**j) % self.p for j in range(self.k))

    def from_digits(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            raise InvalidParameters("too many coefficients for this level")
        return sum((c % self.p) * self.p**j for j, c in enumerate(coeffs))

    def in_subfield(self, a: int, sub_degree: int) -> bool:
        return self.pow(a, self.p**sub_degree) == a

    # -- vectorised arithmetic ----------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.p == 2:
            return np.bitwise_xor(a, b)
        n = self.order - 1
        la, lb = self._log_a[a], self._log_a[b]
        z = self._zech_a[(lb - la) % n]
        out = np.where(z < 0, 0, self._exp_a[(la + np.maximum(z, 0)) % n])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        out = self._exp_a[(self._log_a[a] + self._half) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self._exp_a[(self._log_a[a] + self._log_a[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp_a[(-self._log_a[a]) % (self.order - 1)]

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        n = self.order - 1
        out = self._exp_a[(self._log_a[a] * (e % n)) % n]
        if e > 0:
            return np.where(a == 0, 0, out)
        if e == 0:
            return np.ones_like(a)
        if np.any(a == 0):
            raise ZeroDivisionError("zero to a negative power")
        return out


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, k: int) -> GF:
    return GF(p, k)


def field(p: int, k: int) -> GF:
    """Shared instance of F_{p^k}; the budget is checked on every call."""
    check_budget(p**k)
    return _cached_field(p, k)


@dataclass(frozen=True)
class FieldElement:
    """Value-semantic element of one tower level."""

    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise InvalidParameters(f"code {self.value} out of range for {self.field!r}")

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidParameters("elements live in different levels")
            return other.value
        return self.field.scalar(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __lt__(self, other: FieldElement) -> bool:
        return self.value < other.value

    def __repr__(self) -> str:
        terms = []
        for j, c in reversed(list(enumerate(self.coefficients))):
            if c:
                mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
                coeff = str(c) if (c != 1 or j == 0) else ""
                terms.append(coeff + mono)
        return f"<{self.field.order}: {' + '.join(terms) or '0'}>"


def enumerate_level(level: GF) -> list[FieldElement]:
    """All elements in code order (least significant coefficient varies fastest)."""
    check_budget(level.order)
    return [FieldElement(level, c) for c in range(level.order)]


def frobenius(e: FieldElement, base_order: int) -> FieldElement:
    """e -> e^base_order, where base_order is the size of a subfield of e's level."""
    p, m = prime_power(base_order)
    if p != e.field.p or e.field.k % m:
        raise InvalidParameters(f"{base_order} is not the order of a subfield of {e.field!r}")
    return e ** base_order


@functools.lru_cache(maxsize=None)
def _smallest_root_embedding(p: int, a: int, b: int) -> np.ndarray:
    sub, sup = _cached_field(p, a), _cached_field(p, b)
    if a == b:
        return np.arange(sub.order, dtype=np.int64)
    if a == 1:
        return np.arange(p, dtype=np.int64)
    xs = sup.elements()
    acc = np.zeros_like(xs)
    for c in reversed(sub.modulus):
        acc = sup.vadd(sup.vmul(acc, xs), np.full_like(xs, c))
    root = int(np.flatnonzero(acc == 0)[0])
    image = np.zeros(sub.order, dtype=np.int64)
    power = 1
    codes = np.arange(sub.order, dtype=np.int64)
    for j in range(a):
        dj = (codes // p**j) % p
        image = sup.vadd(image, sup.vmul(dj, power))
        power = sup.mul(power, root)
    return image


class FieldTower:
    """F_p in F_q in F_{q^n} in F_{q^{2n}}, with embeddings between the levels.

    Consecutive levels are joined by sending the generator of the smaller
    level to the smallest root of its modulus in the larger one; embeddings
    that skip a level are composites, so every path through the chain agrees.
    """

    LEVELS = ("prime", "base", "top", "double")

    def __init__(self, p: int, m: int, n: int):
        if not is_prime(p):
            raise InvalidParameters(f"{p} is not prime")
        if m < 1 or n < 1:
            raise InvalidParameters("m and n must be positive")
        check_budget(p ** (2 * m * n))
        self.p, self.m, self.n = p, m, n
        self.q = p**m
        self.degrees = {"prime": 1, "base": m, "top": m * n, "double": 2 * m * n}
        self.levels = {name: field(p, k) for name, k in self.degrees.items()}
        chain = sorted(set(self.degrees.values()))
        self._emb: dict[tuple[int, int], np.ndarray] = {}
        for a in chain:
            self._emb[(a, a)] = np.arange(p**a, dtype=np.int64)
        for a, b in zip(chain, chain[1:]):
            self._emb[(a, b)] = _smallest_root_embedding(p, a, b)
        for i, a in enumerate(chain):
            for j in range(i + 2, len(chain)):
                b, mid = chain[j], chain[j - 1]
                self._emb[(a, b)] = self._emb[(mid, b)][self._emb[(a, mid)]]
        self._preimage: dict[tuple[int, int], dict[int, int]] = {}

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, m={self.m}, n={self.n})"

    @property
    def prime(self) -> GF:
        return self.levels["prime"]

    @property
    def base(self) -> GF:
        return self.levels["base"]

    @property
    def top(self) -> GF:
        return self.levels["top"]

    @property
    def double(self) -> GF:
        return self.levels["double"]

    def level(self, name: str) -> GF:
        return self.levels[name]

    def embedding(self, sub: GF, sup: GF) -> np.ndarray:
        """Array mapping each code of ``sub`` to its image code in ``sup``."""
        try:
            return self._emb[(sub.k, sup.k)]
        except KeyError:
            raise InvalidParameters(f"{sub!r} is not below {sup!r} in {self!r}") from None

    def embed(self, e: FieldElement, target: GF) -> FieldElement:
        return FieldElement(target, int(self.embedding(e.field, target)[e.value]))

    def restrict(self, e: FieldElement, sub: GF) -> FieldElement:
        """Inverse of ``embed``; fails when e is not in the image of ``sub``."""
        key = (sub.k, e.field.k)
        if key not in self._preimage:
            image = self.embedding(sub, e.field)
            self._preimage[key] = {int(v): i for i, v in enumerate(image)}
        try:
            return FieldElement(sub, self._preimage[key][e.value])
        except KeyError:
            raise InvalidParameters(f"{e!r} does not lie in {sub!r}") from None

    def _relative(self, e: FieldElement, sub: GF) -> int:
        if e.field.k % sub.k or (sub.k, e.field.k) not in self._emb:
            raise InvalidParameters(f"{sub!r} is not a sublevel of {e.field!r}")
        return e.field.k // sub.k

    def trace_to(self, e: FieldElement, sub: GF) -> FieldElement:
        F, r = e.field, self._relative(e, sub)
        total = 0
        for j in range(r):
            total = F.add(total, F.pow(e.value, sub.order**j))
        return self.restrict(FieldElement(F, total), sub)

    def norm_to(self, e: FieldElement, sub: GF) -> FieldElement:
        F, r = e.field, self._relative(e, sub)
        exponent = sum(sub.order**j for j in range(r))
        return self.restrict(FieldElement(F, F.pow(e.value, exponent)), sub)


def build_tower(p: int, m: int, n: int) -> FieldTower:
    return FieldTower(p, m, n)


def trace_zero_codes(top: GF, sub_order: int) -> np.ndarray:
    """Codes of every beta in ``top`` whose trace down to F_{sub_order} vanishes."""
    p, m = prime_power(sub_order)
    if p != top.p or top.k % m:
        raise InvalidParameters("sub_order is not a subfield of top")
    xs = top.elements()
    acc = np.zeros_like(xs)
    for j in range(top.k // m):
        acc = top.vadd(acc, top.vpow(xs, sub_order**j))
    return np.flatnonzero(acc == 0).astype(np.int64)


def trace_zero_subgroup(tower: FieldTower, top: GF, sub: GF) -> tuple[FieldElement, ...]:
    tower._relative(FieldElement(top, 0), sub)
    return tuple(FieldElement(top, int(c)) for c in trace_zero_codes(top, sub.order))
