"""Canonical finite fields F_{p^k} with compatible subfield embeddings.

Elements are encoded as integers whose base-p digits are the polynomial
coordinates (digit i is the coefficient of x^i).  Every field is built from
a primitive defining polynomial chosen deterministically, and the choice is
made compatible with all subfields so that the embedding
``generator_d -> generator_k ** ((p^k - 1) / (p^d - 1))`` is a ring map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 1 << 20
TABLE_FIELD_SIZE = 4096


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise FieldError(f"{q} is not a prime power")
    p, k = ps[0], 0
    while q > 1:
        q //= p
        k += 1
    return p, k


# -- polynomial arithmetic over F_p on coefficient lists (low to high) -------

def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    k = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * f[j]) % p
    out = prod[:k]
    return out + [0] * (k - len(out))


def _poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    k = len(f) - 1
    result = [1] + [0] * (k - 1)
    base = a
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _x_is_primitive(f: list[int], p: int) -> bool:
    k = len(f) - 1
    if f[0] == 0:
        return False
    order = p**k - 1
    x = [0, 1] + [0] * (k - 2) if k >= 2 else [(-f[0]) % p]
    one = [1] + [0] * (k - 1)
    if _poly_powmod(x, order, f, p) != one:
        return False
    return all(_poly_powmod(x, order // r, f, p) != one for r in prime_factors(order))


def _candidate_polys(p: int, k: int):
    """Monic degree-k polynomials in the documented order.

    Coefficients c_{k-1} ... c_0 are read high-to-low as the base-p digits of
    a counter, so the scan is lexicographic on (c_{k-1}, ..., c_0).
    """
    for code in range(p**k):
        digits = []
        c = code
        for _ in range(k):
            digits.append(c % p)
            c //= p
        # digits[0] is c_0 (least significant) -- matches low-to-high storage
        yield digits + [1]


@dataclass(eq=False)
class FqField:
    """The field with p**k elements in its canonical model."""

    p: int
    k: int
    defining_poly: tuple[int, ...]
    generator: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def unit_order(self) -> int:
        return self.p**self.k - 1

    def __hash__(self):
        return hash((self.p, self.k))

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.k) == (other.p, other.k)

    def __repr__(self):
        return f"FqField(p={self.p}, k={self.k}, poly={list(self.defining_poly)})"

    # -- raw encoded arithmetic -------------------------------------------------

    def add_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        out, mult, p = 0, 1, self.p
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_raw(self, a: int) -> int:
        if self.p == 2:
            return a
        out, mult, p = 0, 1, self.p
        while a:
            out += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return out

    def mul_raw(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        n = self.unit_order
        return int(self.exp_table[(int(self.log_table[a]) + int(self.log_table[b])) % n])

    def inv_raw(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        n = self.unit_order
        return int(self.exp_table[(-int(self.log_table[a])) % n])

    def pow_raw(self, a: int, e: int) -> int:
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        n = self.unit_order
        return int(self.exp_table[(int(self.log_table[a]) * e) % n])

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("discrete log of zero")
        return int(self.log_table[a])

    def gen_pow(self, j: int) -> int:
        return int(self.exp_table[j % self.unit_order])

    def frobenius_raw(self, a: int, times: int = 1) -> int:
        return self.pow_raw(a, self.p ** (times % self.k)) if a else 0

    # -- element helpers ------------------------------------------------------------

    def __call__(self, rep: int) -> "FqElem":
        if not 0 <= rep < self.order:
            raise FieldError(f"{rep} is not an element code of F_{self.order}")
        return FqElem(self, rep)

    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    def one(self) -> "FqElem":
        return FqElem(self, 1)

    def gen(self) -> "FqElem":
        return FqElem(self, self.generator)

    def elements(self) -> list["FqElem"]:
        return [FqElem(self, r) for r in range(self.order)]

    def from_prime(self, c: int) -> int:
        """Code of the image of the integer c under Z -> F_p -> this field."""
        return c % self.p

    @property
    def tables(self) -> "FieldTables":
        return field_tables(self)


@dataclass(frozen=True)
class FqElem:
    owner: FqField
    rep: int

    def _check(self, other) -> "FqElem":
        if isinstance(other, int):
            return FqElem(self.owner, self.owner.from_prime(other))
        if not isinstance(other, FqElem):
            return NotImplemented
        if other.owner != self.owner:
            raise FieldError(
                f"cannot combine elements of F_{self.owner.order} and "
                f"F_{other.owner.order} without an explicit embedding"
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        return FqElem(self.owner, self.owner.add_raw(self.rep, other.rep))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.owner, self.owner.neg_raw(self.rep))

    def __sub__(self, other):
        other = self._check(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        return FqElem(self.owner, self.owner.mul_raw(self.rep, other.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return FqElem(self.owner, self.owner.mul_raw(self.rep, self.owner.inv_raw(other.rep)))

    def __pow__(self, e: int):
        return FqElem(self.owner, self.owner.pow_raw(self.rep, e))

    def inverse(self) -> "FqElem":
        return FqElem(self.owner, self.owner.inv_raw(self.rep))

    @property
    def dlog(self) -> int:
        return self.owner.log(self.rep)

    @property
    def coords(self) -> list[int]:
        out, r = [], self.rep
        for _ in range(self.owner.k):
            out.append(r % self.owner.p)
            r //= self.owner.p
        return out

    def is_zero(self) -> bool:
        return self.rep == 0

    def frobenius(self, times: int = 1) -> "FqElem":
        return FqElem(self.owner, self.owner.frobenius_raw(self.rep, times))

    def multiplicative_order(self) -> int:
        if self.rep == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.owner.unit_order
        from math import gcd

        return n // gcd(n, self.dlog)

    def __repr__(self):
        return f"F{self.owner.order}({self.rep})"


def _build_tables(p: int, k: int, f: list[int]) -> tuple[np.ndarray, np.ndarray]:
    n = p**k - 1
    exp_table = np.zeros(n, dtype=np.int64)
    log_table = np.full(p**k, -1, dtype=np.int64)
    if k == 1:
        g = (-f[0]) % p
        x = 1
        for i in range(n):
            exp_table[i] = x
            log_table[x] = i
            x = (x * g) % p
        return exp_table, log_table
    coeffs = [1] + [0] * (k - 1)
    weights = [p**i for i in range(k)]
    for i in range(n):
        code = sum(c * w for c, w in zip(coeffs, weights))
        exp_table[i] = code
        log_table[code] = i
        # multiply by x modulo f
        top = coeffs[-1]
        coeffs = [0] + coeffs[:-1]
        if top:
            coeffs = [(c - top * fc) % p for c, fc in zip(coeffs, f[:k])]
    return exp_table, log_table


def _compatible(p: int, k: int, f: list[int]) -> bool:
    """Subfield generators must map to roots of their own defining polynomials."""
    for d in divisors(k):
        if d == k:
            continue
        sub = build_field(p, d)
        e = (p**k - 1) // (p**d - 1)
        # the element x^e of F_p[x]/(f), as a polynomial
        if k == 1:
            continue
        xe = _poly_powmod([0, 1] + [0] * (k - 2), e, f, p)
        # evaluate sub.defining_poly at xe inside F_p[x]/(f)
        acc = [0] * k
        power = [1] + [0] * (k - 1)
        for c in sub.defining_poly:
            if c:
                acc = [(a + c * b) % p for a, b in zip(acc, power)]
            power = _poly_mulmod(power, xe, f, p)
        if any(acc):
            return False
    return True


@lru_cache(maxsize=None)
def build_field(p: int, k: int) -> FqField:
    """Canonical F_{p^k}: least primitive polynomial compatible with subfields."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError(f"degree must be positive, got {k}")
    if p**k > MAX_FIELD_SIZE:
        raise FieldError(f"F_{p}^{k} exceeds the table budget of {MAX_FIELD_SIZE} elements")
    for f in _candidate_polys(p, k):
        if _x_is_primitive(f, p) and _compatible(p, k, f):
            exp_table, log_table = _build_tables(p, k, f)
            exp_table.setflags(write=False)
            log_table.setflags(write=False)
            gen = int(exp_table[1]) if p**k > 2 else 1
            return FqField(p, k, tuple(f), gen, exp_table, log_table)
    raise FieldError(f"no compatible primitive polynomial for F_{p}^{k}")  # pragma: no cover


def field_of_order(q: int) -> FqField:
    p, k = prime_power(q)
    return build_field(p, k)


def _subfield_exponent(sub: FqField, target: FqField) -> int:
    if sub.p != target.p or target.k % sub.k:
        raise FieldError(f"F_{sub.order} is not a subfield of F_{target.order}")
    return (target.order - 1) // (sub.order - 1)


def embed_raw(sub: FqField, target: FqField, a: int) -> int:
    if a == 0:
        return 0
    e = _subfield_exponent(sub, target)
    return target.gen_pow(sub.log(a) * e)


def embed_subfield(x: FqElem, target: FqField) -> FqElem:
    """Image of x under the canonical embedding F_{p^d} -> F_{p^k}."""
    return FqElem(target, embed_raw(x.owner, target, x.rep))


def restrict_raw(target: FqField, sub: FqField, a: int) -> int:
    """Inverse of embed_raw on the image of the subfield."""
    if a == 0:
        return 0
    e = _subfield_exponent(sub, target)
    L = target.log(a)
    if L % e:
        raise FieldError(f"element {a} of F_{target.order} is not in F_{sub.order}")
    return sub.gen_pow(L // e)


def norm_to_subfield(x: FqElem, d: int) -> FqElem:
    F = x.owner
    if F.k % d:
        raise FieldError(f"{d} does not divide {F.k}")
    sub = build_field(F.p, d)
    if x.rep == 0:
        return sub.zero()
    e = (F.order - 1) // (sub.order - 1)
    return FqElem(sub, restrict_raw(F, sub, F.pow_raw(x.rep, e)))


def trace_to_subfield(x: FqElem, d: int) -> FqElem:
    F = x.owner
    if F.k % d:
        raise FieldError(f"{d} does not divide {F.k}")
    sub = build_field(F.p, d)
    q = sub.order
    acc, y = 0, x.rep
    for _ in range(F.k // d):
        acc = F.add_raw(acc, y)
        y = F.pow_raw(y, q) if y else 0
    return FqElem(sub, restrict_raw(F, sub, acc))


@dataclass(frozen=True, eq=False)
class FieldTables:
    """Dense numpy operation tables for vectorised work in small fields."""

    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


@lru_cache(maxsize=None)
def field_tables(F: FqField) -> FieldTables:
    q = F.order
    if q > TABLE_FIELD_SIZE:
        raise FieldError(f"dense tables are limited to fields of size <= {TABLE_FIELD_SIZE}")
    add = np.array([[F.add_raw(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    mul = np.array([[F.mul_raw(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    neg = np.array([F.neg_raw(a) for a in range(q)], dtype=np.int64)
    inv = np.array([F.inv_raw(a) if a else 0 for a in range(q)], dtype=np.int64)
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return FieldTables(add, mul, neg, inv)
