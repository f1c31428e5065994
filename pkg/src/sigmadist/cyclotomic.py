"""Exact arithmetic in cyclotomic fields Q(zeta_E).

An element is an integer vector on the basis 1, z, ..., z^(phi(E)-1) of
Z[z]/Phi_E together with a positive denominator; the pair is kept reduced so
that equality is plain comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np


@lru_cache(maxsize=None)
def cyclotomic_poly(E: int) -> tuple[int, ...]:
    """Coefficients of Phi_E, low to high."""
    if E < 1:
        raise ValueError("cyclotomic order must be positive")
    num = np.zeros(E + 1, dtype=np.int64)
    num[0], num[E] = -1, 1
    for d in range(1, E):
        if E % d == 0:
            num = _exact_div(num, np.array(cyclotomic_poly(d), dtype=np.int64))
    return tuple(int(c) for c in num)


def _exact_div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # b monic
    a = a.copy()
    db = len(b) - 1
    out = np.zeros(len(a) - db, dtype=np.int64)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            out[i - db] = c
            a[i - db:i + 1] -= c * b
    if a[:db].any():
        raise ArithmeticError("inexact polynomial division")
    return out


def phi(E: int) -> int:
    return len(cyclotomic_poly(E)) - 1


@lru_cache(maxsize=None)
def reduction_matrix(E: int) -> np.ndarray:
    """Row t holds the coordinates of z^t (0 <= t < E) in the reduced basis."""
    f = np.array(cyclotomic_poly(E), dtype=np.int64)
    d = len(f) - 1
    out = np.zeros((E, d), dtype=np.int64)
    cur = np.zeros(d, dtype=np.int64)
    cur[0] = 1
    for t in range(E):
        out[t] = cur
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1]))
        if top:
            cur -= top * f[:-1]
    return out


def reduce_power_basis(E: int, vec) -> np.ndarray:
    """Reduce a power-basis vector of any length (indices taken mod E)."""
    vec = np.asarray(vec, dtype=np.int64)
    if vec.shape[-1] != E:
        folded = np.zeros(vec.shape[:-1] + (E,), dtype=np.int64)
        for start in range(0, vec.shape[-1], E):
            chunk = vec[..., start:start + E]
            folded[..., : chunk.shape[-1]] += chunk
        vec = folded
    return vec @ reduction_matrix(E)


class Cyclotomic:
    """Element of Q(zeta_E) in canonical form."""

    __slots__ = ("E", "coeffs", "den")

    def __init__(self, E: int, coeffs, den: int = 1, *, reduced: bool = False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        c = np.asarray(coeffs, dtype=np.int64)
        if not reduced:
            c = reduce_power_basis(E, c)
        elif len(c) != phi(E):
            raise ValueError(f"reduced vector for E={E} must have length {phi(E)}")
        if den < 0:
            c, den = -c, -den
        g = gcd(int(den), *(int(x) for x in c)) if c.any() else int(den)
        if g > 1:
            c, den = c // g, den // g
        if not c.any():
            den = 1
        self.E = int(E)
        self.coeffs = tuple(int(x) for x in c)
        self.den = int(den)

    # constructors

    @classmethod
    def from_power(cls, E: int, vec, den: int = 1) -> "Cyclotomic":
        return cls(E, vec, den)

    @classmethod
    def root(cls, E: int, k: int = 1) -> "Cyclotomic":
        vec = np.zeros(E, dtype=np.int64)
        vec[k % E] = 1
        return cls.from_power(E, vec)

    @classmethod
    def rational(cls, x, E: int = 1) -> "Cyclotomic":
        x = Fraction(x)
        vec = np.zeros(phi(E), dtype=np.int64)
        vec[0] = x.numerator
        return cls(E, vec, x.denominator, reduced=True)

    # conversions

    def lift(self, E: int) -> "Cyclotomic":
        if E % self.E:
            raise ValueError(f"Q(zeta_{self.E}) is not inside Q(zeta_{E})")
        if E == self.E:
            return self
        vec = np.zeros(E, dtype=np.int64)
        step = E // self.E
        vec[: len(self.coeffs) * step: step] = self.coeffs
        return Cyclotomic.from_power(E, vec, self.den)

    def power_vector(self) -> np.ndarray:
        v = np.zeros(self.E, dtype=np.int64)
        v[: len(self.coeffs)] = self.coeffs
        return v

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0], self.den)

    def __complex__(self) -> complex:
        z = np.exp(2j * np.pi * np.arange(len(self.coeffs)) / self.E)
        return complex(np.dot(self.coeffs, z) / self.den)

    # arithmetic

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.E)
        E = lcm(self.E, other.E)
        return self.lift(E), other.lift(E), E

    def __add__(self, other):
        a, b, E = self._common(other)
        ca = np.array(a.coeffs, dtype=np.int64) * b.den
        cb = np.array(b.coeffs, dtype=np.int64) * a.den
        return Cyclotomic(E, ca + cb, a.den * b.den, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.E, [-c for c in self.coeffs], self.den, reduced=True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            x = Fraction(other)
            return Cyclotomic(self.E, np.array(self.coeffs) * x.numerator, self.den * x.denominator,
                              reduced=True)
        a, b, E = self._common(other)
        prod = np.convolve(np.array(a.coeffs, dtype=np.int64), np.array(b.coeffs, dtype=np.int64))
        return Cyclotomic.from_power(E, prod, a.den * b.den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Cyclotomic":
        if e < 0:
            raise NotImplementedError("negative powers")
        out, base = Cyclotomic.rational(1, self.E), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                raise NotImplementedError("division by an irrational cyclotomic")
            other = other.to_fraction()
        x = Fraction(other)
        return self * Fraction(x.denominator, x.numerator)

    def galois(self, k: int) -> "Cyclotomic":
        """The automorphism z -> z^k (k prime to E)."""
        if gcd(k, self.E) != 1:
            raise ValueError(f"{k} is not a unit mod {self.E}")
        vec = np.zeros(self.E, dtype=np.int64)
        for i, c in enumerate(self.coeffs):
            vec[(i * k) % self.E] += c
        return Cyclotomic.from_power(self.E, vec, self.den)

    def conj(self) -> "Cyclotomic":
        return self.galois(-1)

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.E == other.E:
            return self.coeffs == other.coeffs and self.den == other.den
        a, b, _ = self._common(other)
        return a.coeffs == b.coeffs and a.den == b.den

    def __hash__(self):
        # must agree across lifts: rationals hash as fractions, otherwise only the
        # denominator (intrinsic to the value) is used
        if self.is_rational():
            return hash(Fraction(self.coeffs[0], self.den))
        return hash(("cyclotomic", self.den))

    def __repr__(self):
        return f"Cyclotomic({self.E}, {self})"

    def __str__(self):
        """CSV form "c0+c1*z^1+..." on the reduced basis (z = zeta_E)."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            val = Fraction(c, self.den)
            if i == 0:
                terms.append(f"{val}")
            else:
                terms.append(f"{val}*z^{i}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)
