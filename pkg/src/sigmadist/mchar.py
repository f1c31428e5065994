"""Multiplicative characters of t^x stored as exponents.

A character of the cyclic group F_{q^n}^x is ``g^j -> zeta^(a*j)`` for a fixed
generator g and a fixed primitive root of unity zeta of order q^n - 1, so it
is the integer ``a`` modulo q^n - 1.  Every predicate below is a congruence on
that integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .ffield import divisors


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class MultChar:
    base_q: int
    deg_n: int
    exp_a: int

    def __post_init__(self):
        if self.base_q < 2 or self.deg_n < 1:
            raise CharacterError(f"bad character group q={self.base_q}, n={self.deg_n}")
        object.__setattr__(self, "exp_a", self.exp_a % self.modulus)

    @property
    def modulus(self) -> int:
        return self.base_q**self.deg_n - 1

    def inverse(self) -> "MultChar":
        return MultChar(self.base_q, self.deg_n, -self.exp_a)

    def power(self, e: int) -> "MultChar":
        return MultChar(self.base_q, self.deg_n, self.exp_a * e)

    def order(self) -> int:
        return self.modulus // gcd(self.modulus, self.exp_a)


def orbit_mod(a: int, q: int, n: int, modulus: int) -> list[int]:
    """The set {a q^i mod modulus : 0 <= i < n}, sorted."""
    return sorted({(a * pow(q, i, modulus)) % modulus for i in range(n)}) if modulus > 1 else [0]


def galois_orbit(c: MultChar) -> tuple[list[int], int]:
    """Frobenius orbit of the exponent and its minimum representative."""
    orb = orbit_mod(c.exp_a, c.base_q, c.deg_n, c.modulus)
    return orb, orb[0]


def is_regular(c: MultChar) -> bool:
    return len(galois_orbit(c)[0]) == c.deg_n


def _check_square(q: int, q0: int) -> None:
    if q0 < 2 or q0 * q0 != q:
        raise CharacterError(f"{q} is not the square of {q0}")


def is_sigma_selfdual(c: MultChar, q0: int) -> bool:
    """xi^{-1} = xi^{q0^n}: the character is trivial on the degree-n subfield over k0."""
    _check_square(c.base_q, q0)
    return ((q0**c.deg_n + 1) * c.exp_a) % c.modulus == 0


def is_sigma_selfdual_orbit(c: MultChar, q0: int) -> bool:
    """xi^{-q0} lies in the Frobenius orbit of xi: the form valid for every n.

    For n odd and regular xi this agrees with ``is_sigma_selfdual``; for n even
    it never holds on regular characters.
    """
    _check_square(c.base_q, q0)
    return any(((q0 ** (2 * i + 1) + 1) * c.exp_a) % c.modulus == 0 for i in range(c.deg_n))


def is_selfdual(c: MultChar) -> bool:
    n, q, a, N = c.deg_n, c.base_q, c.exp_a, c.modulus
    if n == 1:
        return (2 * a) % N == 0
    if n % 2 == 0:
        return ((q ** (n // 2) + 1) * a) % N == 0
    return any(((q**i + 1) * a) % N == 0 for i in range(n))


def factors_through_norm(c: MultChar, d: int) -> bool:
    n = c.deg_n
    if d < 1 or d >= n or n % d:
        raise CharacterError(f"{d} is not a proper divisor of {n}")
    return c.exp_a % ((c.base_q**n - 1) // (c.base_q**d - 1)) == 0


def prime_to_part(N: int, ell: int) -> int:
    while N % ell == 0:
        N //= ell
    return N


@dataclass(frozen=True)
class ReducedChar:
    """A character reduced mod ell: exponent modulo the prime-to-ell part M."""

    base_q: int
    deg_n: int
    ell: int
    modulus: int
    exp_a: int

    def orbit(self) -> list[int]:
        return orbit_mod(self.exp_a, self.base_q, self.deg_n, self.modulus)

    def is_regular(self) -> bool:
        return len(self.orbit()) == self.deg_n


def reduce_mod_ell(c: MultChar, ell: int) -> ReducedChar:
    if ell < 2 or gcd(ell, c.base_q) != 1:
        raise CharacterError(f"ell={ell} must be a prime not dividing q={c.base_q}")
    M = prime_to_part(c.modulus, ell)
    return ReducedChar(c.base_q, c.deg_n, ell, M, c.exp_a % M)


def lift_sigma_selfdual(reduced_exp: int, q0: int, n: int, ell: int) -> MultChar:
    """A regular sigma-selfdual exponent mod q^n-1 reducing to ``reduced_exp``.

    CRT lifts are scanned with ell-part 0 first, then by increasing exponent.
    Raises CharacterError when the input is not itself regular and sigma-selfdual
    mod M, or when no candidate qualifies.
    """
    q = q0 * q0
    N = q**n - 1
    if ell < 2 or gcd(ell, q) != 1:
        raise CharacterError(f"ell={ell} must be a prime not dividing q={q}")
    M = prime_to_part(N, ell)
    L = N // M
    r = reduced_exp % M
    red = ReducedChar(q, n, ell, M, r)
    if ((q0**n + 1) * r) % M or not red.is_regular():
        raise CharacterError(
            f"{reduced_exp} mod {M} is not a regular sigma-selfdual reduced exponent "
            f"(q0={q0}, n={n}, ell={ell})"
        )
    # first candidate: r mod M, 0 mod L
    first = None
    if L == 1:
        first = r
    else:
        inv = pow(L, -1, M) if M > 1 else 0
        first = (r * inv % M) * L % N if M > 1 else 0
    candidates = [first] + sorted(a for a in range(r, N, M) if a != first)
    for a in candidates:
        c = MultChar(q, n, a)
        if is_sigma_selfdual(c, q0) and is_regular(c):
            return c
    raise CharacterError(
        f"no regular sigma-selfdual lift of {reduced_exp} mod {M} "
        f"(q0={q0}, n={n}, ell={ell})"
    )


def regular_orbits(q: int, n: int, predicate=None) -> list[list[int]]:
    """Frobenius orbits of regular exponents mod q^n - 1, by representative."""
    N = q**n - 1
    seen = set()
    out = []
    for a in range(N):
        if a in seen:
            continue
        orb = orbit_mod(a, q, n, N)
        seen.update(orb)
        if len(orb) == n and (predicate is None or predicate(MultChar(q, n, a))):
            out.append(orb)
    return out


def _kernel_orbits(q: int, n: int, killers: list[int], predicate) -> list[list[int]]:
    """Regular orbits inside the union of the kernels of a -> k a (k in killers).

    Every candidate for a "xi^k = 1 for some k" predicate lies in such a kernel, so
    the scan is over a few small cyclic subgroups instead of all of Z/(q^n - 1).
    """
    N = q**n - 1
    cands = set()
    for k in killers:
        step = N // gcd(N, k)
        cands.update(range(0, N, step))
    seen, out = set(), []
    for a in sorted(cands):
        if a in seen:
            continue
        orb = orbit_mod(a, q, n, N)
        seen.update(orb)
        if len(orb) == n and predicate(MultChar(q, n, a)):
            out.append(orb)
    return out


def sigma_selfdual_orbits(q0: int, n: int) -> list[list[int]]:
    killers = [q0 ** (2 * i + 1) + 1 for i in range(n)]
    return _kernel_orbits(q0 * q0, n, killers, lambda c: is_sigma_selfdual_orbit(c, q0))


def selfdual_orbits(q: int, n: int) -> list[list[int]]:
    killers = [q**i + 1 for i in range(n)]
    return _kernel_orbits(q, n, killers, is_selfdual)


def count_sigma_selfdual_supercuspidals(q0: int, n: int) -> int:
    return len(sigma_selfdual_orbits(q0, n))


def count_selfdual_supercuspidals(q: int, n: int) -> int:
    return len(selfdual_orbits(q, n))


def sigma_selfdual_exponents(q0: int, n: int, limit: int | None = None):
    """Exponents a with (q0^n+1) a = 0 mod q0^{2n}-1, in increasing order."""
    N = q0 ** (2 * n) - 1
    step = N // gcd(N, q0**n + 1)
    count = N // step
    for j in range(count if limit is None else min(count, limit)):
        yield j * step


def integer_sqrt_exact(q: int) -> int | None:
    r = isqrt(q)
    return r if r * r == q else None


def proper_divisors(n: int) -> list[int]:
    return [d for d in divisors(n) if d < n]
