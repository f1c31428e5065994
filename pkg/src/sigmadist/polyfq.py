"""Dense polynomials over an FqField on encoded coefficients (low to high)."""

from __future__ import annotations

from functools import lru_cache

from .ffield import FqField

Poly = tuple[int, ...]


def trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def add(F: FqField, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = [F.add_raw(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return tuple(trim(out))


def neg(F: FqField, a: Poly) -> Poly:
    return tuple(F.neg_raw(c) for c in a)


def sub(F: FqField, a: Poly, b: Poly) -> Poly:
    return add(F, a, neg(F, b))


def mul(F: FqField, a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add_raw(out[i + j], F.mul_raw(x, y))
    return tuple(trim(out))


def scale(F: FqField, a: Poly, c: int) -> Poly:
    return tuple(trim([F.mul_raw(x, c) for x in a]))


def divmod_(F: FqField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lead_inv = F.inv_raw(b[-1])
    if len(r) - 1 < db:
        return (0,), tuple(trim(r))
    qt = [0] * (len(r) - db)
    for d in range(len(r) - 1, db - 1, -1):
        c = r[d]
        if c:
            f = F.mul_raw(c, lead_inv)
            qt[d - db] = f
            for j in range(db + 1):
                r[d - db + j] = F.add_raw(r[d - db + j], F.neg_raw(F.mul_raw(f, b[j])))
    rem = trim(r[:db] if db > 0 else [0])
    return tuple(trim(qt)), tuple(rem)


def power(F: FqField, a: Poly, e: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = mul(F, out, a)
    return out


def degree(a: Poly) -> int:
    return -1 if a == (0,) else len(a) - 1


def monic_polys(F: FqField, d: int):
    q = F.order
    for code in range(q**d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % q)
            c //= q
        yield tuple(coeffs) + (1,)


@lru_cache(maxsize=None)
def irreducibles(F: FqField, d: int) -> tuple[Poly, ...]:
    """Monic irreducible polynomials of degree d, in scan order."""
    if d == 1:
        return tuple(monic_polys(F, 1))
    smaller = [f for e in range(1, d // 2 + 1) for f in irreducibles(F, e)]
    out = []
    for f in monic_polys(F, d):
        if f[0] == 0:
            continue
        if all(divmod_(F, f, g)[1] != (0,) for g in smaller):
            out.append(f)
    return tuple(out)


def factor(F: FqField, f: Poly) -> list[tuple[Poly, int]]:
    """Factor a monic polynomial into (irreducible, multiplicity) pairs."""
    n = degree(f)
    out = []
    rest = f
    for d in range(1, n // 2 + 1):
        for g in irreducibles(F, d):
            if degree(rest) < d:
                break
            m = 0
            while True:
                qt, r = divmod_(F, rest, g)
                if r != (0,):
                    break
                rest = qt
                m += 1
            if m:
                out.append((g, m))
    if degree(rest) > 0:
        out.append((rest, 1))
    return sorted(out, key=lambda t: (len(t[0]), t[0]))
