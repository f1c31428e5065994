"""Tame tower invariants of a sigma-selfdual supercuspidal and its level-zero character.

Everything is symbolic: the tower F0 < F, T0 < T, D0 < D, K0 < K is described by
ramification indices and residue degrees, and the level-zero character xi of K^x
by its residual exponent ``theta_exp`` (mod Q - 1, Q the residue cardinality of
K) together with its value at the sigma-compatible uniformizer t of E, stored
as an exponent in Q/Z.

Convention for t: sigma(t) = t when E/E0 is unramified and -t when ramified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .ffield import FieldError, is_prime, prime_power


class Ext(str, Enum):
    UNRAMIFIED = "Unramified"
    RAMIFIED = "Ramified"


class Quad(str, Enum):
    TRIVIAL = "Trivial"
    OMEGA = "Omega"


class Central(str, Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "Nontrivial"


class SpecError(ValueError):
    """Malformed or invalid tower input."""


@dataclass(frozen=True)
class TowerSpec:
    p: int
    q0: int
    base: Ext
    e_T0: int
    f_T0: int
    wild_a: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "base", Ext(self.base))


@dataclass(frozen=True)
class LevelZeroChar:
    theta_exp: int
    xi_t: Fraction  # xi(t) = exp(2 pi i xi_t), kept in [0, 1)

    def __post_init__(self):
        object.__setattr__(self, "xi_t", Fraction(self.xi_t) % 1)


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str


@dataclass(frozen=True)
class TowerInvariants:
    TT0: Ext
    KK0: Ext
    e_TF: int
    f_TF: int
    e_DF: int
    f_DF: int
    f_KF: int
    n: int
    delta0: Quad | None = None
    epsilon0: Quad | None = None
    central_char_on_F0: Central | None = None


# -- degrees -----------------------------------------------------------------------------------


def classify_TT0(s: TowerSpec) -> Ext:
    """T/T0 is ramified exactly when F/F0 is ramified and e(T0/F0) is odd."""
    if s.base is Ext.RAMIFIED and s.e_T0 % 2 == 1:
        return Ext.RAMIFIED
    return Ext.UNRAMIFIED


def classify_KK0(s: TowerSpec) -> Ext:
    """K/K0 (equivalently D/D0) is ramified iff T/T0 is ramified and m = 1."""
    if classify_TT0(s) is Ext.RAMIFIED and s.m == 1:
        return Ext.RAMIFIED
    return Ext.UNRAMIFIED


@lru_cache(maxsize=1 << 12)
def degrees_TF(s: TowerSpec) -> tuple[int, int]:
    """(e(T/F), f(T/F)) from e(T0/F0), f(T0/F0) and the base type."""
    if s.base is Ext.UNRAMIFIED or s.e_T0 % 2 == 1:
        return s.e_T0, s.f_T0
    return s.e_T0 // 2, 2 * s.f_T0


@lru_cache(maxsize=1 << 12)
def tower_invariants(s: TowerSpec) -> TowerInvariants:
    e_TF, f_TF = degrees_TF(s)
    f_DF = s.m * f_TF
    n = s.m * e_TF * f_TF * s.p**s.wild_a
    return TowerInvariants(classify_TT0(s), classify_KK0(s), e_TF, f_TF, e_TF, f_DF, f_DF, n)


@lru_cache(maxsize=1 << 12)
def residue_size_E(s: TowerSpec) -> int:
    """c = |residue field of E| = q0^{f(T/F0)}."""
    e_TF, f_TF = degrees_TF(s)
    f_FF0 = 2 if s.base is Ext.UNRAMIFIED else 1
    return s.q0 ** (f_TF * f_FF0)


def residue_size_K(s: TowerSpec) -> int:
    return residue_size_E(s) ** s.m


@lru_cache(maxsize=1 << 12)
def theta_modulus(s: TowerSpec) -> int:
    return residue_size_K(s) - 1


# -- the level-zero character ------------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _orbit_size(theta: int, c: int, m: int) -> int:
    N = c**m - 1
    seen = {theta % N}
    x = theta % N
    for _ in range(m - 1):
        x = x * c % N
        seen.add(x)
    return len(seen)


def is_admissible(s: TowerSpec, x: LevelZeroChar) -> bool:
    """theta is regular of degree m over the residue field of E."""
    return _orbit_size(x.theta_exp % theta_modulus(s), residue_size_E(s), s.m) == s.m


def theta_value(s: TowerSpec, x: LevelZeroChar, j) -> Fraction:
    """xi(zeta^j) as an exponent in Q/Z, zeta the Teichmueller generator of l_K^x."""
    return Fraction(x.theta_exp * j, theta_modulus(s)) % 1


def xi_minus_one(s: TowerSpec, x: LevelZeroChar) -> Fraction:
    Q1 = theta_modulus(s)
    if Q1 % 2:
        return Fraction(0)  # residue characteristic 2: -1 = 1
    return theta_value(s, x, Q1 // 2)


def sigma_selfdual_violations(s: TowerSpec, x: LevelZeroChar) -> list[Violation]:
    """xi o sigma = xi^-1, split into the residual condition and the uniformizer condition."""
    out, sigma_t = _residual_violations(s, x.theta_exp % theta_modulus(s))
    # xi(t) xi(sigma t) = 1
    if (2 * x.xi_t + sigma_t) % 1 != 0:
        out.append(Violation("uniformizer", "xi(t) xi(sigma(t)) != 1"))
    return out


@lru_cache(maxsize=1 << 16)
def _residual_violations_cached(s: TowerSpec, th: int) -> tuple[tuple[Violation, ...], Fraction]:
    out: list[Violation] = []
    Q1 = theta_modulus(s)
    c = residue_size_E(s)
    x = LevelZeroChar(th, 0)
    if classify_TT0(s) is Ext.UNRAMIFIED:
        # sigma acts on l_K by x -> x^{sqrt Q}
        rootQ = c ** s.m
        r2 = _isqrt_exact(rootQ)
        if r2 is None:
            out.append(Violation("residual-involution", "residue field of K is not a square"))
        elif (th * (r2 + 1)) % Q1:
            out.append(Violation("residual-involution", "theta o sigma != theta^-1 on l_K"))
        sigma_t = Fraction(0)  # sigma(t) = t
    elif s.m % 2 == 0:
        r = s.m // 2
        if (th * (c**r + 1)) % Q1:
            out.append(Violation("residual-involution", "theta^{c^r} != theta^-1 on l_K"))
        sigma_t = xi_minus_one(s, x)  # sigma(t) = -t
    else:
        if (2 * th) % Q1:
            out.append(Violation("residual-involution", "theta^2 != 1 with trivial residual action"))
        sigma_t = xi_minus_one(s, x)
    return tuple(out), sigma_t


def _residual_violations(s: TowerSpec, th: int) -> tuple[list[Violation], Fraction]:
    """Conditions on theta alone, plus the exponent of xi(sigma(t)/t)."""
    out, sigma_t = _residual_violations_cached(s, th)
    return list(out), sigma_t


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _order_of(fr: Fraction) -> int:
    return (fr % 1).denominator


def validate_spec(s: TowerSpec, x: LevelZeroChar, ell: int = 0, *, supercuspidal: bool = True,
                  allow_even_p: bool = False) -> list[Violation]:
    """All constraints on the datum; an empty list means valid."""
    return list(_validate(s, x, ell, supercuspidal, allow_even_p))


@lru_cache(maxsize=1 << 16)
def _validate(s: TowerSpec, x: LevelZeroChar, ell: int, supercuspidal: bool,
              allow_even_p: bool) -> tuple[Violation, ...]:
    return tuple(_violations(s, x, ell, supercuspidal, allow_even_p))


def _violations(s, x, ell, supercuspidal, allow_even_p) -> list[Violation]:
    v: list[Violation] = []
    if not is_prime(s.p) or (s.p == 2 and not allow_even_p):
        v.append(Violation("odd-residue-characteristic", f"p = {s.p} must be an odd prime"))
        return v
    try:
        pp = prime_power(s.q0)
    except FieldError:
        pp = None
    if pp is None or pp[0] != s.p:
        v.append(Violation("residue-field", f"q0 = {s.q0} is not a power of p = {s.p}"))
        return v
    for name in ("e_T0", "f_T0", "m"):
        if getattr(s, name) < 1:
            v.append(Violation("positivity", f"{name} must be >= 1"))
    if s.wild_a < 0:
        v.append(Violation("positivity", "wild_a must be >= 0"))
    if v:
        return v
    if gcd(s.e_T0, s.p) != 1:
        v.append(Violation("tame-ramification", "e(T0/F0) must be prime to p"))
    if s.base is Ext.UNRAMIFIED and s.f_T0 % 2 == 0:
        v.append(Violation("odd-residual-degree", "F/F0 unramified forces f(T/F) odd"))
    if supercuspidal:
        if classify_TT0(s) is Ext.RAMIFIED and not (s.m == 1 or s.m % 2 == 0):
            v.append(Violation("ramified-relative-degree", "T/T0 ramified needs m = 1 or m even"))
        if classify_TT0(s) is Ext.UNRAMIFIED and s.m % 2 == 0:
            v.append(Violation("unramified-relative-degree", "T/T0 unramified needs m odd"))
    if v:
        return v
    if not is_admissible(s, x):
        v.append(Violation("admissibility", "theta is not regular of degree m"))
    v.extend(sigma_selfdual_violations(s, x))
    if ell:
        if not is_prime(ell) or ell == s.p:
            v.append(Violation("coefficient-field", f"ell = {ell} must be a prime different from p"))
        else:
            Q1 = theta_modulus(s)
            if (Q1 // gcd(Q1, x.theta_exp % Q1)) % ell == 0:
                v.append(Violation("coefficient-field", "theta has order divisible by ell"))
            if _order_of(x.xi_t) % ell == 0:
                v.append(Violation("coefficient-field", "xi(t) has order divisible by ell"))
            if ell == 2 and not v and compute_delta0(s, x) is Quad.OMEGA:
                v.append(Violation("ell-two", "delta0 = omega cannot occur when ell = 2"))
    return v


def require_valid(s: TowerSpec, x: LevelZeroChar, ell: int = 0, **kw) -> None:
    v = validate_spec(s, x, ell, **kw)
    if v:
        raise SpecError("; ".join(f"[{a.clause}] {a.message}" for a in v))


# -- delta0, epsilon0, central character --------------------------------------------------------


def delta0_generators(s: TowerSpec, x: LevelZeroChar) -> list[tuple[str, Fraction]]:
    """(name, xi-value exponent) on a generating set of D0^x modulo norms."""
    c = residue_size_E(s)
    if classify_TT0(s) is Ext.UNRAMIFIED:
        # units of K0 are norms from K; the sigma-fixed uniformizer t lies in D0
        return [("t", x.xi_t)]
    if s.m % 2 == 0:
        r = s.m // 2
        alpha = (c**r + 1) // 2  # alpha = zeta^{(c^r+1)/2}, order 2(c^r - 1)
        return [("t*alpha", (x.xi_t + theta_value(s, x, alpha)) % 1),
                ("alpha^2", theta_value(s, x, 2 * alpha))]
    # m = 1, K/K0 ramified: units generated by the Teichmueller generator, uniformizer t^2
    return [("zeta", theta_value(s, x, 1)), ("t^2", (2 * x.xi_t) % 1)]


def compute_delta0(s: TowerSpec, x: LevelZeroChar) -> Quad:
    gens = delta0_generators(s, x)
    for name, val in gens:
        if val not in (0, Fraction(1, 2)):
            raise SpecError(f"delta0 is not quadratic: xi({name}) = exp(2 pi i {val})")
    return Quad.TRIVIAL if all(val == 0 for _, val in gens) else Quad.OMEGA


def compute_epsilon0(s: TowerSpec, x: LevelZeroChar) -> Quad:
    if classify_TT0(s) is not Ext.UNRAMIFIED:
        raise SpecError("epsilon0 is only defined here when T/T0 is unramified")
    if x.xi_t not in (0, Fraction(1, 2)):
        raise SpecError("xi(t) must be +-1 when T/T0 is unramified")
    return Quad.TRIVIAL if x.xi_t == 0 else Quad.OMEGA


def central_char_on_F0(s: TowerSpec, x: LevelZeroChar) -> Central:
    if classify_TT0(s) is Ext.RAMIFIED:
        if s.m > 1:
            return Central.TRIVIAL
        nontriv = compute_delta0(s, x) is Quad.OMEGA and s.f_T0 % 2 == 1
    else:
        nontriv = compute_epsilon0(s, x) is Quad.OMEGA and s.e_T0 % 2 == 1
    return Central.NONTRIVIAL if nontriv else Central.TRIVIAL


def full_invariants(s: TowerSpec, x: LevelZeroChar) -> TowerInvariants:
    inv = tower_invariants(s)
    eps = compute_epsilon0(s, x) if inv.TT0 is Ext.UNRAMIFIED else None
    return replace(inv, delta0=compute_delta0(s, x), epsilon0=eps,
                   central_char_on_F0=central_char_on_F0(s, x))


# -- JSON ---------------------------------------------------------------------------------------


SPEC_KEYS = ("p", "q0", "base", "e_T0", "f_T0", "wild_a", "m", "theta_exp", "xi_t", "ell")


def parse_spec(d: dict) -> tuple[TowerSpec, LevelZeroChar, int]:
    if not isinstance(d, dict):
        raise SpecError("spec must be a JSON object")
    unknown = set(d) - set(SPEC_KEYS)
    if unknown:
        raise SpecError(f"unknown keys: {sorted(unknown)}")
    missing = set(SPEC_KEYS) - {"ell"} - set(d)
    if missing:
        raise SpecError(f"missing keys: {sorted(missing)}")
    for k in ("p", "q0", "e_T0", "f_T0", "wild_a", "m", "theta_exp"):
        if not isinstance(d[k], int) or isinstance(d[k], bool):
            raise SpecError(f"{k} must be an integer")
    try:
        base = Ext(d["base"])
    except ValueError as exc:
        raise SpecError(f"base must be one of {[e.value for e in Ext]}") from exc
    xi = d["xi_t"]
    if not (isinstance(xi, dict) and set(xi) == {"num", "den"}
            and all(isinstance(xi[k], int) for k in ("num", "den")) and xi["den"] > 0):
        raise SpecError("xi_t must be {num, den} with den > 0")
    ell = d.get("ell", 0)
    if not isinstance(ell, int) or ell < 0:
        raise SpecError("ell must be a non-negative integer")
    s = TowerSpec(d["p"], d["q0"], base, d["e_T0"], d["f_T0"], d["wild_a"], d["m"])
    return s, LevelZeroChar(d["theta_exp"], Fraction(xi["num"], xi["den"])), ell


def spec_to_dict(s: TowerSpec, x: LevelZeroChar, ell: int = 0) -> dict:
    return {"p": s.p, "q0": s.q0, "base": s.base.value, "e_T0": s.e_T0, "f_T0": s.f_T0,
            "wild_a": s.wild_a, "m": s.m, "theta_exp": x.theta_exp,
            "xi_t": {"num": x.xi_t.numerator, "den": x.xi_t.denominator}, "ell": ell}


def load_spec(path: str) -> tuple[TowerSpec, LevelZeroChar, int]:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from exc
    return parse_spec(d)
