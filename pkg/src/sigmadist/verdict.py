"""Distinguished vs omega-distinguished decisions, unramified twists, and scans."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .localtower import (
    Central, Ext, LevelZeroChar, Quad, SpecError, TowerInvariants, TowerSpec, classify_KK0,
    classify_TT0, full_invariants, is_admissible, require_valid, residue_size_E,
    sigma_selfdual_violations, theta_modulus, tower_invariants, validate_spec,
)


class Outcome:
    DISTINGUISHED = "Distinguished"
    OMEGA = "OmegaDistinguished"


# rule tags name the clause of the decision table that fired
RULE_ELL_TWO = "ell=2:always-distinguished"
RULE_RAM_M1 = "TT0-ramified,m=1:distinguished-iff-delta0-trivial"
RULE_RAM_EVEN = "TT0-ramified,m-even:distinguished-iff-delta0-nontrivial"
RULE_UNRAM = "TT0-unramified:distinguished-iff-epsilon0-trivial"


@dataclass(frozen=True)
class Verdict:
    outcome: str
    rule: str
    invariants_used: TowerInvariants

    def to_dict(self) -> dict:
        inv = self.invariants_used
        return {
            "outcome": self.outcome,
            "rule": self.rule,
            "invariants": {
                "TT0": inv.TT0.value,
                "KK0": inv.KK0.value,
                "delta0": inv.delta0.value if inv.delta0 else None,
                "epsilon0": inv.epsilon0.value if inv.epsilon0 else None,
                "torsion": inv.f_KF,
                "n": inv.n,
                "central_char_on_F0": inv.central_char_on_F0.value,
            },
        }


def decide(s: TowerSpec, x: LevelZeroChar, ell: int = 0, *, allow_even_p: bool = False) -> Verdict:
    require_valid(s, x, ell, allow_even_p=allow_even_p)
    inv = full_invariants(s, x)
    if ell == 2:
        return Verdict(Outcome.DISTINGUISHED, RULE_ELL_TWO, inv)
    if inv.TT0 is Ext.RAMIFIED and s.m == 1:
        dist, rule = inv.delta0 is Quad.TRIVIAL, RULE_RAM_M1
    elif inv.TT0 is Ext.RAMIFIED:
        dist, rule = inv.delta0 is Quad.OMEGA, RULE_RAM_EVEN
    else:
        dist, rule = inv.epsilon0 is Quad.TRIVIAL, RULE_UNRAM
    return Verdict(Outcome.DISTINGUISHED if dist else Outcome.OMEGA, rule, inv)


# -- unramified twists ---------------------------------------------------------------------


@dataclass(frozen=True)
class UnramifiedTwist:
    """chi unramified on F^x with chi(uniformizer of F) = exp(2 pi i value)."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value) % 1)

    @property
    def chi_order(self) -> int:
        return self.value.denominator

    @classmethod
    def of_order(cls, order: int, k: int = 1) -> "UnramifiedTwist":
        return cls(Fraction(k, order))


def twist(s: TowerSpec, x: LevelZeroChar, chi: UnramifiedTwist) -> LevelZeroChar:
    """xi -> xi (chi o N_{K/F}).

    chi o N_{K/F} is trivial on units, so theta is unchanged; at the uniformizer t of
    E (also one of K) the norm to F has valuation f(K/F), giving the factor
    chi(varpi_F)^{f(K/F)}.
    """
    f_KF = tower_invariants(s).f_KF
    return LevelZeroChar(x.theta_exp, x.xi_t + f_KF * chi.value)


def twist_is_valid(s: TowerSpec, x: LevelZeroChar, chi: UnramifiedTwist, ell: int) -> bool:
    if ell and chi.chi_order % ell == 0:
        return False
    return not validate_spec(s, twist(s, x, chi), ell)


@dataclass(frozen=True)
class TwistReport:
    exists: bool
    witness: UnramifiedTwist | None
    reason: str


def omega_twist_exists(s: TowerSpec, x: LevelZeroChar, ell: int = 0) -> TwistReport:
    """Whether some unramified twist is omega-distinguished (for distinguished input)."""
    if ell == 2:
        raise SpecError("omega-distinction is not defined apart from distinction when ell = 2")
    v = decide(s, x, ell)
    if v.outcome != Outcome.DISTINGUISHED:
        raise SpecError("omega_twist_exists needs a distinguished input")
    if classify_KK0(s) is Ext.RAMIFIED:
        return TwistReport(False, None, "D/D0 ramified: (chi o N)|D0 is unramified, never omega_{D/D0}")
    f_DF = tower_invariants(s).f_DF
    for order in _divisors(2 * f_DF):
        if ell and order % ell == 0:
            continue
        for k in range(1, order):
            if gcd(k, order) != 1:
                continue
            chi = UnramifiedTwist.of_order(order, k)
            if not twist_is_valid(s, x, chi, ell):
                continue
            if decide(s, twist(s, x, chi), ell).outcome == Outcome.OMEGA:
                return TwistReport(True, chi, f"witness of order {order}")
    raise SpecError("D/D0 unramified but no omega-distinguished twist of order dividing 2 f(D/F)")


def exhaustive_twist_scan(s: TowerSpec, x: LevelZeroChar, ell: int = 0,
                          max_order: int | None = None) -> UnramifiedTwist | None:
    """First omega-distinguished valid twist among chi of order <= max_order (default 8 f(D/F))."""
    inv = tower_invariants(s)
    max_order = 8 * inv.f_DF if max_order is None else max_order
    # chi enters the twisted datum only through f(K/F) * value mod 1; skip repeats
    seen: set[tuple[int, int]] = set()
    for order in range(1, max_order + 1):
        if ell and order % ell == 0:
            continue
        for k in range(order):
            if gcd(k, order) != 1 and not (order == 1 and k == 0):
                continue
            r = inv.f_KF * k % order
            g = gcd(r, order)
            if (r // g, order // g) in seen:
                continue
            seen.add((r // g, order // g))
            chi = UnramifiedTwist.of_order(order, k)
            if twist_is_valid(s, x, chi, ell) and decide(s, twist(s, x, chi), ell).outcome == Outcome.OMEGA:
                return chi
    return None


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- scan grid -----------------------------------------------------------------------------


@dataclass(frozen=True)
class GridConfig:
    q0s: tuple[int, ...] = (3, 5, 7, 9)
    max_m: int = 6
    max_e: int = 6
    max_f: int = 4
    max_wild: int = 1
    ells: tuple[int, ...] = (0, 2, 3)
    theta_samples: int = 64
    seed: int = 0


def candidate_xi_t(s: TowerSpec) -> list[Fraction]:
    return [Fraction(k, 4) for k in range(4)]


def sigma_selfdual_thetas(s: TowerSpec, cap: int, rng: random.Random) -> list[int]:
    """Admissible sigma-selfdual theta exponents: all of them, or ``cap`` of the
    smallest plus ``cap`` seeded random ones when there are more."""
    Q1 = theta_modulus(s)
    c = residue_size_E(s)
    if classify_TT0(s) is Ext.UNRAMIFIED:
        killer = isqrt(Q1 + 1) + 1
    elif s.m % 2 == 0:
        killer = c ** (s.m // 2) + 1
    else:
        killer = 2
    step = Q1 // gcd(Q1, killer)
    count = Q1 // step
    probe = LevelZeroChar
    if count <= 4 * cap:
        js = range(count)
    else:
        extra: set[int] = set()
        while len(extra) < cap:
            extra.add(rng.randrange(cap, count))
        js = list(range(cap)) + sorted(extra)
    out = []
    for j in js:
        th = j * step
        if is_admissible(s, probe(th, 0)):
            out.append(th)
    return out


def grid_specs(cfg: GridConfig):
    from .ffield import prime_power

    for q0 in cfg.q0s:
        p, _ = prime_power(q0)
        for base in (Ext.UNRAMIFIED, Ext.RAMIFIED):
            for e in range(1, cfg.max_e + 1):
                for f in range(1, cfg.max_f + 1):
                    for a in range(cfg.max_wild + 1):
                        for m in range(1, cfg.max_m + 1):
                            s = TowerSpec(p, q0, base, e, f, a, m)
                            # structural validity, independent of the character
                            probe = [v for v in validate_spec(s, LevelZeroChar(0, 0))
                                     if v.clause not in ("admissibility", "uniformizer",
                                                         "residual-involution")]
                            if not probe:
                                yield s


@dataclass
class GridReport:
    specs: int = 0
    data: int = 0
    decisions: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_grid(cfg: GridConfig = GridConfig(), twist_checks: bool = True) -> GridReport:
    """Dichotomy, the odd-n central-character criterion and the twist-existence
    equivalence over every valid datum of the grid."""
    rng = random.Random(cfg.seed)
    rep = GridReport()
    for s in grid_specs(cfg):
        rep.specs += 1
        thetas = sigma_selfdual_thetas(s, cfg.theta_samples, rng)
        for th in thetas:
            for xi in candidate_xi_t(s):
                x = LevelZeroChar(th, xi)
                for ell in cfg.ells:
                    if ell == s.p or validate_spec(s, x, ell):
                        continue
                    rep.data += 1
                    _check_datum(s, x, ell, rep, twist_checks)
    return rep


def _check_datum(s, x, ell, rep: GridReport, twist_checks: bool):
    v = decide(s, x, ell)
    rep.decisions += 1
    if ell != 2:
        # omega-distinction is the complementary outcome; re-derive it independently
        omega = _omega_distinguished(s, x)
        if omega == (v.outcome == Outcome.DISTINGUISHED):
            rep.failures.append(("dichotomy", s, x, ell))
    if ell == 2 and v.outcome != Outcome.DISTINGUISHED:
        rep.failures.append(("ell-two", s, x, ell))
    inv = v.invariants_used
    if inv.n % 2 == 1:
        central_trivial = inv.central_char_on_F0 is Central.TRIVIAL
        if (v.outcome == Outcome.DISTINGUISHED) != central_trivial:
            rep.failures.append(("odd-n-central", s, x, ell))
    if twist_checks and ell != 2 and v.outcome == Outcome.DISTINGUISHED:
        claimed = omega_twist_exists(s, x, ell)
        found = exhaustive_twist_scan(s, x, ell)
        if claimed.exists != (found is not None):
            rep.failures.append(("twist-existence", s, x, ell))
    if twist_checks and s.base is Ext.UNRAMIFIED and ell != 2:
        chi = UnramifiedTwist(Fraction(1, 2))
        if twist_is_valid(s, x, chi, ell):
            if decide(s, twist(s, x, chi), ell).outcome == v.outcome:
                rep.failures.append(("omega-twist-swap", s, x, ell))
        else:
            rep.failures.append(("omega-twist-invalid", s, x, ell))


def _omega_distinguished(s: TowerSpec, x: LevelZeroChar) -> bool:
    """Omega-distinction read off the omega-clauses directly (not as a complement)."""
    inv = full_invariants(s, x)
    if inv.TT0 is Ext.RAMIFIED:
        if s.m == 1:
            return inv.delta0 is Quad.OMEGA
        return inv.delta0 is Quad.TRIVIAL
    return inv.epsilon0 is Quad.OMEGA


# -- level-zero cross-check with the finite engine -------------------------------------------


@dataclass(frozen=True)
class CrossCheck:
    outcome: str
    finite_dim: int
    xi_t_trivial: bool
    consistent: bool


def level_zero_spec(q0: int, m: int) -> TowerSpec:
    from .ffield import prime_power

    p, _ = prime_power(q0)
    return TowerSpec(p, q0, Ext.UNRAMIFIED, 1, 1, 0, m)


def cross_check_level_zero(s: TowerSpec, x: LevelZeroChar) -> CrossCheck:
    """Compare the verdict with GL_m(F_{q0^2}) / GL_m(F_q0) distinction of the Green cuspidal."""
    from . import chartab, mchar
    from .glgroup import SubgroupSpec, build_subgroup

    if (s.wild_a, s.e_T0, s.f_T0, s.base) != (0, 1, 1, Ext.UNRAMIFIED):
        raise SpecError("cross-check needs a level-zero spec with E = F and F/F0 unramified")
    require_valid(s, x, 0, allow_even_p=True)
    q = s.q0 * s.q0
    table = chartab.character_table(s.m, q)
    a = x.theta_exp % theta_modulus(s)
    idx = chartab.green_match(table, mchar.MultChar(q, s.m, a))
    H = build_subgroup(SubgroupSpec("RationalForm", (s.q0,)), s.m, q)
    dim = chartab.distinction_dim(table.irreducibles[idx], H)
    outcome = decide(s, x, 0, allow_even_p=True).outcome
    trivial = x.xi_t == 0
    consistent = (outcome == Outcome.DISTINGUISHED) == (dim == 1 and trivial)
    if not consistent:
        raise chartab.ConsistencyError(f"level-zero mismatch: {outcome}, dim {dim}, xi(t) {x.xi_t}")
    return CrossCheck(outcome, dim, trivial, consistent)


def level_zero_data(q0: int, m: int) -> list[LevelZeroChar]:
    """Every sigma-selfdual admissible theta with both signs of xi(t)."""
    s = level_zero_spec(q0, m)
    out = []
    Q1 = theta_modulus(s)
    for th in range(Q1):
        for xi in (Fraction(0), Fraction(1, 2)):
            x = LevelZeroChar(th, xi)
            if not validate_spec(s, x, 0, allow_even_p=True):
                out.append(x)
    return out
