"""Invariant checks shared by ``selftest`` and the test-suite.

Each check returns a ``CheckResult``; ``run_all`` collects them per module. Checks
compare two independent routes wherever one exists (brute force vs formula,
library predicate vs direct enumeration).
"""

from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import chartab, ffield, glgroup, localtower, mchar, verdict
from .glgroup import Mat, SubgroupSpec, build_subgroup, class_of, gl_order


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        extra = f" -- {self.detail}" if self.detail else ""
        return f"[{tag}] {self.module}.{self.name} ({self.seconds:.2f}s){extra}"


class CheckFailed(AssertionError):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise CheckFailed(msg)


# -- ffield ------------------------------------------------------------------------------------


def prime_powers(limit: int, min_k: int = 1):
    for p in range(2, limit + 1):
        if not ffield.is_prime(p):
            continue
        k = min_k
        while p**k <= limit:
            yield p, k
            k += 1


def _frobenius_table(F: ffield.FqField, times: int = 1) -> np.ndarray:
    """a -> a^(p^times) on raw encodings, through the log tables."""
    q = F.order
    out = np.zeros(q, dtype=np.int64)
    nz = np.arange(1, q)
    logs = F.log_table[nz].astype(np.int64)
    out[nz] = F.exp_table[(logs * pow(F.p, times, q - 1)) % (q - 1)] if q > 2 else nz
    return out


def check_frobenius(limit: int = 10**4, seed: int = 0) -> str:
    rng = random.Random(seed)
    fields = 0
    for p, k in prime_powers(limit):
        F = ffield.build_field(p, k)
        q = F.order
        fr = _frobenius_table(F)
        _require(len(set(fr.tolist())) == q, f"Frobenius not bijective on F_{q}")
        for _ in range(16):
            a, b = rng.randrange(q), rng.randrange(q)
            _require(fr[F.add_raw(a, b)] == F.add_raw(int(fr[a]), int(fr[b])),
                     f"Frobenius not additive on F_{q}")
            _require(fr[F.mul_raw(a, b)] == F.mul_raw(int(fr[a]), int(fr[b])),
                     f"Frobenius not multiplicative on F_{q}")
        # order exactly k
        cur = np.arange(q)
        for i in range(1, k + 1):
            cur = fr[cur]
            is_id = bool((cur == np.arange(q)).all())
            _require(is_id == (i == k), f"Frobenius on F_{q} has the wrong order")
        fixed = set(np.nonzero(fr == np.arange(q))[0].tolist())
        prime = {ffield.embed_raw(ffield.build_field(p, 1), F, c) for c in range(p)}
        _require(fixed == prime, f"Frobenius fixed field of F_{q} is not F_{p}")
        fields += 1
    return f"{fields} fields"


def _divisor_chains(k: int):
    for d in ffield.divisors(k):
        for e in ffield.divisors(k):
            if e % d == 0:
                yield d, e


def check_embedding_chains(limit: int = 10**4) -> str:
    chains = 0
    for p, k in prime_powers(limit, min_k=2):
        K = ffield.build_field(p, k)
        for d, e in _divisor_chains(k):
            D, E = ffield.build_field(p, d), ffield.build_field(p, e)
            for a in range(D.order):
                two = ffield.embed_raw(E, K, ffield.embed_raw(D, E, a))
                _require(two == ffield.embed_raw(D, K, a),
                         f"embedding chain F_{D.order} < F_{E.order} < F_{K.order} fails at {a}")
            chains += 1
    return f"{chains} chains"


def check_norm_transitivity(limit: int = 10**4) -> str:
    chains = 0
    for p, k in prime_powers(limit, min_k=2):
        K = ffield.build_field(p, k)
        for d, e in _divisor_chains(k):
            if d == e or e == k:
                continue
            for a in range(K.order):
                x = ffield.FqElem(K, a)
                direct = ffield.norm_to_subfield(x, d)
                via = ffield.norm_to_subfield(ffield.norm_to_subfield(x, e), d)
                _require(direct == via, f"norm F_{K.order} -> F_{p}^{d} not transitive at {a}")
            chains += 1
    return f"{chains} chains"


def check_norm_product(limit: int = 4096, samples: int = 50, seed: int = 0) -> str:
    """N_{k->d}(x) as the product of the Galois conjugates over F_{p^d}."""
    rng = random.Random(seed)
    count = 0
    for p, k in prime_powers(limit, min_k=2):
        K = ffield.build_field(p, k)
        for d in ffield.divisors(k):
            if d == k:
                continue
            D = ffield.build_field(p, d)
            for _ in range(samples):
                a = rng.randrange(K.order)
                prod, y = K.one().rep, a
                for _ in range(k // d):
                    prod = K.mul_raw(prod, y)
                    y = K.frobenius_raw(y, d)
                want = ffield.norm_to_subfield(ffield.FqElem(K, a), d)
                _require(ffield.embed_raw(D, K, want.rep) == prod, "norm != product of conjugates")
                count += 1
    return f"{count} samples"


# -- mchar -------------------------------------------------------------------------------------


def check_orbits_and_regularity(max_q: int = 9, max_n: int = 6, cap: int = 200_000) -> str:
    """Orbit size divides n; regular iff size n iff no proper norm factorisation.

    Exhaustive for every (q, n) whose exponent group has at most ``cap`` elements.
    """
    tested = 0
    for q in range(2, max_q + 1):
        try:
            ffield.prime_power(q)
        except ffield.FieldError:
            continue
        for n in range(1, max_n + 1):
            N = q**n - 1
            if N > cap:
                continue
            props = mchar.proper_divisors(n)
            for a in range(N):
                c = mchar.MultChar(q, n, a)
                size = len(mchar.galois_orbit(c)[0])
                _require(n % size == 0, f"orbit size {size} does not divide n for {c}")
                reg = mchar.is_regular(c)
                _require(reg == (size == n), f"is_regular disagrees with orbit size for {c}")
                through = any(mchar.factors_through_norm(c, d) for d in props)
                _require(reg == (not through), f"regular vs norm factorisation mismatch at {c}")
            tested += N
    return f"{tested} exponents"


def check_parity(max_q0: int = 5, max_n: int = 6) -> str:
    for q0 in range(2, max_q0 + 1):
        for n in range(1, max_n + 1):
            if mchar.count_sigma_selfdual_supercuspidals(q0, n) > 0:
                _require(n % 2 == 1, f"sigma-selfdual supercuspidal with n = {n} even (q0={q0})")
            if mchar.count_selfdual_supercuspidals(q0, n) > 0:
                _require(n == 1 or n % 2 == 0, f"selfdual supercuspidal with n = {n} odd (q={q0})")
    return "ok"


def _ell_prime_part(a: int, N: int, ell: int) -> int:
    """The prime-to-ell component of the exponent a (a CRT idempotent)."""
    M = mchar.prime_to_part(N, ell)
    L = N // M
    if M == 1:
        return 0
    e = L * pow(L, -1, M) % N  # = 1 mod M, 0 mod L
    return a * e % N


def check_reduction(cases=((4, 3), (3, 2), (9, 2), (4, 2), (2, 6)), ells=(2, 3, 5, 7)) -> str:
    checked = 0
    for q, n in cases:
        N = q**n - 1
        for ell in ells:
            if gcd(ell, q) != 1:
                continue
            for a in range(N):
                c = mchar.MultChar(q, n, a)
                red = mchar.reduce_mod_ell(c, ell)
                orb = mchar.galois_orbit(c)[0]
                # constant on orbits, commutes with orbit formation
                imgs = {mchar.reduce_mod_ell(mchar.MultChar(q, n, b), ell).exp_a for b in orb}
                _require(imgs == set(red.orbit()), f"reduction vs orbit mismatch at {c}, ell={ell}")
                # supercuspidality of the reduction: regularity of the ell'-part
                b = _ell_prime_part(a, N, ell)
                _require(red.is_regular() == mchar.is_regular(mchar.MultChar(q, n, b)),
                         f"reduced regularity mismatch at {c}, ell={ell}")
                checked += 1
    return f"{checked} reductions"


def lift_cases(q0: int, n: int, ell: int):
    """(reduced exponent, lift or None, lift expected) for every class mod M.

    Existence is decided independently by reducing every regular sigma-selfdual
    exponent mod q^n - 1."""
    q = q0 * q0
    N = q**n - 1
    M = mchar.prime_to_part(N, ell)
    reachable = set()
    for a in range(N):
        c = mchar.MultChar(q, n, a)
        if mchar.is_sigma_selfdual(c, q0) and mchar.is_regular(c):
            reachable.add(a % M)
    out = []
    for r in range(M):
        red = mchar.ReducedChar(q, n, ell, M, r)
        admissible = ((q0**n + 1) * r) % M == 0 and red.is_regular()
        try:
            lift = mchar.lift_sigma_selfdual(r, q0, n, ell)
        except mchar.CharacterError:
            lift = None
        out.append((r, lift, admissible and r in reachable))
    return out


def check_lifts(q0: int = 2, n: int = 3, ells=(3, 5, 7)) -> str:
    report = []
    for ell in ells:
        cases = lift_cases(q0, n, ell)
        for r, lift, expected in cases:
            _require((lift is not None) == expected, f"lift existence wrong at r={r}, ell={ell}")
            if lift is not None:
                _require(mchar.reduce_mod_ell(lift, ell).exp_a == r, "lift does not reduce back")
                _require(mchar.is_sigma_selfdual(lift, q0) and mchar.is_regular(lift),
                         "lift is not a regular sigma-selfdual character")
        report.append(f"ell={ell}: {sum(1 for c in cases if c[1] is not None)} of {len(cases)} classes lift")
    return "; ".join(report)


# -- glgroup -----------------------------------------------------------------------------------


def check_class_sizes(max_n: int = 4, qs=(2, 3, 4, 5, 7, 8, 9)) -> str:
    done = 0
    for n in range(1, max_n + 1):
        for q in qs:
            classes = glgroup.enumerate_classes(n, q)
            _require(sum(c.size for c in classes) == gl_order(n, q), f"class sizes for GL_{n}({q})")
            _require(len({c.key for c in classes}) == len(classes), "duplicate class keys")
            done += 1
    return f"{done} groups"


def check_class_algorithms(cases=((2, 3), (2, 5), (2, 9), (3, 2), (3, 3))) -> str:
    for n, q in cases:
        ok, msg = glgroup.cross_check_classes(n, q)
        _require(ok, f"GL_{n}({q}): {msg}")
    return f"{len(cases)} groups"


def random_mat(F, n: int, rng: random.Random) -> Mat:
    while True:
        m = Mat.from_rows(F, [[rng.randrange(F.order) for _ in range(n)] for _ in range(n)])
        if m.det() != 0:
            return m


def check_class_invariance(cases=((2, 3), (3, 3), (2, 9), (3, 4)), trials: int = 1000,
                           seed: int = 0) -> str:
    rng = random.Random(seed)
    for n, q in cases:
        F = ffield.field_of_order(q)
        for _ in range(trials):
            g, h = random_mat(F, n, rng), random_mat(F, n, rng)
            conj = h * g * h.inverse()
            _require(class_of(conj) == class_of(g), f"class_of not conjugation invariant in GL_{n}({q})")
    return f"{trials} trials x {len(cases)}"


def check_subgroups(cases=((2, 3), (3, 3))) -> str:
    for n, q in cases:
        specs = [SubgroupSpec("Mirabolic"), SubgroupSpec("UnipotentUpper"),
                 SubgroupSpec("DiagonalTorus"), SubgroupSpec("EllipticTorus")]
        specs += [SubgroupSpec("Levi", (r, n - r)) for r in range(1, n)]
        specs += [SubgroupSpec("H", (r, n - r)) for r in range(n, -1, -1) if r >= n - r]
        for spec in specs:
            H = build_subgroup(spec, n, q)
            _require(H.order == glgroup.expected_order(spec, n, q), f"{spec} order in GL_{n}({q})")
            _require(H.is_closed(), f"{spec} not closed in GL_{n}({q})")
    return "ok"


def check_h_prime(cases=((2, 3), (3, 3))) -> str:
    """H_{r,s} cap P and H_{r,s} cap G' (G' = GL_{n-1} in the corner) by order counts."""
    out = []
    for n, q in cases:
        P = build_subgroup(SubgroupSpec("Mirabolic"), n, q)
        Gp = build_subgroup(SubgroupSpec("Levi", (n - 1, 1)), n, q).intersect(P)
        _require(Gp.order == gl_order(n - 1, q), "G' has the wrong order")
        for r in range(n - 1, -1, -1):
            s = n - r
            if r < s or s < 1:
                continue
            H = build_subgroup(SubgroupSpec("H", (r, s)), n, q)
            hp = gl_order(r, q) * gl_order(s - 1, q)
            _require(H.intersect(Gp).order == hp, f"|H'_{r},{s}| wrong in GL_{n}({q})")
            _require(H.intersect(P).order == hp * q ** (s - 1), f"|P cap H_{r},{s}| wrong")
            out.append(f"({n},{q},{r},{s})")
    return " ".join(out)


def check_sigma_fixed(n: int = 2, q0: int = 3) -> str:
    q = q0 * q0
    G = glgroup.gl_group(n, q)
    F = G.field
    fr = _frobenius_table(F, F.k // 2)
    els = G.elements
    fixed = els[(fr[els] == els).all(axis=(1, 2))]
    H = build_subgroup(SubgroupSpec("RationalForm", (q0,)), n, q)
    codes = np.sort(glgroup.encode(fixed, q))
    _require(len(codes) == H.order and (codes == H.codes).all(), "sigma-fixed points != GL_n(k0)")
    return f"{H.order} fixed elements"


def check_psi(n: int = 3, q: int = 3) -> str:
    N = build_subgroup(SubgroupSpec("UnipotentUpper"), n, q)
    psi = glgroup.psi_character(n, q)
    F = N.field
    p = F.p
    vals = np.asarray(psi(N.elements)) % p
    for i in range(N.order):
        prod = glgroup.bulk_matmul(F, N.elements[i][None], N.elements)
        idx = N.index_of(glgroup.encode(prod, q))
        _require((np.asarray(psi(N.elements[idx])) % p == (vals[i] + vals) % p).all(),
                 "psi is not multiplicative")
    return f"{N.order ** 2} pairs"


# -- chartab -----------------------------------------------------------------------------------


def check_tables(cases=((1, 2), (1, 4), (2, 3), (2, 4), (2, 5), (2, 9), (3, 2), (3, 3))) -> str:
    for n, q in cases:
        t = chartab.character_table(n, q)  # row invariants checked on build
        t.check_invariants(columns=t.group.num_classes <= 30)
    return f"{len(cases)} tables"


def _reciprocity_pairs(n: int, q: int):
    G = glgroup.gl_group(n, q)
    N = build_subgroup(SubgroupSpec("UnipotentUpper"), n, q)
    yield G, chartab.psi_on(N)
    yield G, chartab.LinearChar.trivial(build_subgroup(SubgroupSpec("Mirabolic"), n, q))
    T = build_subgroup(SubgroupSpec("DiagonalTorus"), n, q)
    for a in range(min(q - 1, 3)):
        yield G, chartab.det_character(T, [(i, 1) for i in range(n)], [a] + [0] * (n - 1))
    if n % 2 == 0:
        L = build_subgroup(SubgroupSpec("Levi", (n // 2, n // 2)), n, q)
        yield G, chartab.det_character(L, [(0, n // 2), (n // 2, n // 2)], [1, 0])


def check_frobenius_reciprocity(cases=((2, 3), (2, 5), (3, 2), (3, 3))) -> str:
    pairs = 0
    for n, q in cases:
        table = chartab.character_table(n, q)
        for G, lam in _reciprocity_pairs(n, q):
            ind = chartab.induce(lam, G)
            # the textbook sum as an independent route for Ind itself
            direct = chartab.induce_direct(lam, G, G.elements[G.rep_indices])
            _require(list(ind.values) == direct, f"induce != direct sum for {lam.subgroup.name}")
            for chi in table.irreducibles:
                left = chartab.as_int(chartab.inner_product(ind, chi))
                _require(left == chartab.hom_dim(chi, lam),
                         f"Frobenius reciprocity fails on {lam.subgroup.name} in GL_{n}({q})")
                pairs += 1
    return f"{pairs} pairs"


def check_gow(cases=((1, 2), (1, 3), (3, 2))) -> str:
    out = []
    for n, q0 in cases:
        rows = chartab.gow_survey(n, q0)
        for r in rows:
            _require(r.dim_hom == (1 if r.sigma_selfdual else 0),
                     f"Gow equivalence fails for a={r.orbit_rep} in GL_{n}({q0 * q0})")
        out.append(f"GL_{n}({q0 * q0}): {sum(r.sigma_selfdual for r in rows)}/{len(rows)}")
    return "; ".join(out)


def check_multiplicity_free(n: int = 2, q0: int = 3) -> str:
    q = q0 * q0
    table = chartab.character_table(n, q)
    H = build_subgroup(SubgroupSpec("RationalForm", (q0,)), n, q)
    dims = [chartab.distinction_dim(chi, H) for chi in table.irreducibles]
    _require(max(dims) <= 1, f"distinction dim {max(dims)} > 1 over GL_{n}({q0})")
    return f"{sum(dims)} of {len(dims)} distinguished"


def check_levi(cases=((2, 3), (2, 9))) -> str:
    out = []
    for n, q in cases:
        rows = [r for r in chartab.levi_survey(n, q) if r.orbit_rep is not None]
        for r in rows:
            _require(r.dim_hom == (1 if r.selfdual else 0), f"Levi equivalence fails at a={r.orbit_rep}")
            _require(r.dim_hom <= 1, "cuspidal with Levi distinction > 1")
        out.append(f"GL_{n}({q}): {sum(r.selfdual for r in rows)}/{len(rows)}")
    return "; ".join(out)


def check_levi_characters(cases=((2, 3, 2), (3, 3, 2), (3, 3, 1))) -> str:
    """Unequal blocks: cuspidals have no vectors transforming by any det character."""
    for n, q, r in cases:
        dims = chartab.levi_character_dims(n, q, r)
        bad = {k: v for k, v in dims.items() if any(v)}
        _require(not bad, f"GL_{r} x GL_{n - r} in GL_{n}({q}): nonzero at {sorted(bad)[:3]}")
    return f"{len(cases)} cases"


def mirabolic_cases(cases=((2, 3), (3, 3))):
    for n, q in cases:
        for r in range(n, -1, -1):
            s = n - r
            if r < s:
                continue
            yield n, q, r, s, chartab.mirabolic_hom_dims(n, q, r, s)


def check_mirabolic(cases=((2, 3), (3, 3))) -> str:
    out = []
    for n, q, r, s, d in mirabolic_cases(cases):
        _require(d == (1 if r == s else 0), f"Hom_(P cap H_{r},{s})(Gamma, 1) = {d} in GL_{n}({q})")
        out.append(f"({n},{q},{r},{s})={d}")
    return " ".join(out)


# -- localtower, verdict -----------------------------------------------------------------------


def _e_f_FF0(s: localtower.TowerSpec) -> tuple[int, int]:
    return (1, 2) if s.base is localtower.Ext.UNRAMIFIED else (2, 1)


def check_tower_structure(cfg: verdict.GridConfig = verdict.GridConfig()) -> str:
    Ext = localtower.Ext
    count = 0
    for s in verdict.grid_specs(cfg):
        inv = localtower.tower_invariants(s)
        e_FF0, f_FF0 = _e_f_FF0(s)
        e_TT0 = 2 if inv.TT0 is Ext.RAMIFIED else 1
        f_TT0 = 2 // e_TT0
        _require(inv.e_TF * e_FF0 == e_TT0 * s.e_T0, f"ramification multiplicativity fails at {s}")
        _require(inv.f_TF * f_FF0 == f_TT0 * s.f_T0, f"residue multiplicativity fails at {s}")
        kk0_ram = inv.KK0 is Ext.RAMIFIED
        _require(kk0_ram == (inv.TT0 is Ext.RAMIFIED and s.m == 1), f"K/K0 classification at {s}")
        count += 1
    return f"{count} specs"


def check_orbit_representatives(cfg: verdict.GridConfig = verdict.GridConfig(q0s=(3, 5)),
                                seed: int = 0) -> str:
    """delta0, epsilon0 and the verdict do not depend on the orbit representative of theta."""
    rng = random.Random(seed)
    count = 0
    for s in verdict.grid_specs(cfg):
        c = localtower.residue_size_E(s)
        Q1 = localtower.theta_modulus(s)
        for th in verdict.sigma_selfdual_thetas(s, 8, rng):
            for xi in verdict.candidate_xi_t(s):
                x = localtower.LevelZeroChar(th, xi)
                if localtower.validate_spec(s, x):
                    continue
                base = localtower.full_invariants(s, x)
                for i in range(1, s.m):
                    y = localtower.LevelZeroChar(th * c**i % Q1, xi)
                    _require(not localtower.validate_spec(s, y), f"orbit representative invalid at {s}")
                    other = localtower.full_invariants(s, y)
                    _require((other.delta0, other.epsilon0) == (base.delta0, base.epsilon0),
                             f"invariants depend on the theta representative at {s}")
                count += 1
    return f"{count} data"


def check_grid(cfg: verdict.GridConfig = verdict.GridConfig()) -> str:
    rep = verdict.run_grid(cfg)
    _require(rep.ok, f"{len(rep.failures)} failures, first {rep.failures[:2]}")
    return f"{rep.specs} specs, {rep.data} data"


LEVEL_ZERO_CASES = ((2, 1), (2, 3), (3, 1))


def check_level_zero(cases=LEVEL_ZERO_CASES) -> str:
    out = []
    for q0, m in cases:
        s = verdict.level_zero_spec(q0, m)
        data = verdict.level_zero_data(q0, m)
        for x in data:
            verdict.cross_check_level_zero(s, x)  # raises on mismatch
        out.append(f"({q0},{m}): {len(data)}")
    return "; ".join(out)


# -- registry ----------------------------------------------------------------------------------


def registry(quick: bool = False, seed: int = 0) -> list[tuple[str, str, callable]]:
    """(module, name, thunk). ``quick`` trims the largest enumerations; ``seed`` feeds
    every randomised check."""
    grid = verdict.GridConfig(theta_samples=8 if quick else 64, seed=seed)
    limit = 2000 if quick else 10**4
    gow = ((1, 2), (1, 3)) if quick else ((1, 2), (1, 3), (3, 2))
    return [
        ("ffield", "frobenius", lambda: check_frobenius(limit, seed)),
        ("ffield", "embedding_chains", lambda: check_embedding_chains(limit)),
        ("ffield", "norm_transitivity", lambda: check_norm_transitivity(limit)),
        ("ffield", "norm_product", lambda: check_norm_product(min(limit, 4096), seed=seed)),
        ("mchar", "orbits_regularity", lambda: check_orbits_and_regularity(
            cap=20_000 if quick else 200_000)),
        ("mchar", "parity", check_parity),
        ("mchar", "reduction", check_reduction),
        ("mchar", "lifts", check_lifts),
        ("glgroup", "class_sizes", lambda: check_class_sizes(3 if quick else 4)),
        ("glgroup", "class_algorithms", check_class_algorithms),
        ("glgroup", "class_invariance", lambda: check_class_invariance(
            trials=200 if quick else 1000, seed=seed)),
        ("glgroup", "subgroups", check_subgroups),
        ("glgroup", "h_prime", check_h_prime),
        ("glgroup", "sigma_fixed", check_sigma_fixed),
        ("glgroup", "psi", check_psi),
        ("chartab", "tables", check_tables),
        ("chartab", "frobenius_reciprocity", check_frobenius_reciprocity),
        ("chartab", "gow", lambda: check_gow(gow)),
        ("chartab", "multiplicity_free", check_multiplicity_free),
        ("chartab", "levi", check_levi),
        ("chartab", "levi_characters", check_levi_characters),
        ("chartab", "mirabolic", check_mirabolic),
        ("localtower", "structure", check_tower_structure),
        ("localtower", "orbit_representatives", lambda: check_orbit_representatives(seed=seed)),
        ("verdict", "grid", lambda: check_grid(grid)),
        ("verdict", "level_zero", lambda: check_level_zero(
            ((2, 1), (3, 1)) if quick else LEVEL_ZERO_CASES)),
    ]


def run_check(module: str, name: str, thunk) -> CheckResult:
    t0 = time.perf_counter()
    try:
        detail = thunk()
        ok = True
    except (CheckFailed, chartab.ConsistencyError) as exc:
        ok, detail = False, str(exc)
    except Exception as exc:  # a crash is a failed invariant, not a pass
        ok, detail = False, f"{type(exc).__name__}: {exc}\n{traceback.format_exc(limit=3)}"
    return CheckResult(module, name, ok, detail or "", time.perf_counter() - t0)


def run_all(quick: bool = False, only: str | None = None, on_result=None,
            seed: int = 0) -> list[CheckResult]:
    out = []
    for module, name, thunk in registry(quick, seed):
        if only and module != only:
            continue
        res = run_check(module, name, thunk)
        out.append(res)
        if on_result:
            on_result(res)
    return out
