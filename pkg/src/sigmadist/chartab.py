"""Exact character tables of GL_n(F_q) and the distinction computations built on them.

Tables come from the Burnside-Dixon method: class-multiplication coefficients,
simultaneous eigenvectors modulo a prime l' = 1 mod exp(G), then exact lifting
of every value to Z[zeta_o] through eigenvalue multiplicities along power maps.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm

import numpy as np

from . import mchar
from .config import DEFAULT_BUDGETS, Budgets, BudgetError
from .cyclotomic import Cyclotomic, phi, reduction_matrix
from .ffield import field_of_order, field_tables, is_prime, prime_factors
from .glgroup import (
    GLGroup, Subgroup, SubgroupSpec, build_subgroup, bulk_det, bulk_matmul, elliptic_generator,
    encode, gl_group, key_str, psi_character,
)


class ConsistencyError(AssertionError):
    """Two engines, or an engine and a theorem-level identity, disagree."""


# -- class functions -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClassFunction:
    group: GLGroup
    values: tuple[Cyclotomic, ...]

    def __post_init__(self):
        if len(self.values) != self.group.num_classes:
            raise ValueError("one value per conjugacy class is required")

    def _check(self, other: "ClassFunction"):
        if other.group is not self.group:
            raise ValueError("class functions live on different groups")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, other.values)))
        return ClassFunction(self.group, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and other.group is self.group
                and all(a == b for a, b in zip(self.values, other.values)))

    __hash__ = object.__hash__

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v.conj() for v in self.values))

    def galois(self, k: int) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v.galois(k % v.E) for v in self.values))

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __getitem__(self, k: int) -> Cyclotomic:
        return self.values[k]


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    if f.group is not g.group:
        raise ValueError("inner product of class functions on different groups")
    G = f.group
    total = Cyclotomic.rational(0)
    for k, size in enumerate(G.class_sizes):
        total = total + f.values[k] * g.values[k].conj() * int(size)
    return total / G.order


def gram_matrix(fs: list[ClassFunction], gs: list[ClassFunction] | None = None) -> list[list[Cyclotomic]]:
    """All inner products <f_i, g_j>, computed in bulk class-order by class-order."""
    gs = fs if gs is None else gs
    G = fs[0].group
    r = G.num_classes
    E_cls = [lcm(*(f.values[k].E for f in itertools.chain(fs, gs))) for k in range(r)]
    E_all = lcm(*E_cls)
    dens_f = np.array([lcm(*(v.den for v in f.values)) for f in fs], dtype=np.int64)
    dens_g = np.array([lcm(*(v.den for v in g.values)) for g in gs], dtype=np.int64)
    red_all = reduction_matrix(E_all)
    total = np.zeros((len(fs), len(gs), phi(E_all)), dtype=np.int64)
    sizes = G.class_sizes
    for o in sorted(set(E_cls)):
        ks = [k for k in range(r) if E_cls[k] == o]
        X = np.zeros((len(fs), len(ks), o), dtype=np.int64)
        Y = np.zeros((len(gs), len(ks), o), dtype=np.int64)
        for a, (src, dst, dens) in enumerate(((fs, X, dens_f), (gs, Y, dens_g))):
            for i, f in enumerate(src):
                for c, k in enumerate(ks):
                    v = f.values[k].lift(o)
                    dst[i, c, : len(v.coeffs)] = np.array(v.coeffs) * (dens[i] // v.den)
        X = X * sizes[ks][None, :, None]
        # conj(Y)[v] = Y[-v]; cyclic product index u = t + v  =>  Y[(t - u) mod o]
        t = np.arange(o)
        shift = (t[:, None] - t[None, :]) % o
        Ys = Y[:, :, shift]  # (j, k, t, u)
        R = _exact_matmul(X.reshape(len(fs), -1),
                          Ys.transpose(1, 2, 0, 3).reshape(len(ks) * o, -1))
        R = R.reshape(len(fs), len(gs), o)
        R = R @ reduction_matrix(o)
        lift_rows = red_all[(np.arange(phi(o)) * (E_all // o))]
        total += R @ lift_rows
    out = []
    for i in range(len(fs)):
        row = []
        for j in range(len(gs)):
            row.append(Cyclotomic(E_all, total[i, j], int(dens_f[i] * dens_g[j]) * G.order,
                                  reduced=True))
        out.append(row)
    return out


def _exact_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Integer matrix product; uses floating BLAS only when every partial sum is exact."""
    bound = float(np.abs(A).max(initial=0)) * float(np.abs(B).max(initial=0)) * A.shape[1]
    if bound < 2.0**52:
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
    return A @ B


def as_int(x: Cyclotomic, what: str = "value") -> int:
    if not x.is_rational() or x.to_fraction().denominator != 1:
        raise ConsistencyError(f"{what} {x} is not an integer")
    return int(x.to_fraction())


# -- linear characters of enumerated subgroups ----------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearChar:
    """A character of an enumerated subgroup, h_i -> zeta_E^{exps[i]}."""

    subgroup: Subgroup
    E: int
    exps: np.ndarray

    @classmethod
    def trivial(cls, H: Subgroup) -> "LinearChar":
        return cls(H, 1, np.zeros(H.order, dtype=np.int64))

    def at(self, i: int) -> Cyclotomic:
        return Cyclotomic.root(self.E, int(self.exps[i]))

    def conj(self) -> "LinearChar":
        return LinearChar(self.subgroup, self.E, (-self.exps) % self.E)


def psi_on(N: Subgroup) -> LinearChar:
    psi = psi_character(N.n, N.field.order)
    return LinearChar(N, N.field.p, np.asarray(psi(N.elements)) % N.field.p)


def det_character(H: Subgroup, blocks: list[tuple[int, int]], exps: list[int]) -> LinearChar:
    """prod_b alpha_b(det of diagonal block b), alpha_b(g^j) = zeta_{q-1}^{a_b j}.

    Blocks are (start, size) in the coordinates where H is block diagonal.
    """
    F = H.field
    q = F.order
    log = np.zeros(q, dtype=np.int64)
    for j in range(q - 1):
        log[F.gen_pow(j)] = j
    total = np.zeros(H.order, dtype=np.int64)
    for (start, size), a in zip(blocks, exps):
        sub = H.elements[:, start:start + size, start:start + size]
        d = bulk_det(F, sub)
        if (d == 0).any():
            raise ValueError("block is singular on some element; wrong block layout")
        total = total + a * log[d]
    return LinearChar(H, q - 1, total % (q - 1))


def _bincount_values(E: int, exps: np.ndarray, weight: int = 1) -> Cyclotomic:
    return Cyclotomic.from_power(E, np.bincount(exps % E, minlength=E) * weight)


# -- induction, restriction --------------------------------------------------------------------


def _class_exp_counts(G: GLGroup, lam: LinearChar) -> np.ndarray:
    """counts[k, e] = #{h in H : h in C_k, lam(h) = zeta^e}."""
    H = lam.subgroup
    ids = G.class_id[G.index_of(H.codes)]
    r = G.num_classes
    flat = np.bincount(ids * lam.E + lam.exps, minlength=r * lam.E)
    return flat.reshape(r, lam.E)


def induce(lam: LinearChar, G: GLGroup) -> ClassFunction:
    """Ind_H^G lam via Ind f(g_k) = |G| / (|H| |C_k|) * sum_{h in H cap C_k} f(h)."""
    counts = _class_exp_counts(G, lam)
    H = lam.subgroup
    vals = []
    for k, size in enumerate(G.class_sizes):
        s = Cyclotomic.from_power(lam.E, counts[k])
        vals.append(s * Fraction(G.order, H.order * int(size)))
    return ClassFunction(G, tuple(vals))


def bulk_inverse(F, A: np.ndarray) -> np.ndarray:
    """Inverses by the adjugate formula."""
    t = field_tables(F)
    n = A.shape[-1]
    det = bulk_det(F, A)
    if (det == 0).any():
        raise ValueError("singular matrix in bulk inverse")
    dinv = t.inv[det]
    out = np.zeros_like(A)
    if n == 1:
        out[..., 0, 0] = dinv
        return out
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(A, j, axis=-2), i, axis=-1)
            c = bulk_det(F, minor)
            if (i + j) % 2:
                c = t.neg[c]
            out[..., i, j] = t.mul[c, dinv]
    return out


def induce_direct(lam: LinearChar, ambient: Subgroup | GLGroup, at: np.ndarray) -> list[Cyclotomic]:
    """(1/|H|) sum over x in the ambient group of lam(x g x^-1), for each g in ``at``.

    The textbook formula; used as the oracle for ``induce`` and for Gamma on P.
    """
    F = lam.subgroup.field
    q = F.order
    X = ambient.elements
    Xi = bulk_inverse(F, X)
    H = lam.subgroup
    out = []
    for g in np.asarray(at):
        conj = bulk_matmul(F, bulk_matmul(F, X, g), Xi)
        idx = H.index_of(encode(conj, q))
        hits = lam.exps[idx[idx >= 0]]
        out.append(_bincount_values(lam.E, hits) / H.order)
    return out


def hom_dim(chi: ClassFunction, lam: LinearChar) -> int:
    """dim Hom_H(chi, lam) = (1/|H|) sum_h chi(h) conj(lam(h))."""
    G = chi.group
    counts = _class_exp_counts(G, lam)
    total = Cyclotomic.rational(0)
    rev = (-np.arange(lam.E)) % lam.E
    for k in range(G.num_classes):
        if counts[k].any():
            conj_sum = Cyclotomic.from_power(lam.E, np.bincount(rev, weights=counts[k],
                                                                minlength=lam.E).astype(np.int64))
            total = total + chi.values[k] * conj_sum
    val = total / lam.subgroup.order
    d = as_int(val, "multiplicity")
    if d < 0:
        raise ConsistencyError(f"negative multiplicity {d}")
    return d


def distinction_dim(chi: ClassFunction, H: Subgroup) -> int:
    """dim Hom_H(rho, 1), the average of chi over H."""
    return hom_dim(chi, LinearChar.trivial(H))


# -- Burnside-Dixon ------------------------------------------------------------------------------------


def class_coefficients(G: GLGroup) -> np.ndarray:
    """c[j, i, k] = #{x in C_j : x^-1 z_k in C_i} for the class representatives z_k."""
    r = G.num_classes
    inv = G.inverse_class
    cls = G.class_id
    out = np.zeros((r, r, r), dtype=np.int64)
    for k, cl in enumerate(G.classes):
        prod = bulk_matmul(G.field, G.elements, cl.representative.array())
        ck = G.class_id[G.index_of(encode(prod, G.q))]
        # x = v^-1 runs over C_j when v runs over C_{j*}; x^-1 z_k = v z_k
        out[:, :, k] = np.bincount(inv[cls] * r + ck, minlength=r * r).reshape(r, r)
    return out


def dixon_prime(exponent: int, order: int) -> int:
    p = exponent + 1
    while not (is_prime(p) and p > 2 * isqrt(order) + 2):
        p += exponent
    return p


def _rref_mod(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = M.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], pivots


def _nullspace_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the kernel of M over F_p."""
    R, piv = _rref_mod(M, p)
    n = M.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for b, f in enumerate(free):
        basis[f, b] = 1
        for i, c in enumerate(piv):
            basis[c, b] = (-R[i, f]) % p
    return basis


def _column_echelon(B: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    R, piv = _rref_mod(B.T, p)
    return R.T.copy(), piv


def _charpoly_mod(M: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial over F_p (low to high) by Hessenberg reduction."""
    n = M.shape[0]
    h = [[int(x) % p for x in row] for row in M]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(h[j + 1][j], -1, p)
        for i in range(j + 2, n):
            if h[i][j]:
                u = h[i][j] * inv % p
                h[i] = [(x - u * y) % p for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = (row[j + 1] + u * row[i]) % p
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        pm = [0] * (m + 1)
        for i, c in enumerate(prev):  # (x - h_mm) * prev
            pm[i + 1] = (pm[i + 1] + c) % p
            pm[i] = (pm[i] - h[m - 1][m - 1] * c) % p
        t = 1
        for i in range(1, m):
            t = t * h[m - i][m - i - 1] % p
            c = t * h[m - i - 1][m - 1] % p
            if c:
                for d, coef in enumerate(polys[m - i - 1]):
                    pm[d] = (pm[d] - c * coef) % p
        polys.append(pm)
    return polys[n]


def _roots_mod(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _primitive_root(p: int) -> int:
    fs = prime_factors(p - 1)
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // f, p) != 1 for f in fs))


@dataclass(frozen=True, eq=False)
class CharTable:
    group: GLGroup
    irreducibles: tuple[ClassFunction, ...]
    dims: tuple[int, ...]
    prime: int = 0
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, i) -> ClassFunction:
        return self.irreducibles[i]

    def check_invariants(self, columns: bool = True) -> None:
        G = self.group
        if len(self.irreducibles) != G.num_classes:
            raise ConsistencyError("#irreducibles != #classes")
        if sum(d * d for d in self.dims) != G.order:
            raise ConsistencyError("sum of squared dimensions != |G|")
        gram = gram_matrix(list(self.irreducibles))
        for i, row in enumerate(gram):
            for j, x in enumerate(row):
                if x != (1 if i == j else 0):
                    raise ConsistencyError(f"row orthogonality fails at ({i},{j}): {x}")
        if columns:
            # sum_chi chi(g_k) conj(chi(g_l)) = delta_kl |C_G(g_k)|
            for k in range(G.num_classes):
                for l in range(k, G.num_classes):
                    s = Cyclotomic.rational(0)
                    for chi in self.irreducibles:
                        s = s + chi.values[k] * chi.values[l].conj()
                    want = G.order // int(G.class_sizes[k]) if k == l else 0
                    if s != want:
                        raise ConsistencyError(f"column orthogonality fails at ({k},{l})")


def dixon_table(n: int, q: int, budgets: Budgets = DEFAULT_BUDGETS) -> CharTable:
    G = gl_group(n, q) if budgets == DEFAULT_BUDGETS else GLGroup(n, q, budgets)
    return _dixon(G)


def _dixon(G: GLGroup) -> CharTable:
    r = G.num_classes
    p = dixon_prime(G.exponent, G.order)
    coeffs = class_coefficients(G) % p
    sizes = G.class_sizes
    # simultaneous eigenspaces, one class matrix at a time
    spaces = [np.eye(r, dtype=np.int64)]
    for j in range(1, r):
        if all(B.shape[1] == 1 for B in spaces):
            break
        A = coeffs[j]
        new = []
        for B in spaces:
            if B.shape[1] == 1:
                new.append(B)
                continue
            B, piv = _column_echelon(B, p)
            M = (A @ B % p)[piv]
            d = M.shape[0]
            found = 0
            for lam in _roots_mod(_charpoly_mod(M, p), p):
                N = _nullspace_mod((M - lam * np.eye(d, dtype=np.int64)) % p, p)
                if N.shape[1]:
                    new.append(B @ N % p)
                    found += N.shape[1]
            if found != d:
                raise ConsistencyError("class matrix is not diagonalisable mod the Dixon prime")
        spaces = new
    if len(spaces) != r or any(B.shape[1] != 1 for B in spaces):
        raise ConsistencyError("eigenspaces failed to split into lines")
    inv = G.inverse_class
    size_inv = np.array([pow(int(s) % p, -1, p) for s in sizes], dtype=np.int64)
    gen = _primitive_root(p)
    dft = {}
    for o in set(G.rep_orders):
        zinv = pow(pow(gen, (p - 1) // o, p), -1, p)
        pw = [pow(zinv, e, p) for e in range(o)]
        dft[o] = np.array([[pw[a * l % o] for l in range(o)] for a in range(o)], dtype=np.int64)
    rows = []
    for B in spaces:
        w = B[:, 0] % p
        w = w * pow(int(w[0]), -1, p) % p
        S = int(np.sum(w * w[inv] % p * size_inv % p) % p)
        d2 = G.order * pow(S, -1, p) % p
        d = next((x for x in range(1, isqrt(G.order) + 1) if x * x % p == d2), None)
        if d is None:
            raise ConsistencyError("no admissible degree for an eigenvector")
        rows.append((d, w * d % p * size_inv % p))
    # lift to characteristic zero through eigenvalue multiplicities
    orders = G.rep_orders
    pmaps = [G.power_map(k) for k in range(r)]
    irreducibles = []
    dims = []
    for d, vals_mod in sorted(rows, key=lambda t: (t[0], tuple(int(x) for x in t[1]))):
        vals = []
        for k in range(r):
            o = orders[k]
            seq = vals_mod[pmaps[k]]  # chi(g^l), l = 0..o-1
            m = (dft[o] @ seq % p) * pow(o, -1, p) % p
            if (m > d).any():
                raise ConsistencyError("eigenvalue multiplicity out of range while lifting")
            vals.append(Cyclotomic.from_power(o, m))
        chi = ClassFunction(G, tuple(vals))
        if chi.values[0] != d:
            raise ConsistencyError("lifted degree disagrees")
        irreducibles.append(chi)
        dims.append(d)
    return CharTable(G, tuple(irreducibles), tuple(dims), p)


@lru_cache(maxsize=None)
def character_table(n: int, q: int) -> CharTable:
    """Cached table for the default budgets; invariants are checked once on build."""
    t = dixon_table(n, q)
    t.check_invariants(columns=t.group.num_classes <= 30)
    return t


def regular_character(G: GLGroup) -> ClassFunction:
    vals = [Cyclotomic.rational(G.order if k == 0 else 0) for k in range(G.num_classes)]
    return ClassFunction(G, tuple(vals))


# -- cuspidals and Green parameters ---------------------------------------------------------


def compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def radical_counts(n: int, q: int) -> tuple[tuple[tuple[int, ...], np.ndarray, int], ...]:
    """(composition, class counts, order) for the unipotent radical of each proper parabolic."""
    G = gl_group(n, q)
    out = []
    for comp in compositions(n):
        if len(comp) < 2:
            continue
        U = build_subgroup(SubgroupSpec("ParabolicRadical", (comp,)), n, q)
        out.append((comp, G.class_counts(U), U.order))
    return tuple(out)


def is_cuspidal(chi: ClassFunction) -> bool:
    G = chi.group
    for _comp, counts, order in radical_counts(G.n, G.q):
        s = Cyclotomic.rational(0)
        for k in np.nonzero(counts)[0]:
            s = s + chi.values[k] * int(counts[k])
        if as_int(s / order, "invariant dimension") != 0:
            return False
    return True


def cuspidal_filter(table: CharTable) -> list[int]:
    """Indices of the cuspidal irreducibles."""
    return [i for i, chi in enumerate(table.irreducibles) if is_cuspidal(chi)]


@lru_cache(maxsize=None)
def elliptic_classes(n: int, q: int) -> tuple[int, ...]:
    """Class index of C^j, j = 0 .. q^n - 2, for the fixed elliptic companion matrix C."""
    G = gl_group(n, q)
    T = build_subgroup(SubgroupSpec("EllipticTorus"), n, q)
    C = elliptic_generator(G.field, n)
    # T's elements are sorted by code; recompute powers in order
    N = q**n - 1
    powers = np.zeros((N, n, n), dtype=np.int64)
    cur = np.eye(n, dtype=np.int64)
    Carr = C.array()
    for j in range(N):
        powers[j] = cur
        cur = bulk_matmul(G.field, cur, Carr)
    if not (np.sort(encode(powers, q)) == T.codes).all():
        raise ConsistencyError("elliptic torus powers do not match the enumerated torus")
    return tuple(int(x) for x in G.class_id[G.index_of(encode(powers, q))])


def green_values(n: int, q: int, a: int) -> dict[int, Cyclotomic]:
    """Predicted cuspidal values (-1)^{n-1} sum_i zeta^{a j q^i} at elliptic regular classes."""
    N = q**n - 1
    cls = elliptic_classes(n, q)
    out = {}
    for j in range(N):
        if len(mchar.orbit_mod(j, q, n, N)) != n:
            continue
        vec = np.zeros(N, dtype=np.int64)
        for i in range(n):
            vec[(a * j * q**i) % N] += 1
        val = Cyclotomic.from_power(N, vec) * (-1) ** (n - 1)
        out.setdefault(cls[j], val)
    return out


def green_match(table: CharTable, c: mchar.MultChar) -> int:
    """Index of the unique cuspidal whose elliptic values follow the Green formula."""
    G = table.group
    if c.base_q != G.q or c.deg_n != G.n:
        raise ValueError("character does not belong to this group's torus")
    if not mchar.is_regular(c):
        raise ValueError("Green matching needs a regular character")
    pred = green_values(G.n, G.q, c.exp_a)
    hits = []
    for i in cuspidal_filter_cached(table):
        chi = table.irreducibles[i]
        if all(chi.values[k] == v for k, v in pred.items()):
            hits.append(i)
    if len(hits) != 1:
        raise ConsistencyError(f"Green matching of a={c.exp_a} found {len(hits)} cuspidals")
    return hits[0]


_CUSP_CACHE: dict[int, list[int]] = {}


def cuspidal_filter_cached(table: CharTable) -> list[int]:
    key = id(table)
    if key not in _CUSP_CACHE:
        _CUSP_CACHE[key] = cuspidal_filter(table)
    return _CUSP_CACHE[key]


def green_correspondence(table: CharTable) -> dict[int, int]:
    """Regular orbit representative -> cuspidal index; must be a bijection."""
    G = table.group
    out = {}
    for orb in mchar.regular_orbits(G.q, G.n):
        out[orb[0]] = green_match(table, mchar.MultChar(G.q, G.n, orb[0]))
    if len(set(out.values())) != len(out) or len(out) != len(cuspidal_filter_cached(table)):
        raise ConsistencyError("Green correspondence is not a bijection onto cuspidals")
    return out


# -- surveys -------------------------------------------------------------------------------------


@dataclass(frozen=True)
class GowRow:
    orbit_rep: int
    sigma_selfdual: bool
    dim_hom: int


def gow_survey(n: int, q0: int) -> list[GowRow]:
    """Every supercuspidal of GL_n(F_{q0^2}) with its sigma-selfduality and GL_n(F_q0)-distinction."""
    q = q0 * q0
    table = character_table(n, q)
    H = build_subgroup(SubgroupSpec("RationalForm", (q0,)), n, q)
    rows = []
    for a, idx in sorted(green_correspondence(table).items()):
        c = mchar.MultChar(q, n, a)
        rows.append(GowRow(a, mchar.is_sigma_selfdual_orbit(c, q0),
                           distinction_dim(table.irreducibles[idx], H)))
    return rows


@dataclass(frozen=True)
class LeviRow:
    index: int
    orbit_rep: int | None
    selfdual: bool | None
    dim_hom: int


def levi_survey(n: int, q: int) -> list[LeviRow]:
    """Distinction by GL_r x GL_r (n = 2r) for every irreducible; Green data on cuspidals."""
    if n % 2:
        raise ValueError("the Levi survey needs n even")
    r = n // 2
    table = character_table(n, q)
    H = build_subgroup(SubgroupSpec("Levi", (r, r)), n, q)
    params = {idx: a for a, idx in green_correspondence(table).items()}
    rows = []
    for i, chi in enumerate(table.irreducibles):
        a = params.get(i)
        sd = None if a is None else mchar.is_selfdual(mchar.MultChar(q, n, a))
        rows.append(LeviRow(i, a, sd, distinction_dim(chi, H)))
    return rows


def mirabolic_gamma(n: int, q: int, at: np.ndarray) -> list[Cyclotomic]:
    """Values of Gamma = Ind_N^P psi at the given elements of P."""
    P = build_subgroup(SubgroupSpec("Mirabolic"), n, q)
    N = build_subgroup(SubgroupSpec("UnipotentUpper"), n, q)
    return induce_direct(psi_on(N), P, at)


def mirabolic_hom_dims(n: int, q: int, r: int, s: int, chi_H: LinearChar | None = None) -> int:
    """dim Hom_{P cap H_{r,s}}(Gamma, chi_H) by an explicit character sum."""
    if q % 2 == 0:
        raise ValueError("the mirabolic computation assumes odd q")
    if r + s != n or r < s:
        raise ValueError(f"need r >= s and r + s = n, got ({r}, {s}) for n = {n}")
    P = build_subgroup(SubgroupSpec("Mirabolic"), n, q)
    H = build_subgroup(SubgroupSpec("H", (r, s)), n, q)
    PH = P.intersect(H)
    gamma = mirabolic_gamma(n, q, PH.elements)
    if chi_H is None:
        exps, E = np.zeros(PH.order, dtype=np.int64), 1
    else:
        E = chi_H.E
        exps = chi_H.exps[chi_H.subgroup.index_of(PH.codes)]
    total = Cyclotomic.rational(0)
    for g, e in zip(gamma, exps):
        total = total + g * Cyclotomic.root(E, -int(e))
    return as_int(total / PH.order, "mirabolic multiplicity")


def levi_character_dims(n: int, q: int, r: int) -> dict[tuple[int, int], list[int]]:
    """dim Hom_M(chi, alpha(det) x beta(det)) for all cuspidals, M = GL_r x GL_{n-r}."""
    s = n - r
    table = character_table(n, q)
    M = build_subgroup(SubgroupSpec("Levi", (r, s)), n, q)
    blocks = [(0, r), (r, s)] if s else [(0, r)]
    out = {}
    cusp = cuspidal_filter_cached(table)
    for a in range(q - 1):
        for b in range(q - 1 if s else 1):
            lam = det_character(M, blocks, [a, b] if s else [a])
            out[(a, b)] = [hom_dim(table.irreducibles[i], lam) for i in cusp]
    return out


# -- export ----------------------------------------------------------------------------------------


def table_csv(table: CharTable) -> str:
    G = table.group
    E = lcm(*(v.E for chi in table.irreducibles for v in chi.values))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["E", E])
    w.writerow(["dim"] + [key_str(c.key) for c in G.classes])
    w.writerow(["size"] + [int(s) for s in G.class_sizes])
    for chi, d in zip(table.irreducibles, table.dims):
        w.writerow([d] + [str(v.lift(E)) for v in chi.values])
    return buf.getvalue()


def check_budget(n: int, q: int, budgets: Budgets = DEFAULT_BUDGETS) -> None:
    from .glgroup import gl_order

    if gl_order(n, q) > budgets.max_group_order:
        raise BudgetError(f"|GL_{n}({q})| exceeds the group budget {budgets.max_group_order}")
    field_of_order(q)
