"""GL_n(F_q) at desk scale: matrices, conjugacy classes and named subgroups.

Matrices carry encoded field entries.  Bulk work uses numpy arrays of shape
(N, n, n) together with the integer code ``sum(entry * q**(i*n+j))`` that
orders and identifies group elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import prod

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import polyfq
from .config import DEFAULT_BUDGETS, Budgets, BudgetError
from .ffield import FqField, build_field, embed_raw, field_of_order, field_tables, trace_to_subfield

ClassKey = tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


class SingularMatrixError(ValueError):
    pass


# -- single matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class Mat:
    field: FqField
    n: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, F: FqField, rows) -> "Mat":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(F, len(rows), rows)

    @classmethod
    def identity(cls, F: FqField, n: int) -> "Mat":
        return cls(F, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __mul__(self, other: "Mat") -> "Mat":
        if other.field != self.field or other.n != self.n:
            raise ValueError("matrix shape or field mismatch")
        F, n = self.field, self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = F.add_raw(acc, F.mul_raw(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return Mat(F, n, tuple(rows))

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = Mat.identity(self.field, self.n), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def code(self) -> int:
        q = self.field.order
        return sum(int(x) * q**i for i, x in enumerate(itertools.chain(*self.entries)))

    def det(self) -> int:
        return _det(self.field, [list(r) for r in self.entries])

    def rank(self) -> int:
        return _rank(self.field, [list(r) for r in self.entries])

    def inverse(self) -> "Mat":
        F, n = self.field, self.n
        a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.entries)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv = F.inv_raw(a[c][c])
            a[c] = [F.mul_raw(x, inv) for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = F.neg_raw(a[r][c])
                    a[r] = [F.add_raw(x, F.mul_raw(f, y)) for x, y in zip(a[r], a[c])]
        return Mat(F, n, tuple(tuple(r[n:]) for r in a))

    def order(self) -> int:
        ident = Mat.identity(self.field, self.n)
        g, k = self, 1
        while g != ident:
            g = g * self
            k += 1
        return k

    def charpoly(self) -> tuple[int, ...]:
        return _charpoly(self.field, [list(r) for r in self.entries])

    def entrywise(self, fn) -> "Mat":
        return Mat(self.field, self.n, tuple(tuple(fn(x) for x in r) for r in self.entries))


def _rank(F: FqField, a: list[list[int]]) -> int:
    a = [r[:] for r in a]
    rows, cols = len(a), len(a[0]) if a else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = F.inv_raw(a[rank][c])
        for r in range(rows):
            if r != rank and a[r][c]:
                f = F.neg_raw(F.mul_raw(a[r][c], inv))
                a[r] = [F.add_raw(x, F.mul_raw(f, y)) for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _det(F: FqField, a: list[list[int]]) -> int:
    a = [r[:] for r in a]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.neg_raw(det)
        det = F.mul_raw(det, a[c][c])
        inv = F.inv_raw(a[c][c])
        for r in range(c + 1, n):
            if a[r][c]:
                f = F.neg_raw(F.mul_raw(a[r][c], inv))
                a[r] = [F.add_raw(x, F.mul_raw(f, y)) for x, y in zip(a[r], a[c])]
    return det


def _charpoly(F: FqField, a: list[list[int]]) -> tuple[int, ...]:
    """Characteristic polynomial via Hessenberg reduction (works over any field)."""
    n = len(a)
    h = [r[:] for r in a]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in h:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = F.inv_raw(h[j + 1][j])
        for i in range(j + 2, n):
            if h[i][j]:
                u = F.mul_raw(h[i][j], inv)
                h[i] = [F.add_raw(x, F.neg_raw(F.mul_raw(u, y))) for x, y in zip(h[i], h[j + 1])]
                for r in h:
                    r[j + 1] = F.add_raw(r[j + 1], F.mul_raw(u, r[i]))
    polys: list[tuple[int, ...]] = [(1,)]
    for m in range(1, n + 1):
        pm = polyfq.mul(F, (F.neg_raw(h[m - 1][m - 1]), 1), polys[m - 1])
        t = 1
        for i in range(1, m):
            t = F.mul_raw(t, h[m - i][m - i - 1])
            c = F.mul_raw(t, h[m - i - 1][m - 1])
            if c:
                pm = polyfq.sub(F, pm, polyfq.scale(F, polys[m - i - 1], c))
        polys.append(pm)
    return polys[n]


def poly_at_matrix(F: FqField, f: tuple[int, ...], m: Mat) -> Mat:
    n = m.n
    acc = [[0] * n for _ in range(n)]
    for c in reversed(f):
        # acc = acc * m + c I
        prod_ = Mat(F, n, tuple(tuple(r) for r in acc)) * m
        acc = [list(r) for r in prod_.entries]
        for i in range(n):
            acc[i][i] = F.add_raw(acc[i][i], c)
    return Mat(F, n, tuple(tuple(r) for r in acc))


def conjugate_partition(lam) -> tuple[int, ...]:
    lam = [x for x in lam if x > 0]
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def class_of(g: Mat) -> ClassKey:
    """Similarity key: sorted (irreducible factor, partition) pairs."""
    F = g.field
    if g.det() == 0:
        raise SingularMatrixError("class_of needs an invertible matrix")
    key = []
    for f, mult in polyfq.factor(F, g.charpoly()):
        d = len(f) - 1
        fg = poly_at_matrix(F, f, g)
        nullities = [0]
        power = Mat.identity(F, g.n)
        for _ in range(mult):
            power = power * fg
            nullities.append(g.n - power.rank())
            if nullities[-1] == d * mult:
                break
        conj = [(nullities[j] - nullities[j - 1]) // d for j in range(1, len(nullities))]
        conj = [c for c in conj if c > 0]
        key.append((tuple(f), conjugate_partition(conj)))
    return tuple(sorted(key, key=lambda t: (len(t[0]), t[0], t[1])))


def key_str(key: ClassKey) -> str:
    parts = []
    for f, lam in key:
        parts.append("[" + ",".join(map(str, f)) + "]^(" + ",".join(map(str, lam)) + ")")
    return ";".join(parts)


# -- similarity-type combinatorics ---------------------------------------------------


def gl_order(n: int, q: int) -> int:
    return prod(q**n - q**i for i in range(n))


def partitions(m: int, largest: int | None = None):
    if m == 0:
        yield ()
        return
    largest = m if largest is None else largest
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def centralizer_order(key: ClassKey, q: int) -> int:
    """|C(g)| = prod over (f, lam) of Q^{sum lam'_i^2} prod_i prod_{j<=m_i}(1 - Q^-j), Q = q^deg f."""
    total = 1
    for f, lam in key:
        Q = q ** (len(f) - 1)
        conj = conjugate_partition(lam)
        val = Q ** sum(c * c for c in conj)
        for part in set(lam):
            m = lam.count(part)
            for j in range(1, m + 1):
                val = val * (Q**j - 1) // Q**j
        total *= val
    return total


def companion(F: FqField, f: tuple[int, ...]) -> list[list[int]]:
    d = len(f) - 1
    m = [[0] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = 1
    for i in range(d):
        m[i][d - 1] = F.neg_raw(f[i])
    return m


def block_diag(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def canonical_rep(F: FqField, key: ClassKey) -> Mat:
    blocks = []
    for f, lam in key:
        for part in lam:
            blocks.append(companion(F, polyfq.power(F, f, part)))
    return Mat.from_rows(F, block_diag(blocks))


@dataclass(frozen=True)
class ConjClass:
    key: ClassKey
    representative: Mat
    size: int


def _type_keys(F: FqField, n: int) -> list[ClassKey]:
    irr = []
    for d in range(1, n + 1):
        irr.extend(f for f in polyfq.irreducibles(F, d) if f != (0, 1))
    out = []

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(sorted(acc, key=lambda t: (len(t[0]), t[0], t[1]))))
            return
        for idx in range(start, len(irr)):
            f = irr[idx]
            d = len(f) - 1
            if d > remaining:
                continue
            for m in range(1, remaining // d + 1):
                for lam in partitions(m):
                    rec(idx + 1, remaining - d * m, acc + [(f, lam)])

    rec(0, n, [])
    return out


def _class_sort_key(key: ClassKey):
    return (key_str(key),)


def enumerate_classes(n: int, q: int, budgets: Budgets = DEFAULT_BUDGETS) -> list[ConjClass]:
    """Conjugacy classes of GL_n(q) from similarity types and centralizer orders.

    Identity comes first; the rest are ordered by their key strings.
    """
    if n > budgets.max_class_n or q > budgets.max_class_q:
        raise BudgetError(f"class enumeration for GL_{n}({q}) exceeds the budget")
    F = field_of_order(q)
    G = gl_order(n, q)
    keys = _type_keys(F, n)
    ident = class_of(Mat.identity(F, n))
    keys.sort(key=lambda k: (k != ident, _class_sort_key(k)))
    out = [ConjClass(k, canonical_rep(F, k), G // centralizer_order(k, q)) for k in keys]
    if sum(c.size for c in out) != G:
        raise AssertionError("class sizes do not sum to the group order")
    return out


# -- vectorised arithmetic -------------------------------------------------------------


def bulk_matmul(F: FqField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    t = field_tables(F)
    A = np.asarray(A)
    B = np.asarray(B)
    n = A.shape[-1]
    shape = np.broadcast_shapes(A.shape, B.shape)
    out = np.zeros(shape, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            acc = t.mul[A[..., i, 0], B[..., 0, j]]
            for k in range(1, n):
                acc = t.add[acc, t.mul[A[..., i, k], B[..., k, j]]]
            out[..., i, j] = acc
    return out


def bulk_det(F: FqField, A: np.ndarray) -> np.ndarray:
    t = field_tables(F)
    n = A.shape[-1]
    total = np.zeros(A.shape[:-2], dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        term = A[..., 0, perm[0]]
        for i in range(1, n):
            term = t.mul[term, A[..., i, perm[i]]]
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        if inversions % 2:
            term = t.neg[term]
        total = t.add[total, term]
    return total


def encode(A: np.ndarray, q: int) -> np.ndarray:
    n = A.shape[-1]
    flat = A.reshape(A.shape[:-2] + (n * n,)).astype(np.int64)
    weights = q ** np.arange(n * n, dtype=np.int64)
    return flat @ weights


def decode(codes: np.ndarray, q: int, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    digits = np.empty(codes.shape + (n * n,), dtype=np.int64)
    c = codes.copy()
    for i in range(n * n):
        digits[..., i] = c % q
        c //= q
    return digits.reshape(codes.shape + (n, n))


def all_invertible(F: FqField, n: int, budgets: Budgets = DEFAULT_BUDGETS) -> np.ndarray:
    """Every element of GL_n(F), sorted by code."""
    q = F.order
    if gl_order(n, q) > budgets.max_group_order:
        raise BudgetError(f"|GL_{n}({q})| = {gl_order(n, q)} exceeds the group budget")
    if n == 1:
        return np.arange(1, q, dtype=np.int64).reshape(q - 1, 1, 1)
    vecs = np.stack([(np.arange(q**n) // q**i) % q for i in range(n)], axis=-1)
    rows = np.stack(np.meshgrid(*[np.arange(q**n)] * n, indexing="ij"), -1).reshape(-1, n)
    A = vecs[rows]
    A = A[bulk_det(F, A) != 0]
    return A[np.argsort(encode(A, q))]


# -- enumerated subgroups ----------------------------------------------------------------


@dataclass(eq=False)
class Subgroup:
    name: str
    field: FqField
    n: int
    elements: np.ndarray
    codes: np.ndarray = field(init=False)

    def __post_init__(self):
        self.codes = encode(self.elements, self.field.order)
        order = np.argsort(self.codes)
        self.elements = self.elements[order]
        self.codes = self.codes[order]
        if len(np.unique(self.codes)) != len(self.codes):
            raise AssertionError(f"duplicate elements in {self.name}")

    @property
    def order(self) -> int:
        return len(self.codes)

    def index_of(self, codes: np.ndarray) -> np.ndarray:
        """Index of each code, -1 when absent."""
        codes = np.asarray(codes, dtype=np.int64)
        idx = np.searchsorted(self.codes, codes)
        idx = np.clip(idx, 0, len(self.codes) - 1)
        found = self.codes[idx] == codes
        return np.where(found, idx, -1)

    def contains(self, m: Mat) -> bool:
        return bool(self.index_of(np.array([m.code()]))[0] >= 0)

    def mat(self, i: int) -> Mat:
        return Mat.from_rows(self.field, self.elements[i])

    def is_closed(self) -> bool:
        """Closure under product with every element and under inverse (vectorised)."""
        gens = self.elements
        for h in gens[: min(len(gens), 8)]:
            prods = bulk_matmul(self.field, gens, h)
            if (self.index_of(encode(prods, self.field.order)) < 0).any():
                return False
        return True

    def intersect(self, other: "Subgroup", name: str | None = None) -> "Subgroup":
        common = np.intersect1d(self.codes, other.codes)
        return Subgroup(name or f"{self.name}&{other.name}", self.field, self.n,
                        decode(common, self.field.order, self.n))

    def conjugate(self, w: Mat, name: str | None = None) -> "Subgroup":
        """w H w^-1."""
        W = w.array()
        Wi = w.inverse().array()
        els = bulk_matmul(self.field, bulk_matmul(self.field, W, self.elements), Wi)
        return Subgroup(name or f"{self.name}^w", self.field, self.n, els)


def _check_sub_budget(order: int, budgets: Budgets, what: str):
    if order > budgets.max_subgroup_order:
        raise BudgetError(f"{what} has order {order} above the subgroup budget")


def _blockdiag_bulk(parts: list[np.ndarray]) -> np.ndarray:
    """All block-diagonal matrices with blocks drawn from the given element arrays."""
    sizes = [p.shape[-1] for p in parts]
    n = sum(sizes)
    grids = np.meshgrid(*[np.arange(len(p)) for p in parts], indexing="ij")
    idx = [g.reshape(-1) for g in grids]
    out = np.zeros((len(idx[0]), n, n), dtype=np.int64)
    off = 0
    for p, ix, s in zip(parts, idx, sizes):
        out[:, off:off + s, off:off + s] = p[ix]
        off += s
    return out


def gl_elements(F: FqField, n: int, budgets: Budgets = DEFAULT_BUDGETS) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    return all_invertible(F, n, budgets)


def w_perm(r: int, s: int) -> list[int]:
    """The permutation i -> w(i) (1-based, returned as a list indexed from 1)."""
    if r < s or s < 0:
        raise ValueError(f"w_perm needs r >= s >= 0, got ({r}, {s})")
    n = r + s
    if n < 2:
        raise ValueError("w_perm needs r + s >= 2")
    t = r - s + 1
    perm = {i: i for i in range(1, n + 1)}
    for i in range(1, s):
        perm[t + i] = t + 2 * i
    for j in range(0, s - 1):
        perm[r + 1 + j] = t + 1 + 2 * j
    perm[n] = n
    if sorted(perm.values()) != list(range(1, n + 1)):
        raise AssertionError(f"w_{r},{s} is not a permutation: {perm}")
    return [perm[i] for i in range(1, n + 1)]


def w_matrix(F: FqField, r: int, s: int) -> Mat:
    """Permutation matrix sending e_i to e_{w(i)}."""
    perm = w_perm(r, s)
    n = r + s
    rows = [[0] * n for _ in range(n)]
    for i, wi in enumerate(perm):
        rows[wi - 1][i] = 1
    return Mat.from_rows(F, rows)


@dataclass(frozen=True)
class SubgroupSpec:
    kind: str
    params: tuple = ()


SUBGROUP_KINDS = (
    "RationalForm", "Levi", "H", "Mirabolic", "UnipotentUpper", "DiagonalTorus",
    "EllipticTorus", "ParabolicRadical",
)


def expected_order(spec: SubgroupSpec, n: int, q: int) -> int:
    k = spec.kind
    if k == "RationalForm":
        (q0,) = spec.params
        return gl_order(n, q0)
    if k in ("Levi", "H"):
        r, s = spec.params
        return gl_order(r, q) * gl_order(s, q)
    if k == "Mirabolic":
        return gl_order(n - 1, q) * q ** (n - 1)
    if k == "UnipotentUpper":
        return q ** (n * (n - 1) // 2)
    if k == "DiagonalTorus":
        return (q - 1) ** n
    if k == "EllipticTorus":
        return q**n - 1
    if k == "ParabolicRadical":
        (comp,) = spec.params
        return q ** ((n * n - sum(c * c for c in comp)) // 2)
    raise ValueError(f"unknown subgroup kind {k}")


def elliptic_generator(F: FqField, n: int) -> Mat:
    """Companion matrix of the minimal polynomial over F of a generator of F_{q^n}."""
    T = build_field(F.p, F.k * n)
    # prod_{i<n} (x - g^{q^i}) computed in T, coefficients pulled back to F
    poly: tuple[int, ...] = (1,)
    for i in range(n):
        root = T.gen_pow(F.order**i)
        poly = polyfq.mul(T, poly, (T.neg_raw(root), 1))
    from .ffield import restrict_raw

    coeffs = tuple(restrict_raw(T, F, c) for c in poly)
    return Mat.from_rows(F, companion(F, coeffs))


def build_subgroup(spec: SubgroupSpec, n: int, q: int,
                   budgets: Budgets = DEFAULT_BUDGETS) -> Subgroup:
    if spec.kind not in SUBGROUP_KINDS:
        raise ValueError(f"unknown subgroup kind {spec.kind}")
    F = field_of_order(q)
    order = expected_order(spec, n, q)
    _check_sub_budget(order, budgets, f"{spec.kind}{spec.params}")
    kind = spec.kind
    if kind == "RationalForm":
        (q0,) = spec.params
        F0 = field_of_order(q0)
        sub = all_invertible(F0, n, budgets.relaxed(order))
        emb = np.array([embed_raw(F0, F, a) for a in range(q0)], dtype=np.int64)
        els = emb[sub]
        name = f"GL{n}(F{q0})"
    elif kind in ("Levi", "H"):
        r, s = spec.params
        if r + s != n:
            raise ValueError(f"H({r},{s}) needs r + s = n = {n}")
        parts = [gl_elements(F, m, budgets.relaxed(order)) for m in (r, s) if m > 0]
        els = _blockdiag_bulk(parts)
        name = f"Levi({r},{s})"
        if kind == "H":
            lev = Subgroup(name, F, n, els)
            return lev.conjugate(w_matrix(F, r, s), name=f"H({r},{s})")
    elif kind == "Mirabolic":
        gp = gl_elements(F, n - 1, budgets.relaxed(order))
        vecs = np.stack([(np.arange(q ** (n - 1)) // q**i) % q for i in range(n - 1)], axis=-1)
        gi, vi = np.meshgrid(np.arange(len(gp)), np.arange(len(vecs)), indexing="ij")
        gi, vi = gi.reshape(-1), vi.reshape(-1)
        els = np.zeros((len(gi), n, n), dtype=np.int64)
        els[:, : n - 1, : n - 1] = gp[gi]
        els[:, : n - 1, n - 1] = vecs[vi]
        els[:, n - 1, n - 1] = 1
        name = f"P{n}"
    elif kind in ("UnipotentUpper", "ParabolicRadical"):
        if kind == "UnipotentUpper":
            comp = (1,) * n
        else:
            (comp,) = spec.params
        if sum(comp) != n:
            raise ValueError(f"composition {comp} does not sum to {n}")
        blocks = []
        off = 0
        for c in comp:
            blocks.append(range(off, off + c))
            off += c
        free = [(i, j) for bi, b in enumerate(blocks) for i in b
                for bj in range(bi + 1, len(blocks)) for j in blocks[bj]]
        m = len(free)
        codes = np.arange(q**m, dtype=np.int64)
        els = np.zeros((q**m, n, n), dtype=np.int64)
        for i in range(n):
            els[:, i, i] = 1
        c = codes.copy()
        for (i, j) in free:
            els[:, i, j] = c % q
            c //= q
        name = "N" if kind == "UnipotentUpper" else f"U{comp}"
    elif kind == "DiagonalTorus":
        units = np.arange(1, q, dtype=np.int64).reshape(-1, 1, 1)
        els = _blockdiag_bulk([units] * n)
        name = f"T{n}"
    else:  # EllipticTorus
        C = elliptic_generator(F, n)
        Carr = C.array()
        els = np.zeros((q**n - 1, n, n), dtype=np.int64)
        cur = Mat.identity(F, n).array()
        for i in range(q**n - 1):
            els[i] = cur
            cur = bulk_matmul(F, cur, Carr)
        name = f"Ell{n}"
    sg = Subgroup(name, F, n, els)
    if sg.order != order:
        raise AssertionError(f"{name} has order {sg.order}, expected {order}")
    return sg


def psi_exponent(F: FqField, m: Mat | np.ndarray) -> int:
    """Exponent e with psi(u) = zeta_p^e, for psi(u) = zeta_p^{Tr(u_12 + ... + u_{n-1,n})}."""
    arr = m.array() if isinstance(m, Mat) else np.asarray(m)
    n = arr.shape[-1]
    acc = 0
    for i in range(n - 1):
        acc = F.add_raw(acc, int(arr[i, i + 1]))
    return trace_to_subfield(F(acc), 1).rep


def psi_character(n: int, q: int):
    """Nondegenerate character of the upper unipotent group, as an exponent map."""
    F = field_of_order(q)
    trace = np.array([trace_to_subfield(F(a), 1).rep for a in range(q)], dtype=np.int64)
    t = field_tables(F)

    def psi(u) -> np.ndarray | int:
        arr = u.array() if isinstance(u, Mat) else np.asarray(u)
        acc = np.zeros(arr.shape[:-2], dtype=np.int64)
        for i in range(n - 1):
            acc = t.add[acc, arr[..., i, i + 1]]
        out = trace[acc]
        return int(out) if np.ndim(out) == 0 else out

    psi.p = F.p  # type: ignore[attr-defined]
    return psi


# -- the enumerated group with brute-force classes --------------------------------------


def gl_generators(F: FqField, n: int) -> list[Mat]:
    """diag(g,1,...,1) and the simple-root transvections by an F_p-basis of F."""
    gens = []
    d = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    d[0][0] = F.generator
    gens.append(Mat.from_rows(F, d))
    basis = [F.gen_pow(t) for t in range(F.k)]
    for i in range(n - 1):
        for b in basis:
            for (a, c) in ((i, i + 1), (i + 1, i)):
                m = [[1 if x == y else 0 for y in range(n)] for x in range(n)]
                m[a][c] = b
                gens.append(Mat.from_rows(F, m))
    return gens


class GLGroup:
    """Enumerated GL_n(q) with classes found as conjugation orbits."""

    def __init__(self, n: int, q: int, budgets: Budgets = DEFAULT_BUDGETS):
        self.n, self.q = n, q
        self.field = F = field_of_order(q)
        self.order = gl_order(n, q)
        self.elements = all_invertible(F, n, budgets)
        self.codes = encode(self.elements, q)
        if len(self.codes) != self.order:
            raise AssertionError("element count does not match |GL_n(q)|")
        self.class_id, self.classes = self._orbit_classes()

    # lookups

    def index_of(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        idx = np.searchsorted(self.codes, codes)
        idx = np.clip(idx, 0, len(self.codes) - 1)
        if not (self.codes[idx] == codes).all():
            raise KeyError("matrix is not an element of the group")
        return idx

    def class_index(self, m: Mat | np.ndarray) -> int | np.ndarray:
        if isinstance(m, Mat):
            return int(self.class_id[self.index_of([m.code()])[0]])
        return self.class_id[self.index_of(encode(np.asarray(m), self.q))]

    def mat(self, i: int) -> Mat:
        return Mat.from_rows(self.field, self.elements[i])

    def _orbit_classes(self):
        F, q = self.field, self.q
        N = len(self.codes)
        rows, cols = [], []
        for s in gl_generators(F, self.n):
            conj = bulk_matmul(F, bulk_matmul(F, s.array(), self.elements), s.inverse().array())
            rows.append(np.arange(N))
            cols.append(self.index_of(encode(conj, q)))
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
        ncomp, labels = connected_components(graph, directed=True, connection="weak")
        # canonical ordering: identity first, then by similarity key string
        order_idx = np.argsort(labels, kind="stable")
        starts = np.searchsorted(labels[order_idx], np.arange(ncomp))
        first = order_idx[starts]
        sizes = np.bincount(labels, minlength=ncomp)
        keys = [class_of(self.mat(int(i))) for i in first]
        ident = class_of(Mat.identity(F, self.n))
        perm = sorted(range(ncomp), key=lambda c_: (keys[c_] != ident, _class_sort_key(keys[c_])))
        relabel = np.empty(ncomp, dtype=np.int64)
        relabel[perm] = np.arange(ncomp)
        classes = []
        for c_ in perm:
            rep = canonical_rep(F, keys[c_])
            classes.append(ConjClass(keys[c_], rep, int(sizes[c_])))
        class_id = relabel[labels]
        # the canonical representative must lie in its own orbit
        for i, cl in enumerate(classes):
            if int(class_id[self.index_of([cl.representative.code()])[0]]) != i:
                raise AssertionError("similarity key does not separate conjugation orbits")
        return class_id, classes

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @cached_property
    def class_sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.classes], dtype=np.int64)

    @cached_property
    def rep_indices(self) -> np.ndarray:
        return self.index_of([c.representative.code() for c in self.classes])

    @cached_property
    def rep_orders(self) -> list[int]:
        return [c.representative.order() for c in self.classes]

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        out = 1
        for o in self.rep_orders:
            out = lcm(out, o)
        return out

    @cached_property
    def inverse_class(self) -> np.ndarray:
        return np.array([self.class_index(c.representative.inverse()) for c in self.classes],
                        dtype=np.int64)

    def power_map(self, k: int) -> list[int]:
        """Class of g^j for the class representative g, j = 0 .. order-1."""
        g = self.classes[k].representative
        o = self.rep_orders[k]
        out = []
        cur = Mat.identity(self.field, self.n)
        for _ in range(o):
            out.append(self.class_index(cur))
            cur = cur * g
        return out

    def class_counts(self, sub: Subgroup) -> np.ndarray:
        """Number of elements of the subgroup in each class."""
        ids = self.class_id[self.index_of(sub.codes)]
        return np.bincount(ids, minlength=self.num_classes)

    def class_counts_of(self, elements: np.ndarray) -> np.ndarray:
        ids = self.class_id[self.index_of(encode(elements, self.q))]
        return np.bincount(ids, minlength=self.num_classes)


@lru_cache(maxsize=None)
def gl_group(n: int, q: int) -> GLGroup:
    return GLGroup(n, q)


def cross_check_classes(n: int, q: int) -> tuple[bool, str]:
    """Compare brute-force orbits with the similarity-type enumeration."""
    G = gl_group(n, q)
    types = enumerate_classes(n, q)
    if len(types) != G.num_classes:
        return False, f"{len(types)} similarity types vs {G.num_classes} orbits"
    for a, b in zip(types, G.classes):
        if a.key != b.key or a.size != b.size:
            return False, f"mismatch at {key_str(a.key)}: {a.size} vs {b.size}"
    return True, f"{G.num_classes} classes agree"
