import random

import hypothesis
import hypothesis.strategies as st
import numpy as np
import pytest

from sigmadist import checks, glgroup, polyfq
from sigmadist.config import Budgets, BudgetError
from sigmadist.ffield import field_of_order
from sigmadist.glgroup import Mat, SubgroupSpec, build_subgroup, class_of, gl_order


@pytest.mark.parametrize("n,q,count", [(2, 3, 8), (2, 9, 80), (1, 7, 6), (1, 4, 3), (3, 4, 60)])
def test_class_counts(n, q, count):
    classes = glgroup.enumerate_classes(n, q)
    assert len(classes) == count
    assert sum(c.size for c in classes) == gl_order(n, q)
    for c in classes:
        assert c.size * glgroup.centralizer_order(c.key, q) == gl_order(n, q)
        assert class_of(c.representative) == c.key


@pytest.mark.parametrize("n,q", [(2, 3), (2, 9), (3, 3), (3, 2)])
def test_two_class_algorithms_agree(n, q):
    ok, msg = glgroup.cross_check_classes(n, q)
    assert ok, msg


def test_class_budget():
    with pytest.raises(BudgetError):
        glgroup.enumerate_classes(5, 2, Budgets(max_class_n=4))


def test_identity_key():
    F = field_of_order(5)
    key = class_of(Mat.identity(F, 3))
    assert key == (((F.neg_raw(1), 1), (1, 1, 1)),)


def test_companion_of_irreducible_cubic():
    F = field_of_order(2)
    f = next(iter(polyfq.irreducibles(F, 3)))
    m = Mat.from_rows(F, glgroup.companion(F, f))
    assert class_of(m) == ((tuple(f), (1,)),)


def test_singular_rejected():
    F = field_of_order(3)
    with pytest.raises(glgroup.SingularMatrixError):
        class_of(Mat.from_rows(F, [[1, 1], [1, 1]]))


@st.composite
def conjugate_pairs(draw):
    n, q = draw(st.sampled_from([(2, 3), (3, 3), (2, 9), (3, 4), (4, 2), (2, 7)]))
    rng = random.Random(draw(st.integers(0, 2**32)))
    F = field_of_order(q)
    g, h = checks.random_mat(F, n, rng), checks.random_mat(F, n, rng)
    return g, h


@hypothesis.settings(max_examples=1000)
@hypothesis.given(conjugate_pairs())
def test_class_of_conjugation_invariant(pair):
    g, h = pair
    assert class_of(h * g * h.inverse()) == class_of(g)


@pytest.mark.parametrize("spec,n,q,order", [
    (SubgroupSpec("Mirabolic"), 2, 3, 6),
    (SubgroupSpec("RationalForm", (2,)), 3, 4, 168),
    (SubgroupSpec("EllipticTorus"), 2, 3, 8),
    (SubgroupSpec("UnipotentUpper"), 3, 3, 27),
    (SubgroupSpec("Levi", (2, 1)), 3, 3, 96),
])
def test_subgroup_orders(spec, n, q, order):
    H = build_subgroup(spec, n, q)
    assert H.order == order
    assert H.is_closed()


def test_h11_is_the_diagonal_torus():
    H = build_subgroup(SubgroupSpec("H", (1, 1)), 2, 5)
    T = build_subgroup(SubgroupSpec("DiagonalTorus"), 2, 5)
    assert (H.codes == T.codes).all()


def test_h_needs_r_plus_s_n():
    with pytest.raises(ValueError):
        build_subgroup(SubgroupSpec("H", (2, 2)), 3, 3)


def test_subgroup_budget():
    with pytest.raises(BudgetError):
        build_subgroup(SubgroupSpec("Mirabolic"), 3, 9, Budgets(max_subgroup_order=100))


@pytest.mark.parametrize("r,s,perm", [(2, 1, [1, 2, 3]), (1, 1, [1, 2]), (2, 2, [1, 3, 2, 4]),
                                      (3, 3, [1, 3, 5, 2, 4, 6])])
def test_w_perm(r, s, perm):
    assert glgroup.w_perm(r, s) == perm


def test_w_perm_rejects_r_below_s():
    with pytest.raises(ValueError):
        glgroup.w_perm(1, 2)


def test_h22_is_conjugated_levi():
    F = field_of_order(3)
    w = glgroup.w_matrix(F, 2, 2)
    L = build_subgroup(SubgroupSpec("Levi", (2, 2)), 4, 3)
    H = build_subgroup(SubgroupSpec("H", (2, 2)), 4, 3)
    assert (L.conjugate(w).codes == H.codes).all()


def test_psi_examples():
    F = field_of_order(3)
    psi = glgroup.psi_character(2, 3)
    assert int(psi(np.eye(2, dtype=np.int64)[None])[0]) == 0
    u = np.array([[[1, 1], [0, 1]]])
    assert int(psi(u)[0]) % 3 == 1
    assert checks.check_psi(3, 3)


def test_h_prime_orders():
    checks.check_h_prime()


def test_sigma_fixed_points():
    checks.check_sigma_fixed(2, 3)


def test_group_power_map_and_inverse():
    G = glgroup.gl_group(2, 3)
    inv = G.inverse_class
    assert (inv[inv] == np.arange(G.num_classes)).all()
    ident = G.class_index(glgroup.Mat.identity(G.field, 2))
    for k in range(G.num_classes):
        pm = G.power_map(k)
        assert pm[0] == ident and len(pm) == G.rep_orders[k]
        assert pm[1 % len(pm)] == k
        assert G.exponent % G.rep_orders[k] == 0
