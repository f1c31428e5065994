import hypothesis
import hypothesis.strategies as st
import pytest

from sigmadist import checks, mchar
from sigmadist.mchar import MultChar


def test_regularity_examples():
    assert mchar.is_regular(MultChar(4, 3, 7))
    assert not mchar.is_regular(MultChar(5, 2, 0))
    assert not mchar.is_regular(MultChar(4, 3, 21))


def test_orbit_examples():
    assert mchar.galois_orbit(MultChar(4, 3, 49)) == ([7, 28, 49], 7)
    assert mchar.galois_orbit(MultChar(3, 2, 2)) == ([2, 6], 2)
    assert mchar.galois_orbit(MultChar(3, 2, 0)) == ([0], 0)


def test_sigma_selfdual_examples():
    assert mchar.is_sigma_selfdual(MultChar(4, 3, 7), 2)
    assert not mchar.is_sigma_selfdual(MultChar(4, 3, 1), 2)
    assert mchar.is_sigma_selfdual(MultChar(4, 3, 0), 2)
    with pytest.raises(mchar.CharacterError):
        mchar.is_sigma_selfdual(MultChar(5, 3, 1), 2)


def test_selfdual_examples():
    assert mchar.is_selfdual(MultChar(3, 2, 2))
    assert not mchar.is_selfdual(MultChar(3, 2, 1))
    assert mchar.is_selfdual(MultChar(9, 2, 8))


def test_norm_factorisation_examples():
    assert mchar.factors_through_norm(MultChar(4, 3, 21), 1)
    assert not mchar.factors_through_norm(MultChar(4, 3, 7), 1)
    assert all(mchar.factors_through_norm(MultChar(3, 6, 0), d) for d in (1, 2, 3))
    with pytest.raises(mchar.CharacterError):
        mchar.factors_through_norm(MultChar(4, 3, 7), 2)


def test_reduction_examples():
    r = mchar.reduce_mod_ell(MultChar(4, 3, 7), 3)
    assert (r.modulus, r.exp_a, r.is_regular()) == (7, 0, False)
    r = mchar.reduce_mod_ell(MultChar(4, 3, 7), 7)
    assert (r.modulus, r.exp_a, r.is_regular()) == (9, 7, True)
    assert sorted(r.orbit()) == [1, 4, 7]
    r = mchar.reduce_mod_ell(MultChar(4, 3, 10), 5)
    assert (r.modulus, r.exp_a) == (63, 10)
    with pytest.raises(mchar.CharacterError):
        mchar.reduce_mod_ell(MultChar(4, 3, 7), 2)


def test_lift_examples():
    assert mchar.lift_sigma_selfdual(1, 2, 3, 7).exp_a == 28
    assert mchar.lift_sigma_selfdual(0, 2, 1, 7).exp_a == 0
    for r in range(7):
        with pytest.raises(mchar.CharacterError):
            mchar.lift_sigma_selfdual(r, 2, 3, 3)


def test_counts():
    assert mchar.count_sigma_selfdual_supercuspidals(2, 3) == 2
    assert mchar.count_sigma_selfdual_supercuspidals(2, 2) == 0
    assert mchar.count_sigma_selfdual_supercuspidals(2, 1) == 3
    assert [o[0] for o in mchar.sigma_selfdual_orbits(2, 3)] == [7, 14]


@pytest.mark.parametrize("q0,n", [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2)])
def test_kernel_count_matches_full_scan(q0, n):
    q = q0 * q0
    brute = mchar.regular_orbits(q, n, lambda c: mchar.is_sigma_selfdual_orbit(c, q0))
    assert mchar.sigma_selfdual_orbits(q0, n) == brute
    assert mchar.selfdual_orbits(q0, n) == mchar.regular_orbits(q0, n, mchar.is_selfdual)


def test_orbit_predicate_matches_formula_for_odd_n():
    for q0 in (2, 3, 4, 5):
        for n in (1, 3):
            q = q0 * q0
            for orb in mchar.regular_orbits(q, n):
                c = MultChar(q, n, orb[0])
                assert mchar.is_sigma_selfdual_orbit(c, q0) == mchar.is_sigma_selfdual(c, q0)


def test_parity_constraints():
    assert checks.check_parity() == "ok"


CHAR_GROUPS = [(q, n) for q in (2, 3, 4, 5, 7, 8, 9) for n in range(1, 7) if q**n <= 10**6]


@st.composite
def characters(draw):
    q, n = draw(st.sampled_from(CHAR_GROUPS))
    return MultChar(q, n, draw(st.integers(0, q**n - 2)))


@hypothesis.settings(max_examples=1000)
@hypothesis.given(characters())
def test_orbit_regularity_norm_equivalence(c):
    size = len(mchar.galois_orbit(c)[0])
    assert c.deg_n % size == 0
    assert mchar.is_regular(c) == (size == c.deg_n)
    through = any(mchar.factors_through_norm(c, d) for d in mchar.proper_divisors(c.deg_n))
    assert mchar.is_regular(c) == (not through)


@hypothesis.settings(max_examples=500)
@hypothesis.given(characters(), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_reduction_commutes_with_orbits(c, ell):
    hypothesis.assume(c.base_q % ell)
    red = mchar.reduce_mod_ell(c, ell)
    orbit = mchar.galois_orbit(c)[0]
    images = {mchar.reduce_mod_ell(MultChar(c.base_q, c.deg_n, b), ell).exp_a for b in orbit}
    assert images == set(red.orbit())


@hypothesis.settings(max_examples=300)
@hypothesis.given(st.sampled_from([(2, 3), (3, 3), (2, 5), (4, 3)]), st.sampled_from([3, 5, 7, 11, 13]),
                  st.integers(0, 10**9))
def test_lift_then_reduce(case, ell, r):
    q0, n = case
    hypothesis.assume(q0 % ell)
    N = q0 ** (2 * n) - 1
    M = mchar.prime_to_part(N, ell)
    try:
        c = mchar.lift_sigma_selfdual(r % M, q0, n, ell)
    except mchar.CharacterError:
        return
    assert mchar.reduce_mod_ell(c, ell).exp_a == r % M
    assert mchar.is_sigma_selfdual(c, q0) and mchar.is_regular(c)
