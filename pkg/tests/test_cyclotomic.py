import cmath
from fractions import Fraction

import hypothesis
import hypothesis.strategies as st
import pytest

from sigmadist.cyclotomic import Cyclotomic, cyclotomic_poly, phi


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert [phi(n) for n in (1, 2, 8, 9, 12, 24)] == [1, 1, 4, 6, 4, 8]


def test_sum_of_roots_vanishes():
    for E in (2, 3, 5, 8, 12):
        assert sum((Cyclotomic.root(E, k) for k in range(E)), Cyclotomic.rational(0)) == 0


def test_roots_multiply():
    z = Cyclotomic.root(8)
    assert z**8 == 1
    assert z**4 == -1
    assert z * z.conj() == 1
    assert Cyclotomic.root(4) == z**2


def test_lift_equality_and_hash():
    a = Cyclotomic.root(4, 1)
    b = a.lift(12)
    assert a == b and hash(a) == hash(b)
    assert Cyclotomic.rational(3, 5) == 3 and hash(Cyclotomic.rational(3, 5)) == hash(3)
    with pytest.raises(ValueError):
        a.lift(6)


def test_division_and_fractions():
    x = Cyclotomic.root(3) / 2
    assert x * 2 == Cyclotomic.root(3)
    assert (Cyclotomic.rational(6) / 4).to_fraction() == Fraction(3, 2)
    with pytest.raises(NotImplementedError):
        Cyclotomic.rational(1) / Cyclotomic.root(3)


def test_galois_needs_unit():
    with pytest.raises(ValueError):
        Cyclotomic.root(6).galois(3)


def test_str_reduced_basis():
    # zeta_3^2 = -1 - zeta_3
    assert str(Cyclotomic.root(3, 2)) == str(Cyclotomic.rational(-1, 3) - Cyclotomic.root(3))
    assert str(Cyclotomic.rational(0)) == "0"


elements = st.builds(
    lambda E, cs, den: Cyclotomic.from_power(E, cs[:E] + [0] * (E - len(cs[:E])), den),
    st.sampled_from([1, 3, 4, 5, 8, 12]),
    st.lists(st.integers(-5, 5), min_size=1, max_size=12),
    st.integers(1, 4),
)


@hypothesis.given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@hypothesis.given(elements, elements)
def test_conj_is_an_involutive_ring_map(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert cmath.isclose(complex(a.conj()), complex(a).conjugate(), abs_tol=1e-9)


@hypothesis.given(elements, elements)
def test_complex_embedding_agrees(a, b):
    assert cmath.isclose(complex(a * b), complex(a) * complex(b), abs_tol=1e-7)
    if not cmath.isclose(complex(a), complex(b), abs_tol=1e-9):
        assert a != b
