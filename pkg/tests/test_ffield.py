import hypothesis
import hypothesis.strategies as st
import pytest

from sigmadist import ffield
from sigmadist.ffield import FqElem, build_field, embed_subfield, norm_to_subfield, trace_to_subfield


def test_prime_field_generator():
    F = build_field(3, 1)
    assert F.order == 3
    assert F.generator == 2


def test_f4_generator_order():
    F = build_field(2, 2)
    assert F.gen().multiplicative_order() == 3
    assert len([x for x in F.elements() if not x.is_zero()]) == 3


def _x_order_mod_quadratic(b, c, p):
    """Multiplicative order of x in F_p[x]/(x^2 + b x + c), by hand."""
    u, v = 1, 0  # x = u*x + v
    for k in range(1, p * p):
        if (u, v) == (0, 1):
            return k
        u, v = (-b * u + v) % p, (-c * u) % p
    return None


def test_f9_defining_poly_is_least_admissible():
    F = build_field(3, 2)
    assert F.gen().multiplicative_order() == 8
    # oracle: monic quadratics in (c1, c0) lexicographic order
    irreducible = [(b, c) for b in range(3) for c in range(3)
                   if all((t * t + b * t + c) % 3 for t in range(3))]
    assert len(irreducible) == 3
    first = next((b, c) for b, c in irreducible if _x_order_mod_quadratic(b, c, 3) == 8)
    assert F.defining_poly == (first[1], first[0], 1)


def test_repeat_build_is_identical():
    assert build_field(5, 2) is build_field(5, 2)


@pytest.mark.parametrize("p,k", [(4, 1), (1, 2), (2, 0)])
def test_bad_fields(p, k):
    with pytest.raises(ffield.FieldError):
        build_field(p, k)


def test_embedding_examples():
    F4, F64 = build_field(2, 2), build_field(2, 6)
    assert embed_subfield(F4.zero(), F64) == F64.zero()
    assert embed_subfield(F4.one(), F64) == F64.one()
    assert embed_subfield(F4.gen(), F64) == F64.gen() ** 21


def test_embedding_rejects_non_divisor():
    with pytest.raises(ffield.FieldError):
        embed_subfield(build_field(2, 2).gen(), build_field(2, 3))


def test_frobenius_fixes_image_of_prime_field():
    F3, F9 = build_field(3, 1), build_field(3, 2)
    image = {embed_subfield(x, F9) for x in F3.elements()}
    fixed = {x for x in F9.elements() if x ** 3 == x}
    assert image == fixed


def test_norm_examples():
    F9 = build_field(3, 2)
    assert norm_to_subfield(F9.one(), 1) == build_field(3, 1).one()
    assert norm_to_subfield(F9.gen(), 1) == -build_field(3, 1).one()
    F64 = build_field(2, 6)
    image = {norm_to_subfield(x, 3) for x in F64.elements() if not x.is_zero()}
    assert len(image) == 7


def test_norm_rejects_non_divisor():
    with pytest.raises(ffield.FieldError):
        norm_to_subfield(build_field(3, 2).gen(), 3)


def test_cross_field_arithmetic_is_an_error():
    with pytest.raises(Exception):
        build_field(3, 2).gen() + build_field(3, 1).gen()


TOWERS = [(2, 6), (2, 4), (3, 4), (3, 6), (5, 2), (7, 2), (2, 8)]


@st.composite
def tower_elements(draw):
    p, k = draw(st.sampled_from(TOWERS))
    F = build_field(p, k)
    a = draw(st.integers(0, F.order - 1))
    divs = ffield.divisors(k)
    d = draw(st.sampled_from(divs))
    e = draw(st.sampled_from([x for x in divs if x % d == 0]))
    return FqElem(F, a), d, e


@hypothesis.settings(max_examples=1000)
@hypothesis.given(tower_elements())
def test_norm_transitive(data):
    x, d, e = data
    assert norm_to_subfield(x, d) == norm_to_subfield(norm_to_subfield(x, e), d)


@hypothesis.settings(max_examples=1000)
@hypothesis.given(tower_elements())
def test_embedding_chain(data):
    x, d, e = data
    F = x.owner
    D, E = build_field(F.p, d), build_field(F.p, e)
    y = FqElem(D, x.rep % D.order)
    assert embed_subfield(embed_subfield(y, E), F) == embed_subfield(y, F)


@hypothesis.settings(max_examples=300)
@hypothesis.given(tower_elements(), st.integers(0, 10**6))
def test_embedding_is_a_ring_map(data, b):
    x, d, _ = data
    F = x.owner
    D = build_field(F.p, d)
    u, v = FqElem(D, x.rep % D.order), FqElem(D, b % D.order)
    assert embed_subfield(u * v, F) == embed_subfield(u, F) * embed_subfield(v, F)
    assert embed_subfield(u + v, F) == embed_subfield(u, F) + embed_subfield(v, F)


@hypothesis.settings(max_examples=300)
@hypothesis.given(tower_elements(), st.integers(0, 10**6))
def test_norm_multiplicative_trace_additive(data, b):
    x, d, _ = data
    y = FqElem(x.owner, b % x.owner.order)
    assert norm_to_subfield(x * y, d) == norm_to_subfield(x, d) * norm_to_subfield(y, d)
    assert trace_to_subfield(x + y, d) == trace_to_subfield(x, d) + trace_to_subfield(y, d)


@hypothesis.given(st.sampled_from(TOWERS), st.data())
def test_field_axioms(pk, data):
    F = build_field(*pk)
    a, b, c = (FqElem(F, data.draw(st.integers(0, F.order - 1))) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == F.one()
        assert F.gen() ** a.dlog == a
