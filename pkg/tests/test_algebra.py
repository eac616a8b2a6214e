"""Exact-arithmetic layer: monomials, polynomials, tensors."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfforest.algebra import (
    UNIT,
    Monomial,
    Polynomial,
    Tensor,
    mono,
    mul_monomials,
    multiset,
    multiset_union,
    tensor_mul,
)
from hopfforest.errors import InputError

indices = st.integers(min_value=1, max_value=5)
monomials = st.lists(indices, max_size=4).map(lambda xs: mono(*xs))
scalars = st.one_of(
    st.integers(min_value=-7, max_value=7),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)
polynomials = st.lists(
    st.tuples(monomials, st.integers(min_value=-6, max_value=6)), max_size=4
).map(Polynomial)


def test_multiset_sorts_and_validates():
    assert multiset([3, 1, 2, 1]) == (1, 1, 2, 3)
    assert multiset_union((1, 3), (2,)) == (1, 2, 3)
    with pytest.raises(InputError):
        multiset([0])
    with pytest.raises(InputError):
        multiset([True])


def test_monomial_normalizes_and_renders():
    m = mono(3, 1, 2)
    assert m.indices == (1, 2, 3)
    assert m.render() == "b1b2b3"
    assert mono(1, 1, 1).render() == "b1b1b1"
    assert UNIT.render() == "1"
    assert UNIT.is_unit and len(UNIT) == 0
    assert list(mono(2, 1)) == [1, 2]
    with pytest.raises(InputError):
        mono(0)
    with pytest.raises(InputError):
        Monomial((1, -2))


def test_monomial_product_and_order():
    assert mono(2) * mono(1, 3) == mono(1, 2, 3)
    assert mul_monomials(mono(1), mono(1)) == mono(1, 1)
    # Grading by length first, then lexicographic: b3 < b1b2 < b1b1b1.
    keys = [mono(3).sort_key, mono(1, 2).sort_key, mono(1, 1, 1).sort_key]
    assert keys == sorted(keys)


@given(monomials, monomials, monomials)
def test_monomial_product_commutative_associative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * UNIT == a


def test_polynomial_constructors_drop_zeros():
    p = Polynomial({mono(1): 0, mono(2): 3})
    assert p.terms() == [(mono(2), Fraction(3))]
    assert Polynomial.zero().is_zero
    assert not Polynomial.zero()
    assert Polynomial.one().constant == 1
    assert Polynomial.variable(2) == Polynomial.single(mono(2), 1)
    assert Polynomial.single(mono(1), 0).is_zero


@given(polynomials, polynomials, polynomials)
def test_polynomial_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + Polynomial.zero() == p
    assert p * Polynomial.one() == p
    assert p - p == Polynomial.zero()
    assert -p + p == Polynomial.zero()


@given(polynomials, scalars)
def test_polynomial_scalar_action(p, c):
    assert p * c == c * p
    assert (p * c).coefficient(mono(1)) == p.coefficient(mono(1)) * c


@given(polynomials, polynomials)
def test_polynomial_equality_and_hash(p, q):
    assert (p == q) == (hash(p) == hash(q) and p.terms() == q.terms())
    assert len(p) == len(p.terms())


def test_polynomial_render_goldens():
    p = Polynomial({mono(3): -1, mono(1, 2): 10, mono(1, 1, 1): -15})
    assert p.render() == "-1 b3 + 10 b1b2 - 15 b1b1b1"
    assert Polynomial.zero().render() == "0"
    assert Polynomial.one().render() == "1"
    assert (Polynomial.one() * Fraction(-5, 2)).render() == "-5/2"
    assert Polynomial.single(mono(1), Fraction(1, 2)).render() == "1/2 b1"


def test_tensor_rank_discipline():
    t = Tensor.single((mono(1), mono(2)), 3)
    assert t.rank == 2
    with pytest.raises(InputError):
        Tensor.zero(0)
    with pytest.raises(InputError):
        t + Tensor.zero(3)
    with pytest.raises(InputError):
        tensor_mul(t, Tensor.zero(3))
    assert (t * Tensor.single((mono(1), UNIT), 1)).coefficient(
        (mono(1, 1), mono(2))
    ) == 3


def test_tensor_outer_and_multiplied_out():
    left = Polynomial({mono(1): 2, mono(2): 1})
    t = Tensor.outer(left, Polynomial.variable(1))
    assert t.coefficient((mono(1), mono(1))) == 2
    assert t.coefficient((mono(2), mono(1))) == 1
    assert t.multiplied_out() == Polynomial({mono(1, 1): 2, mono(1, 2): 1})


@given(polynomials, polynomials, polynomials)
def test_tensor_outer_bilinear(p, q, r):
    assert Tensor.outer(p * 2, q) == Tensor.outer(p, q) * 2
    assert Tensor.outer(p + r, q) == Tensor.outer(p, q) + Tensor.outer(r, q)
    assert Tensor.outer(p, q + r) == Tensor.outer(p, q) + Tensor.outer(p, r)
    assert Tensor.outer(p, q).multiplied_out() == p * q


def test_tensor_render_keeps_unit_slots():
    assert Tensor.single((mono(1), mono(1)), 3).render() == "3 b1 (x) b1"
    assert Tensor.single((UNIT, mono(2)), 2).render() == "2 1 (x) b2"
    assert Tensor.zero(2).render() == "0"


def test_tensor_equality_requires_same_rank():
    assert Tensor.zero(2) != Tensor.zero(3)
    assert Tensor.one(2) == Tensor.single((UNIT, UNIT), 1)
