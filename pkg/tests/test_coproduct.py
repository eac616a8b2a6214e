"""Coproduct engine: reduced/full coproducts, multiplicative extension,
iterated splitting, and the structural health checks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfforest.algebra import UNIT, Polynomial, Tensor, mono
from hopfforest.coproduct import (
    Endomap,
    coassociativity_report,
    convolution_check,
    coproduct_poly,
    counit_report,
    full_coproduct_generator,
    iterated_reduced,
    iterated_reduced_poly,
    monomials_up_to,
    reduced_coproduct_generator,
    reduced_coproduct_poly,
)
from hopfforest.errors import InputError


def test_reduced_coproduct_goldens(fdb6):
    assert reduced_coproduct_generator(fdb6, 1).is_zero
    assert reduced_coproduct_generator(fdb6, 2) == Tensor.single(
        (mono(1), mono(1)), 3
    )
    three = reduced_coproduct_generator(fdb6, 3)
    assert three.render() == "4 b1 (x) b2 + 3 b1 (x) b1b1 + 6 b2 (x) b1"
    assert three.coefficient((mono(1), mono(1, 1))) == 3
    assert three.coefficient((mono(1), mono(2))) == 4
    assert three.coefficient((mono(2), mono(1))) == 6
    assert len(three.terms()) == 3
    assert reduced_coproduct_generator(fdb6, 4).render() == (
        "5 b1 (x) b3 + 10 b1 (x) b1b2 + 10 b2 (x) b2 + 15 b2 (x) b1b1"
        " + 10 b3 (x) b1"
    )
    assert reduced_coproduct_generator(fdb6, 5).render() == (
        "6 b1 (x) b4 + 15 b1 (x) b1b3 + 10 b1 (x) b2b2 + 15 b2 (x) b3"
        " + 60 b2 (x) b1b2 + 15 b2 (x) b1b1b1 + 20 b3 (x) b2"
        " + 45 b3 (x) b1b1 + 15 b4 (x) b1"
    )


def test_full_coproduct_adds_primitive_part(fdb6):
    full = full_coproduct_generator(fdb6, 2)
    assert full.coefficient((mono(2), UNIT)) == 1
    assert full.coefficient((UNIT, mono(2))) == 1
    assert full.coefficient((mono(1), mono(1))) == 3


def test_coproduct_of_squared_generator(fdb6):
    # Hand-expanded from the product rule: the mixed middle term appears with
    # both orders of the two factors, so its weight doubles.
    p = Polynomial.single(mono(2, 2), 1)
    reduced = reduced_coproduct_poly(fdb6, p)
    assert reduced.coefficient((mono(2), mono(2))) == 2
    assert reduced.coefficient((mono(1, 2), mono(1))) == 6
    assert reduced.coefficient((mono(1), mono(1, 2))) == 6
    assert reduced.coefficient((mono(1, 1), mono(1, 1))) == 9
    assert len(reduced.terms()) == 4


small_monomials = st.lists(
    st.integers(min_value=1, max_value=3), max_size=3
).map(lambda xs: mono(*xs))


@settings(max_examples=60)
@given(a=small_monomials, b=small_monomials)
def test_coproduct_is_multiplicative(fdb6, a, b):
    pa = Polynomial.single(a, 1)
    pb = Polynomial.single(b, 1)
    assert coproduct_poly(fdb6, pa * pb) == coproduct_poly(fdb6, pa) * coproduct_poly(
        fdb6, pb
    )


def test_reduced_poly_rejects_constants(fdb6):
    with pytest.raises(InputError):
        reduced_coproduct_poly(fdb6, Polynomial.one())
    assert reduced_coproduct_poly(fdb6, Polynomial.zero()).is_zero


def test_iterated_reduced_rank_convention(fdb6):
    assert iterated_reduced(fdb6, 3, 1) == Tensor.single((mono(3),), 1)
    assert iterated_reduced(fdb6, 3, 2) == reduced_coproduct_generator(fdb6, 3)
    assert iterated_reduced(fdb6, 3, 3).render() == "18 b1 (x) b1 (x) b1"
    assert iterated_reduced(fdb6, 3, 4).is_zero
    with pytest.raises(InputError):
        iterated_reduced(fdb6, 3, 0)
    with pytest.raises(InputError):
        iterated_reduced_poly(fdb6, Polynomial.variable(3), 2, leg="middle")


@pytest.mark.parametrize("i", [2, 3, 4, 5])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_iterated_reduced_leg_independence(fdb6, i, k):
    p = Polynomial.variable(i)
    assert iterated_reduced_poly(fdb6, p, k, leg="right") == iterated_reduced_poly(
        fdb6, p, k, leg="left"
    )
    assert iterated_reduced_poly(fdb6, p, k) == iterated_reduced(fdb6, i, k)


def test_monomials_up_to(fdb6):
    got = [m.render() for m in monomials_up_to(fdb6, 3)]
    assert got == ["1", "b1", "b2", "b1b1", "b3", "b1b2", "b1b1b1"]
    # One monomial per partition of each total degree: 1+1+2+3+5+7+11.
    assert len(monomials_up_to(fdb6, 6)) == 30
    assert monomials_up_to(fdb6, 0) == [UNIT]
    assert monomials_up_to(fdb6, -1) == []


def test_structure_reports_are_clean(fdb6):
    assert coassociativity_report(fdb6, max_degree=5) == []
    assert counit_report(fdb6, max_degree=5) == []


def test_convolution_check_rejects_non_antipode(fdb6):
    # The identity map is not an antipode, so the convolution unit must fail.
    failures = convolution_check(fdb6, 3, Endomap.identity())
    assert failures
    assert any("b2" in line for line in failures)


def test_endomap_composition_rules(fdb6):
    ident = Endomap.identity()
    unit_counit = Endomap.unit_counit()
    p = Polynomial({mono(1): 2, mono(1, 2): 1}) + Polynomial.one() * 5
    assert ident(p) == p
    assert unit_counit(p) == Polynomial.one() * 5
