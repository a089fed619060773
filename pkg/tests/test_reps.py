from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegrid import hweyl, weyl
from siegrid.errors import DivisibilityError, SymbolicIndexError, WindowMismatchError, WindowOverflowError
from siegrid.grids import binomial_vector, laguerre_H, laguerre_window, legendre_H
from siegrid.parser import parse, parse_vector
from siegrid.reps import (
    DeltaVector,
    FourierVector,
    LaurentVector,
    Subspace,
    apply,
    apply_polynomial,
    delta_to_fourier,
    fourier_to_delta,
    kernel_space,
    nullspace,
    operator_matrix,
    polynomial_divide,
)

from oracles import sympy_nullspace_rank
from strategies import hweyl_elements, vectors, weyl_elements


def test_laurent_action():
    v = parse_vector("x^3 - 2x^-1", "laurent")
    assert apply(weyl.D(), v) == parse_vector("3x^2 + 2x^-2")
    assert apply(weyl.X(), v) == parse_vector("x^4 - 2")
    assert apply(weyl.Xinv(), v) == parse_vector("x^2 - 2x^-2")


def test_delta_action():
    d0 = DeltaVector({0: 1})
    assert apply(hweyl.M(), d0) == DeltaVector({-1: Fraction(1, 2), 1: Fraction(1, 2)})
    assert apply(hweyl.D(), d0) == DeltaVector({-1: Fraction(1, 2), 1: Fraction(-1, 2)})
    assert apply(hweyl.X(), DeltaVector({3: 2})) == DeltaVector({3: 6})


def test_fourier_action():
    assert apply(hweyl.X(), FourierVector({2: 1})) == FourierVector({2: -2})
    assert apply(hweyl.M(), FourierVector({0: 1})) == FourierVector({-1: Fraction(1, 2), 1: Fraction(1, 2)})


def test_printing_orders():
    assert str(LaurentVector({0: 2, 2: 1, 1: -4})) == "x^2 - 4*x + 2"
    assert str(DeltaVector({1: 1, -1: 1})) == "d[-1] + d[1]"
    assert str(FourierVector({1: Fraction(1, 2), -1: Fraction(1, 2)})) == "1/2*u^-1 + 1/2*u"


def test_primitive_and_monic():
    v = LaurentVector({2: Fraction(-3, 2), 0: Fraction(1, 2)})
    assert v.primitive() == LaurentVector({2: 3, 0: -1})
    assert v.monic() == LaurentVector({2: 1, 0: Fraction(-1, 3)})
    assert v.is_multiple_of(v.primitive())


@given(hweyl_elements(), vectors("delta"))
def test_delta_and_fourier_agree(a, v):
    assert fourier_to_delta(apply(a, delta_to_fourier(v))) == apply(a, v)


@given(weyl_elements(), weyl_elements(), vectors("laurent"))
def test_laurent_action_is_multiplicative(a, b, v):
    assert apply(a * b, v) == apply(a, apply(b, v))


@given(hweyl_elements(), hweyl_elements(), vectors("fourier"))
def test_fourier_action_is_multiplicative(a, b, v):
    assert apply(a * b, v) == apply(a, apply(b, v))


def test_polynomial_only_application():
    with pytest.raises(DivisibilityError):
        apply_polynomial(weyl.Xinv(), parse_vector("x + 1"))
    assert apply_polynomial(weyl.Xinv(), parse_vector("x^2 + x")) == parse_vector("x + 1")


def test_polynomial_division():
    assert polynomial_divide(parse_vector("x^3 - x"), parse_vector("x^2 - 1")) == parse_vector("x")
    with pytest.raises(DivisibilityError):
        polynomial_divide(parse_vector("x^3"), parse_vector("x^2 - 1"))


def test_operator_matrix_and_overflow():
    mat = operator_matrix(weyl.D(), (0, 2), (0, 2), "laurent")
    assert mat == [[0, 1, 0], [0, 0, 2], [0, 0, 0]]
    with pytest.raises(WindowOverflowError):
        operator_matrix(weyl.X(), (0, 2), (0, 2), "laurent")


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_matches_sympy(rows):
    mat = [[Fraction(v) for v in r] for r in rows]
    basis = nullspace(mat)
    assert len(basis) == sympy_nullspace_rank(mat)
    for vec in basis:
        assert all(sum(a * b for a, b in zip(r, vec)) == 0 for r in mat)


def test_subspace_membership():
    s = Subspace.from_vectors([parse_vector("x^2 - 1"), parse_vector("x")], "laurent", (0, 3))
    assert s.dim == 2
    assert s.contains(parse_vector("3x^2 + x - 3"))
    assert not s.contains(parse_vector("x^2"))
    assert not s.contains(parse_vector("x^5"))
    with pytest.raises(WindowMismatchError):
        s.membership(parse_vector("x^5"))


def test_laguerre_kernel_stable_under_enlargement():
    for n in range(6):
        for k in range(-n, 6):
            lo, hi = laguerre_window(n, k)
            ops = [laguerre_H(n, k), weyl.D() ** (n + 1)]
            small = kernel_space(ops, (lo, hi), "laurent")
            large = kernel_space(ops, (lo - 3, hi + 3), "laurent")
            assert small.dim == 1 and small.same_span(large)


def test_legendre_kernel_stable_under_enlargement():
    for n in range(6):
        for l in (1, 3, 5, 7):
            small = kernel_space([legendre_H(n, l)], (0, n + 2), "laurent")
            large = kernel_space([legendre_H(n, l)], (0, n + 6), "laurent")
            assert small.dim == 1 and small.same_span(large)


def test_binomial_row_kernel_stable_under_enlargement():
    for n in range(6):
        small = kernel_space([hweyl.G(n)], (-n - 2, n + 2), "delta")
        large = kernel_space([hweyl.G(n)], (-n - 6, n + 6), "delta")
        assert small.dim == 1 and small.same_span(large)
        assert small.contains(binomial_vector(n, 0))


def test_symbolic_coefficients_are_rejected():
    with pytest.raises(SymbolicIndexError):
        apply(parse("n*X"), parse_vector("x"))
