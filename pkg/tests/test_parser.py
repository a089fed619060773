from fractions import Fraction

import pytest
from hypothesis import given

from siegrid.errors import ParseError, UnknownAtomError
from siegrid.exact import sym
from siegrid.parser import Atom, Num, Param, Power, Product, Sum, parse, parse_ast, parse_vector
from siegrid.reps import DeltaVector, FourierVector, LaurentVector
from siegrid.weyl import C, D, Dn, R, X, Xinv

from strategies import hweyl_elements, weyl_elements


def test_power_binds_tighter_than_product():
    assert parse_ast("2X^3") == Product((Num(Fraction(2)), Power(Atom("X", 1), 3, 2)))


def test_product_binds_tighter_than_sum():
    tree = parse_ast("X - n*D")
    assert tree == Sum(((1, Atom("X", 0)), (-1, Product((Param("n"), Atom("D", 6))))))


def test_leading_minus_and_parentheses():
    assert parse_ast("-(X)") == Sum(((-1, Atom("X", 2)),))
    assert parse("-(X+1)^2") == -((X() + 1) ** 2)


def test_fractions_and_negative_exponents():
    assert parse("1/2 X^-1") == Xinv() / 2
    assert parse("X^-2 X^2") == 1


def test_weyl_atoms():
    assert parse("C") == C()
    assert parse("R") == R()
    assert parse("Dn(3)") == Dn(3)
    assert parse("(k+1)*D + ℓ") == D() * (sym("k") + 1) + sym("l")


def test_juxtaposition_equals_star():
    assert parse("XCD + (k+1)D + n") == parse("X*C*D + (k+1)*D + n")


def test_mode_restrictions():
    with pytest.raises(UnknownAtomError):
        parse("M", "weyl")
    with pytest.raises(UnknownAtomError):
        parse("C", "hweyl")
    with pytest.raises(UnknownAtomError):
        parse("Dn(2)", "hweyl")
    with pytest.raises(ParseError):
        parse("X^-1", "hweyl")


@pytest.mark.parametrize("text, pos", [("X +", 3), ("(X", 2), ("X $ D", 2), ("1/0", 2), ("Q", 0), ("X^n", 2)])
def test_errors_report_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == pos


@given(weyl_elements(symbolic=True))
def test_weyl_round_trip(el):
    assert parse(str(el)) == el


@given(hweyl_elements(symbolic=True))
def test_hweyl_round_trip(el):
    assert parse(str(el), "hweyl") == el


def test_vector_forms():
    assert parse_vector("35x^4-30x^2+3") == LaurentVector({4: 35, 2: -30, 0: 3})
    assert parse_vector("d[-1] + 2*d[1]") == DeltaVector({-1: 1, 1: 2})
    assert parse_vector("1/2*u^-1 + 1/2u") == FourierVector({-1: Fraction(1, 2), 1: Fraction(1, 2)})
    assert parse_vector("3", "fourier") == FourierVector({0: 3})


@pytest.mark.parametrize("text", ["", "x^2 x", "d[0] + x", "3", "x^"])
def test_vector_errors(text):
    with pytest.raises(ParseError):
        parse_vector(text)


def test_vector_backend_mismatch():
    with pytest.raises(ParseError):
        parse_vector("x + 1", "delta")
    with pytest.raises(ParseError):
        parse_vector("2", "delta")
