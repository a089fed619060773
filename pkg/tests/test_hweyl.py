import pytest
from hypothesis import given
from hypothesis import strategies as st

from siegrid.exact import sym
from siegrid.hweyl import D, G, H, H_forms, HWeylElement, L, M, X

from oracles import hweyl_rewrite
from strategies import hweyl_elements

x, mm, d = X(), M(), D()
j = sym("j")


def test_defining_relations():
    assert mm * d - d * mm == 0
    assert mm * x - x * mm == d
    assert d * x - x * d == mm
    assert mm * mm - d * d == 1


def test_mixed_relation():
    assert d * x * mm - mm * x * d == 1


def test_two_ways_of_writing_g_and_l():
    assert G(j) == d * (j + 1) + x * mm
    assert L(j) == mm * (j + 1) + x * d


def test_relations_between_g_and_l():
    assert L(j) * d - d * L(j - 1) == 0
    assert G(j) * mm - mm * G(j - 1) == 0
    assert G(j - 1) * L(j) - L(j - 1) * G(j) == 0
    assert L(j - 1) * L(j) - G(j - 1) * G(j) == HWeylElement.scalar(j * j) - x * x


def test_five_forms_agree():
    n, m = sym("n"), sym("m")
    forms = H_forms(n, m)
    assert all(f == H(n, m) for f in forms)


def test_normal_form_keeps_single_m():
    assert all(key[1] in (0, 1) for key, _ in (mm ** 5 * x ** 2).terms())


@given(st.lists(st.sampled_from("XMD"), max_size=7))
def test_words_match_rewriting(word):
    letters = {"X": x, "M": mm, "D": d}
    el = HWeylElement.one()
    for ch in word:
        el = el * letters[ch]
    ref = hweyl_rewrite({tuple(word): 1})
    assert {k: v.constant_value() for k, v in el.terms()} == ref


@given(hweyl_elements(), hweyl_elements(), hweyl_elements())
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(hweyl_elements(symbolic=True))
def test_json_round_trip(a):
    assert HWeylElement.from_json_obj(a.to_json_obj()) == a


def test_printing():
    assert str(x * mm * d * 2 - 1) == "2*X*M*D - 1"
    with pytest.raises(ValueError):
        HWeylElement.monomial(0, 2, 0)
