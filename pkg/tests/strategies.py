"""Hypothesis strategies and seeded generators for engine objects."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from siegrid.exact import SYMBOLS, ParamPoly
from siegrid.hweyl import HWeylElement
from siegrid.reps import make_vector
from siegrid.weyl import WeylElement

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def param_polys(draw, max_terms=3, symbols=SYMBOLS[:4]):
    out = ParamPoly.const(draw(small_fractions))
    for _ in range(draw(st.integers(0, max_terms))):
        mono = ParamPoly.const(draw(small_fractions))
        for s in draw(st.lists(st.sampled_from(symbols), max_size=2)):
            mono = mono * ParamPoly.symbol(s)
        out = out + mono
    return out


@st.composite
def weyl_elements(draw, symbolic=False, allow_inverse=True, max_terms=4):
    lo = -2 if allow_inverse else 0
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        key = (draw(st.integers(lo, 3)), draw(st.integers(0, 3)))
        coef = draw(param_polys()) if symbolic else ParamPoly.const(draw(small_fractions))
        terms[key] = coef
    return WeylElement(terms)


@st.composite
def hweyl_elements(draw, symbolic=False, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        key = (draw(st.integers(0, 3)), draw(st.integers(0, 1)), draw(st.integers(0, 3)))
        coef = draw(param_polys()) if symbolic else ParamPoly.const(draw(small_fractions))
        terms[key] = coef
    return HWeylElement(terms)


@st.composite
def vectors(draw, backend):
    lo, hi = (-3, 5) if backend == "laurent" else (-5, 5)
    coeffs = draw(st.dictionaries(st.integers(lo, hi), small_fractions, max_size=5))
    return make_vector(backend, coeffs)


# seeded generators for the fixed-count acceptance runs


def _frac(rng):
    return Fraction(rng.randint(-5, 5), rng.randint(1, 3))


def random_weyl(rng: random.Random, terms=3, symbolic=False):
    out = {}
    for _ in range(rng.randint(1, terms)):
        key = (rng.randint(-2, 3), rng.randint(0, 3))
        coef = ParamPoly.const(_frac(rng))
        if symbolic:
            coef = coef + ParamPoly.symbol(rng.choice(SYMBOLS[:4])) * rng.randint(-2, 2)
        out[key] = coef
    return WeylElement(out)


def random_hweyl(rng: random.Random, terms=3, symbolic=False):
    out = {}
    for _ in range(rng.randint(1, terms)):
        key = (rng.randint(0, 3), rng.randint(0, 1), rng.randint(0, 3))
        coef = ParamPoly.const(_frac(rng))
        if symbolic:
            coef = coef + ParamPoly.symbol(rng.choice(SYMBOLS[:4])) * rng.randint(-2, 2)
        out[key] = coef
    return HWeylElement(out)


def random_vector(rng: random.Random, backend):
    lo, hi = (-3, 5) if backend == "laurent" else (-5, 5)
    return make_vector(backend, {rng.randint(lo, hi): _frac(rng) for _ in range(rng.randint(1, 4))})
