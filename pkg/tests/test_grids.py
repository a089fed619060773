import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegrid.errors import MissingArrowError, RegionError
from siegrid.exact import sym
from siegrid.grids import (
    Circuit,
    builtin_grid,
    check_arrow_well_defined,
    check_ladder_commutator,
    check_narrow_scalars_equal,
    check_table,
    check_wide_lemma,
    circuit_scalar,
    narrow_pair_matrices,
    random_circuit_scan,
    random_walk,
    rotate,
)

n, k, l, m = (sym(s) for s in "nklm")

CENTERS = {"laguerre": (3, 1), "legendre": (2, 3), "binomial": (2, 2)}


def test_circuit_shapes():
    c = Circuit((0, 0), ("E", "N", "S", "W"))
    assert c.is_narrow() and not c.is_short() and not c.is_wide()
    assert Circuit((0, 0), ("E", "W")).is_short()
    box = Circuit((0, 0), ("E", "N", "W", "S"))
    assert box.is_wide() and not box.freely_reduces()
    assert box.opposite().steps == ("N", "E", "S", "W")
    with pytest.raises(MissingArrowError):
        Circuit((0, 0), ("E", "Q"))


def test_table_sizes():
    assert len(builtin_grid("laguerre").table) == 18
    assert len(builtin_grid("legendre").table) == 12
    assert len(builtin_grid("binomial").table) == 6


def test_arrow_text():
    g = builtin_grid("laguerre")
    assert g.arrow_text((n, k), "NE") == "(n+k+1+XC)"
    assert g.path_text((2, 0), ("E", "W")) == "(-D)(0+XC)"


def test_region_errors():
    with pytest.raises(RegionError):
        builtin_grid("laguerre").vertex_space((2, -3))
    with pytest.raises(RegionError):
        builtin_grid("legendre").vertex_space((1, 2))
    with pytest.raises(MissingArrowError):
        builtin_grid("binomial").target((0, 0), "NE")


def test_vertex_spaces_are_lines():
    for name, (a, b) in CENTERS.items():
        g = builtin_grid(name)
        for v in g.region(range(a + 1), range(b - 1, b + 2)):
            assert g.vertex_space(v).dim == 1


@pytest.mark.parametrize("name", ["laguerre", "legendre", "binomial"])
def test_arrows_map_into_targets(name):
    g = builtin_grid(name)
    v = CENTERS[name]
    for kind in g.kinds:
        if g.is_valid(g.target(v, kind)):
            assert check_arrow_well_defined(g, v, kind).passed


def test_small_table_check():
    g = builtin_grid("binomial")
    reports = check_table(g, [(1, 2)])
    assert len(reports) == 6 and all(r.passed for r in reports)
    east = next(r for r in reports if r.check == "table:East")
    assert east.found == 2


def test_wrong_expectation_fails():
    from siegrid.grids import check_circuit_scalar

    g = builtin_grid("laguerre")
    rep = check_circuit_scalar(g, Circuit((2, 1), ("E", "W")), Fraction(4))
    assert not rep.passed and rep.found == 3


@pytest.mark.parametrize("name, kind, expected", [
    ("laguerre", "E", 1),
    ("legendre", "E", 2 * n + l),
    ("legendre", "N", (n + l) * (n + l + 1) - (n + l - 1) * (n + l - 2)),
    ("legendre", "SE", l - 1),
    ("binomial", "E", 1),
    ("binomial", "N", 1),
])
def test_symbolic_ladder_differences(name, kind, expected):
    g = builtin_grid(name)
    (rep,) = check_ladder_commutator(g, kind, "symbolic")
    assert rep.passed and rep.found == expected


def test_laguerre_vertical_ladder_falls_back_to_concrete():
    g = builtin_grid("laguerre")
    reps = check_ladder_commutator(g, "N", "symbolic", g.region(range(4), range(-3, 3)))
    assert reps and all(r.passed for r in reps)
    assert "symbolic mode unavailable" in reps[0].note


def test_counterexample_line_into_plane_is_not_sie():
    a = [[Fraction(1)], [Fraction(0)]]
    a_opp = [[Fraction(1), Fraction(0)]]
    s1, s2, is_sie = narrow_pair_matrices(a, a_opp)
    assert s1 == 1 and s2 is None and not is_sie


def test_square_pair_is_sie():
    s1, s2, ok = narrow_pair_matrices([[Fraction(2)]], [[Fraction(3)]])
    assert (s1, s2, ok) == (6, 6, True)


@pytest.mark.parametrize("name", ["laguerre", "legendre", "binomial"])
def test_narrow_scalars_agree(name):
    g = builtin_grid(name)
    v = CENTERS[name]
    for kind in g.kinds:
        assert check_narrow_scalars_equal(g, v, kind).passed


@pytest.mark.parametrize("name", ["laguerre", "legendre", "binomial"])
def test_wide_lemma_all_or_none(name):
    g = builtin_grid(name)
    v = CENTERS[name]
    good = [r for r in check_wide_lemma(g, v) if r.check == "wide:equation"]
    assert len(good) == 16 and all(r.passed for r in good)
    gamma = next(r for r in check_wide_lemma(g, v) if r.check == "wide:product").note
    true_gamma = Fraction(gamma.split(",")[0].split("=")[1])
    bad = [r for r in check_wide_lemma(g, v, gamma=true_gamma * 2) if r.check == "wide:equation"]
    assert len(bad) == 16 and not any(r.passed for r in bad)


def test_random_scan_is_deterministic():
    g = builtin_grid("legendre")
    a = random_circuit_scan(g, (2, 3), 8, 20, seed=7)
    b = random_circuit_scan(g, (2, 3), 8, 20, seed=7)
    assert [r.circuit for r in a] == [r.circuit for r in b]
    assert all(r.passed for r in a)


def test_random_walks_close_and_respect_length():
    g = builtin_grid("binomial")
    rng = random.Random(3)
    for _ in range(50):
        c = random_walk(g, (2, 2), 8, rng)
        assert g.endpoint(c.base, c.steps) == (2, 2) and len(c.steps) <= 8


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["laguerre", "legendre", "binomial"]), st.integers(0, 10 ** 6), st.integers(0, 7))
def test_rotation_keeps_scalar_and_free_reduction(name, seed, shift):
    g = builtin_grid(name)
    c = random_walk(g, CENTERS[name], 8, random.Random(seed))
    r = rotate(g, c, shift)
    if not all(g.is_valid(g.endpoint(r.base, r.steps[:i])) for i in range(len(r.steps))):
        return
    assert r.freely_reduces() == c.freely_reduces()
    assert circuit_scalar(g, r) == circuit_scalar(g, c)
