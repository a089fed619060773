from fractions import Fraction

import pytest

from siegrid.errors import RegionError
from siegrid.families import (
    IDENTITY_IDS,
    binomial_closed,
    binomial_kernel_check,
    family_name,
    gegenbauer_closed,
    grid_table,
    laguerre_closed,
    legendre_rodrigues_forms,
    verify_identity,
    verify_normalized_arrows,
)
from siegrid.grids import builtin_grid
from siegrid.reps import delta_to_fourier

from oracles import (
    binomial_delta_oracle,
    gegenbauer_oracle,
    laguerre_oracle,
    laguerre_operator_oracle,
    legendre_operator_oracle,
)


@pytest.mark.parametrize("n", range(7))
def test_laguerre_matches_sympy(n):
    for k in range(-n, 6):
        vec = laguerre_closed(n, k)
        assert dict(vec.coeffs) == laguerre_oracle(n, k)
        assert laguerre_operator_oracle(dict(vec.coeffs), n, k) == {}


@pytest.mark.parametrize("l", [-1, 1, 3, 5, 7, 9])
def test_gegenbauer_matches_sympy(l):
    for n in range(7):
        vec = gegenbauer_closed(n, l)
        assert dict(vec.coeffs) == gegenbauer_oracle(n, l)
        assert legendre_operator_oracle(dict(vec.coeffs), n, l) == {}


def test_engine_vertex_spaces_agree_with_closed_forms():
    lag, leg = builtin_grid("laguerre"), builtin_grid("legendre")
    for n in range(5):
        for k in range(-n, 4):
            assert lag.vertex_space((n, k)).single().is_multiple_of(laguerre_closed(n, k))
        for l in (-1, 1, 3):
            assert leg.vertex_space((n, l)).single().is_multiple_of(gegenbauer_closed(n, l))


def test_binomial_matches_generating_function():
    for n in range(6):
        for m in range(6):
            assert dict(binomial_closed(n, m).coeffs) == binomial_delta_oracle(n, m)
            assert binomial_closed(n, m, "fourier") == delta_to_fourier(binomial_closed(n, m))


def test_normalizations():
    assert str(laguerre_closed(2, 0, "monic")) == "x^2 - 4*x + 2"
    assert str(gegenbauer_closed(2, 1, "span")) == "3*x^2 - 1"
    assert str(binomial_closed(2, 0, norm="span")) == "d[-2] + 2*d[0] + d[2]"
    with pytest.raises(ValueError):
        laguerre_closed(1, 0, "weird")


def test_region_checks():
    assert laguerre_closed(-1, 3).is_zero()
    with pytest.raises(RegionError):
        laguerre_closed(2, -3)
    with pytest.raises(ValueError):
        gegenbauer_closed(2, 2)
    with pytest.raises(RegionError):
        binomial_closed(-1, 0)


def test_family_aliases():
    assert family_name("gegenbauer") == "legendre"
    with pytest.raises(KeyError):
        family_name("hermite")


def test_grid_table_layout():
    table = grid_table("laguerre", [2], [0, 1, 2], "monic")
    assert [str(v) for v in table[0]] == ["1", "x - 2", "x^2 - 4*x + 2"]


@pytest.mark.parametrize("identity", IDENTITY_IDS["laguerre"])
def test_laguerre_identities_small(identity):
    for n in range(4):
        for k in range(0, 3):
            if identity in ("three_point_1", "three_point_2") and n < 1:
                continue
            assert verify_identity("laguerre", identity, n=n, k=k).passed


@pytest.mark.parametrize("identity", IDENTITY_IDS["legendre"])
def test_legendre_identities_small(identity):
    for n in range(1, 4):
        for l in (1, 3):
            if identity == "three_point_4" and l < 3:
                continue
            assert verify_identity("legendre", identity, n=n, l=l).passed


def test_rodrigues_forms_agree():
    a, b, c = legendre_rodrigues_forms(3, 3)
    assert a == b == c == gegenbauer_closed(3, 3)
    with pytest.raises(RegionError):
        legendre_rodrigues_forms(2, -1)


@pytest.mark.parametrize("identity", IDENTITY_IDS["binomial"])
def test_binomial_two_step(identity):
    key = "m" if "G_" in identity else "n"
    for value in range(2, 5):
        assert verify_identity("binomial", identity, **{key: value}).passed


def test_binomial_row_kernel():
    assert all(binomial_kernel_check(n).passed for n in range(6))


def test_identity_errors():
    with pytest.raises(KeyError):
        verify_identity("laguerre", "nope", n=1, k=1)
    with pytest.raises(ValueError):
        verify_identity("legendre", "recurrence", n=1)


@pytest.mark.parametrize("family, vertex", [("laguerre", (2, 1)), ("laguerre", (3, -2)), ("legendre", (2, 3))])
def test_normalized_arrows(family, vertex):
    reports = verify_normalized_arrows(family, vertex)
    assert reports and all(r.passed for r in reports)


def test_gegenbauer_leading_coefficient():
    assert gegenbauer_closed(4, 1)[4] == Fraction(35, 8)
