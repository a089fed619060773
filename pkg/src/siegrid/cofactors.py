"""Exact operator identities behind the grid scalar tables.

Each circuit in a scalar table equals a scalar plus a multiple of the vertex
operator ``H``, so it acts as that scalar on ``ker H``.  The identities here
state those decompositions (and the intertwining relations used to move
arrows past each other) as equalities in the Weyl or h-Weyl algebra with
symbolic indices.  Identities that contain the truncated sum ``Dn(n)`` need a
concrete ``n`` and keep the other index symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import hweyl, weyl
from .exact import sym
from .grids import VerificationReport, laguerre_H, legendre_H


@dataclass(frozen=True)
class CofactorIdentity:
    grid: str
    name: str
    build: Callable  # () -> (lhs, rhs) or (n) -> (lhs, rhs)
    needs_n: bool = False
    note: str = ""


def _laguerre():
    n, k = sym("n"), sym("k")
    x, d, c = weyl.X(), weyl.D(), weyl.C()
    H = laguerre_H(n, k)

    def east_narrow():
        return (-d) * (x * c + k), -H + n + 1

    def west_narrow():
        return (x * c + k + 1) * (-d), -H + n

    def horizontal_difference():
        return (-d) * (x * c + k) - (x * c + k + 1) * (-d), weyl.scalar(1)

    def east_keeps_truncation(nv):
        lhs = d ** (nv + 2) * (x * c + k)
        return lhs, (x * c * d + d * k + c * (nv + 2)) * d ** (nv + 1)

    def north_intertwines():
        return laguerre_H(n, k + 1) * (-c) - (-c) * H, weyl.WeylElement.zero()

    def south_intertwines(nv):
        hn = laguerre_H(nv, k)
        lhs = hn * weyl.Dn(nv) - weyl.Dn(nv) * laguerre_H(nv, k + 1)
        return lhs, -(d ** (nv + 1)) * (nv + 1)

    def north_narrow(nv):
        return weyl.Dn(nv) * (-c), -(d ** (nv + 1)) + 1

    def south_narrow(nv):
        return (-c) * weyl.Dn(nv), -(d ** (nv + 1)) + 1

    def east_then_north():
        return (-c) * (x * c + k), x * c + (n + k + 1) - H

    def northeast_narrow():
        return (-(x * d) + n + 1) * (x * c + (n + k + 1)), -(x * H) + (n + 1) * (n + k + 1)

    def northeast_east_triangle(nv):
        hn = laguerre_H(nv, k)
        lhs = (-d) * weyl.Dn(nv + 1) * (x * c + (k + nv + 1))
        return lhs, -(weyl.Dn(nv + 1) * hn) - weyl.Dn(nv + 1) * c * (nv + 1)

    def truncated_sum_times_c(nv):
        return weyl.Dn(nv) * c, d ** (nv + 1) - 1

    def ccw_square(nv):
        hn = laguerre_H(nv, k)
        lhs = weyl.Dn(nv) * (-d) * (-c) * (x * c + k)
        return lhs, (d ** (nv + 1) - 1) * (hn - (nv + 1))

    return [
        CofactorIdentity("laguerre", "east_narrow", east_narrow),
        CofactorIdentity("laguerre", "west_narrow", west_narrow),
        CofactorIdentity("laguerre", "horizontal_difference", horizontal_difference),
        CofactorIdentity("laguerre", "east_keeps_truncation", east_keeps_truncation, True),
        CofactorIdentity("laguerre", "north_intertwines", north_intertwines),
        CofactorIdentity("laguerre", "south_intertwines", south_intertwines, True,
                         "vanishes on ker D^(n+1)"),
        CofactorIdentity("laguerre", "north_narrow", north_narrow, True),
        CofactorIdentity("laguerre", "south_narrow", south_narrow, True),
        CofactorIdentity("laguerre", "east_then_north", east_then_north),
        CofactorIdentity("laguerre", "northeast_narrow", northeast_narrow),
        CofactorIdentity("laguerre", "northeast_east_triangle", northeast_east_triangle, True,
                         "middle line reads the vertex operator where R_nk is printed"),
        CofactorIdentity("laguerre", "truncated_sum_times_c", truncated_sum_times_c, True),
        CofactorIdentity("laguerre", "ccw_square", ccw_square, True),
    ]


def _legendre():
    n, l = sym("n"), sym("l")
    x, d, r = weyl.X(), weyl.D(), weyl.R()
    H = legendre_H(n, l)
    east = x * (n + l) + r * d
    west = x * n - r * d
    east_back = x * (n + 1) - r * d
    north = x * d + (n + l)
    south = r * (x * d - n) + (l - 1)
    north_back = r * (x * d - n) + (l + 1)

    def pair(lhs, rhs):
        return lambda: (lhs, rhs)

    a_right = east_back * east
    a_left = (x * (n + l - 1) + r * d) * west
    b_right = north_back * north
    b_left = (x * d + (n + l - 2)) * south
    se_narrow = d * (x * (l - 1) + r * d)
    nw_narrow = (x * (l + 1) + r * d) * d
    ne_swap_lhs = (x * d + (n + l + 1)) * east - (x * (n + l + 2) + r * d) * north
    ccw_lhs = north_back * east_back * (x * d + (n + l + 1)) * east
    ccw_mid = north_back * east_back * (x * (n + l + 2) + r * d) * north
    cw_lhs = east_back * (r * (x * d - (n + 1)) + (l + 1)) * (x * (n + l + 2) + r * d) * north
    cw_mid = east_back * (r * (x * d - (n + 1)) + (l + 1)) * (x * d + (n + l + 1)) * east
    nw_square = (west * north) * (n + l - 1) - ((x * d + (n + l - 1)) * west) * (n + l + 1)
    nnw_inner = west * north
    nnw = (x * (l + 1) + r * d) * west * north
    nnw_cofactor = -(x * x) * (l + 1) - r * d * x + (n + l + 1)

    return [
        CofactorIdentity("legendre", "east_narrow", pair(a_right, -(r * H) + (n + 1) * (n + l))),
        CofactorIdentity("legendre", "west_narrow", pair(a_left, -(r * H) + n * (n + l - 1))),
        CofactorIdentity("legendre", "horizontal_difference",
                         pair(a_right - a_left, weyl.scalar((n + 1) * (n + l) - n * (n + l - 1)))),
        CofactorIdentity("legendre", "north_narrow", pair(b_right, x * x * H + (n + l) * (n + l + 1))),
        CofactorIdentity("legendre", "south_narrow",
                         pair(b_left, x * x * H + (n + l - 1) * (n + l - 2))),
        CofactorIdentity("legendre", "vertical_difference",
                         pair(b_right - b_left, weyl.scalar((n + l) * (n + l + 1) - (n + l - 1) * (n + l - 2)))),
        CofactorIdentity("legendre", "southeast_narrow", pair(se_narrow, H + (n + 1) * (n + l - 1))),
        CofactorIdentity("legendre", "northwest_narrow", pair(nw_narrow, H + n * (n + l))),
        CofactorIdentity("legendre", "diagonal_difference", pair(se_narrow - nw_narrow, weyl.scalar(l - 1))),
        CofactorIdentity("legendre", "northeast_square_commutes", pair(ne_swap_lhs, weyl.WeylElement.zero())),
        CofactorIdentity("legendre", "ccw_square_reorder", pair(ccw_lhs, ccw_mid)),
        CofactorIdentity("legendre", "cw_square_reorder", pair(cw_lhs, cw_mid)),
        CofactorIdentity("legendre", "northwest_square_commutes", pair(nw_square, x * H * 2)),
        CofactorIdentity("legendre", "nnw_inner", pair(nnw_inner, -(x * H) + d * (n + l + 1))),
        CofactorIdentity("legendre", "nnw_triangle", pair(nnw, nnw_cofactor * H + n * (n + l) * (n + l + 1))),
    ]


def _binomial():
    n, m = sym("n"), sym("m")
    M, D = hweyl.M(), hweyl.D()
    G, L = hweyl.G, hweyl.L
    H = hweyl.H(n, m)
    s = n + m

    def pair(lhs, rhs):
        return lambda: (lhs, rhs)

    return [
        CofactorIdentity("binomial", "east_narrow", pair(L(s + 1) * M, H + n + 1)),
        CofactorIdentity("binomial", "west_narrow", pair(M * L(s), H + n)),
        CofactorIdentity("binomial", "horizontal_difference",
                         pair(L(s + 1) * M - M * L(s), hweyl.scalar(1))),
        CofactorIdentity("binomial", "north_narrow", pair(G(s + 1) * (-D), -H + m + 1)),
        CofactorIdentity("binomial", "south_narrow", pair((-D) * G(s), -H + m)),
        CofactorIdentity("binomial", "vertical_difference",
                         pair(G(s + 1) * (-D) - (-D) * G(s), hweyl.scalar(1))),
        CofactorIdentity("binomial", "ccw_square_reorder",
                         pair(G(s + 1) * L(s + 2) * (-D) * M, G(s + 1) * (-D) * L(s + 1) * M)),
        CofactorIdentity("binomial", "cw_square_reorder",
                         pair(L(s + 1) * G(s + 2) * M * (-D), L(s + 1) * M * G(s + 1) * (-D))),
    ]


_BUILDERS = {"laguerre": _laguerre, "legendre": _legendre, "binomial": _binomial}


def cofactor_identities(grid=None):
    names = [grid] if grid else list(_BUILDERS)
    out = []
    for name in names:
        out.extend(_BUILDERS[name]())
    return out


def check_cofactor(identity: CofactorIdentity, n=None) -> VerificationReport:
    """Compare both sides exactly; ``n`` is required for identities with ``Dn``."""
    if identity.needs_n:
        if n is None:
            raise ValueError(f"{identity.grid} {identity.name} needs a concrete n")
        lhs, rhs = identity.build(n)
        vertex = (n,)
    else:
        lhs, rhs = identity.build()
        vertex = None
    return VerificationReport(f"cofactor:{identity.name}", identity.grid, vertex, lhs == rhs,
                              str(rhs), str(lhs), note=identity.note)


def check_all_cofactors(grid=None, n_values=range(6)):
    reports = []
    for ident in cofactor_identities(grid):
        if ident.needs_n:
            reports.extend(check_cofactor(ident, nv) for nv in n_values)
        else:
            reports.append(check_cofactor(ident))
    return reports
