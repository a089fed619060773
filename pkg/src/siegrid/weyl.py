"""The Weyl algebra localised at X.

Elements are finite sums of normal monomials ``X^a D^b`` with ``a`` any
integer and ``b >= 0``, subject to ``DX = XD + 1``.  Products use the
closed formula

    D^b X^c = sum_i C(b, i) c(c-1)...(c-i+1) X^(c-i) D^(b-i),

which stays valid for negative ``c`` because the falling factorial never
terminates early there.
"""

from __future__ import annotations

from functools import lru_cache

from ._algebra import NormalFormElement, power_latex, power_text
from .errors import SymbolicIndexError
from .exact import ParamPoly, binomial_coeff, falling_factorial


@lru_cache(maxsize=None)
def _weyl_monomial_product(a, b, c, d):
    out = {}
    for i in range(b + 1):
        coef = binomial_coeff(b, i) * falling_factorial(c, i)
        if coef:
            out[(a + c - i, b - i + d)] = coef
    return out


class WeylElement(NormalFormElement):
    """Element of the localised Weyl algebra, keyed by ``(x_exponent, d_exponent)``."""

    __slots__ = ()
    ALGEBRA = "weyl"
    JSON_KEYS = ("x", "d")

    @classmethod
    def _check_key(cls, key):
        if len(key) != 2 or key[1] < 0:
            raise ValueError(f"invalid Weyl monomial key {key!r}")

    @classmethod
    def _unit_key(cls):
        return (0, 0)

    @classmethod
    def _mul_keys(cls, k1, k2):
        return _weyl_monomial_product(k1[0], k1[1], k2[0], k2[1])

    def _invert(self):
        if len(self._terms) == 1:
            (a, b), c = next(iter(self._terms.items()))
            if b == 0 and c.is_constant():
                return self._raw({(-a, 0): ParamPoly.const(1 / c.constant_value())})
        return super()._invert()

    @classmethod
    def _mono_text(cls, key):
        a, b = key
        return "*".join(p for p in (power_text("X", a), power_text("D", b)) if p)

    @classmethod
    def _mono_latex(cls, key):
        a, b = key
        return power_latex("X", a) + power_latex("D", b)

    def x_range(self):
        xs = [k[0] for k in self._terms]
        return (min(xs), max(xs)) if xs else (0, 0)

    def d_degree(self) -> int:
        return max((k[1] for k in self._terms), default=-1)


def X() -> WeylElement:
    return WeylElement._raw({(1, 0): ParamPoly.const(1)})


def Xinv() -> WeylElement:
    return WeylElement._raw({(-1, 0): ParamPoly.const(1)})


def D() -> WeylElement:
    return WeylElement._raw({(0, 1): ParamPoly.const(1)})


def C() -> WeylElement:
    """``D - 1``."""
    return D() - 1


def R() -> WeylElement:
    """``X^2 - 1``."""
    return X() ** 2 - 1


def Dn(j: int) -> WeylElement:
    """Truncated geometric sum ``1 + D + ... + D^j``."""
    if isinstance(j, ParamPoly):
        if not j.is_constant():
            raise SymbolicIndexError("Dn needs a concrete integer index")
        j = j.constant_value()
        if j.denominator != 1:
            raise ValueError("Dn index must be an integer")
        j = int(j)
    if j < 0:
        raise ValueError(f"Dn index must be non-negative, got {j}")
    return WeylElement._raw({(0, i): ParamPoly.const(1) for i in range(j + 1)})


def scalar(value) -> WeylElement:
    return WeylElement.scalar(value)
