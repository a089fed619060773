"""The h-Weyl algebra at h = 1.

Generators X, M, D with

    MX = XM + D,   DX = XD + M,   M^2 = 1 + D^2,   MD = DM.

Normal monomials are ``X^a M^e D^b`` with ``a, b >= 0`` and ``e`` in {0, 1}.
Commuting a polynomial P(M, D) past X uses the derivation
delta = [ . , X] of k[M, D] / (M^2 - 1 - D^2):

    P X^c = sum_i C(c, i) X^(c-i) delta^i(P).
"""

from __future__ import annotations

from functools import lru_cache

from ._algebra import NormalFormElement, power_latex, power_text
from .exact import ParamPoly, binomial_coeff


def _add_into(out, key, coef):
    s = out.get(key, 0) + coef
    if s:
        out[key] = s
    else:
        out.pop(key, None)


@lru_cache(maxsize=None)
def _delta_power(e, b, i):
    """delta^i(M^e D^b) as a dict ``{(e', b'): int}``."""
    if i == 0:
        return {(e, b): 1}
    out = {}
    for (e1, b1), c in _delta_power(e, b, i - 1).items():
        if e1 == 0:
            if b1:
                _add_into(out, (1, b1 - 1), c * b1)
        else:
            _add_into(out, (0, b1 + 1), c * (b1 + 1))
            if b1:
                _add_into(out, (0, b1 - 1), c * b1)
    return out


@lru_cache(maxsize=None)
def _hweyl_monomial_product(a, e, b, c, f, d):
    out = {}
    for i in range(c + 1):
        binom = binomial_coeff(c, i)
        for (e1, b1), coef in _delta_power(e, b, i).items():
            coef *= binom
            x = a + c - i
            if e1 + f == 2:
                _add_into(out, (x, 0, b1 + d), coef)
                _add_into(out, (x, 0, b1 + d + 2), coef)
            else:
                _add_into(out, (x, e1 + f, b1 + d), coef)
    return out


class HWeylElement(NormalFormElement):
    """Element of the h-Weyl algebra, keyed by ``(x, m, d)`` exponents."""

    __slots__ = ()
    ALGEBRA = "hweyl"
    JSON_KEYS = ("x", "m", "d")

    @classmethod
    def _check_key(cls, key):
        if len(key) != 3 or key[0] < 0 or key[1] not in (0, 1) or key[2] < 0:
            raise ValueError(f"invalid h-Weyl monomial key {key!r}")

    @classmethod
    def _unit_key(cls):
        return (0, 0, 0)

    @classmethod
    def _mul_keys(cls, k1, k2):
        return _hweyl_monomial_product(*k1, *k2)

    @classmethod
    def _mono_text(cls, key):
        a, e, b = key
        parts = (power_text("X", a), power_text("M", e), power_text("D", b))
        return "*".join(p for p in parts if p)

    @classmethod
    def _mono_latex(cls, key):
        a, e, b = key
        return power_latex("X", a) + power_latex("M", e) + power_latex("D", b)


def X() -> HWeylElement:
    return HWeylElement._raw({(1, 0, 0): ParamPoly.const(1)})


def M() -> HWeylElement:
    return HWeylElement._raw({(0, 1, 0): ParamPoly.const(1)})


def D() -> HWeylElement:
    return HWeylElement._raw({(0, 0, 1): ParamPoly.const(1)})


def scalar(value) -> HWeylElement:
    return HWeylElement.scalar(value)


def G(j) -> HWeylElement:
    """``jD + MX``, equal to ``(j+1)D + XM``."""
    return D() * j + M() * X()


def L(j) -> HWeylElement:
    """``jM + DX``, equal to ``(j+1)M + XD``."""
    return M() * j + D() * X()


def H(n, m) -> HWeylElement:
    """The binomial vertex operator ``(n+m+1)M^2 + DXM - (n+1)``."""
    return M() ** 2 * (ParamPoly.coerce(n) + m + 1) + D() * X() * M() - (ParamPoly.coerce(n) + 1)


def H_forms(n, m):
    """The five equivalent ways the binomial vertex operator is written."""
    n = ParamPoly.coerce(n)
    s = n + m + 1
    x, mm, d = X(), M(), D()
    return [
        mm * mm * s + d * x * mm - (n + 1),
        mm * mm * s + mm * x * d - n,
        (mm * mm - 1) * s + mm * x * d + (ParamPoly.coerce(m) + 1),
        d * d * s + mm * x * d + (ParamPoly.coerce(m) + 1),
        d * d * s + d * x * mm + m,
    ]
