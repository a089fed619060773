"""Shared machinery for algebra elements stored in normal form.

An element is a finite sum of normal monomials with ParamPoly coefficients.
Subclasses supply the monomial product and the printing of one monomial.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational

from .exact import ParamPoly, format_rational, latex_rational


class NormalFormElement:
    __slots__ = ("_terms", "_hash")

    # subclasses override
    ALGEBRA = ""
    JSON_KEYS: tuple = ()

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                c = ParamPoly.coerce(c)
                if c:
                    self._check_key(key)
                    clean[tuple(key)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _check_key(cls, key):
        pass

    @classmethod
    def _unit_key(cls):
        raise NotImplementedError

    @classmethod
    def _mul_keys(cls, k1, k2):
        """Product of two normal monomials as ``{key: rational}``."""
        raise NotImplementedError

    @classmethod
    def _sort_key(cls, key):
        return tuple(-x for x in key)

    @classmethod
    def scalar(cls, value):
        c = ParamPoly.coerce(value)
        return cls._raw({cls._unit_key(): c} if c else {})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls.scalar(1)

    @classmethod
    def monomial(cls, *key, coeff=1):
        return cls({tuple(key): coeff})

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Rational, ParamPoly)):
            return self.scalar(other)
        return None

    # -- inspection -------------------------------------------------------

    def terms(self):
        """(key, coefficient) pairs in print order."""
        return [(k, self._terms[k]) for k in sorted(self._terms, key=self._sort_key)]

    def coefficient(self, *key) -> ParamPoly:
        return self._terms.get(tuple(key), ParamPoly.const(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return not self._terms or set(self._terms) == {self._unit_key()}

    def scalar_part(self) -> ParamPoly:
        return self._terms.get(self._unit_key(), ParamPoly.const(0))

    def scalar_value(self) -> ParamPoly:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        return self.scalar_part()

    def free_symbols(self):
        out = set()
        for c in self._terms.values():
            out.update(c.free_symbols())
        return sorted(out)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, factor):
        f = ParamPoly.coerce(factor)
        if not f:
            return self.zero()
        return self._raw({k: c * f for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational, ParamPoly)):
            return self.scale(other)
        if not isinstance(other, type(self)):
            return NotImplemented
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                c12 = c1 * c2
                for k, coef in self._mul_keys(k1, k2).items():
                    add = c12 * coef
                    s = out[k] + add if k in out else add
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return self._raw(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        d = ParamPoly.coerce(other).constant_value()
        if not d:
            raise ZeroDivisionError("division of an algebra element by zero")
        return self.scale(Fraction(1) / d)

    def __pow__(self, power: int):
        if not isinstance(power, int):
            raise TypeError("exponent must be an int")
        if power < 0:
            return self._invert() ** (-power)
        out = self.one()
        base = self
        while power:
            if power & 1:
                out = out * base
            base = base * base
            power >>= 1
        return out

    def _invert(self):
        raise ValueError(f"{self} is not invertible")

    def commutator(self, other):
        return self * other - other * self

    def substitute_params(self, assignment):
        out = {}
        for k, c in self._terms.items():
            c2 = c.substitute(assignment)
            if c2:
                out[k] = c2
        return self._raw(out)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ALGEBRA, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- printing ---------------------------------------------------------

    @classmethod
    def _mono_text(cls, key) -> str:
        raise NotImplementedError

    @classmethod
    def _mono_latex(cls, key) -> str:
        raise NotImplementedError

    def _signed_terms(self, latex):
        parts = []
        for key, c in self.terms():
            mono = self._mono_latex(key) if latex else self._mono_text(key)
            negative = c.leading_coefficient() < 0
            mag = -c if negative else c
            if mag.is_constant():
                q = mag.constant_term()
                num = latex_rational(q) if latex else format_rational(q)
                if not mono:
                    body = num
                elif q == 1:
                    body = mono
                else:
                    body = f"{num}{'' if latex else '*'}{mono}"
            else:
                inner = mag.latex().replace(" ", "") if latex else mag.compact()
                if not mag.is_single_term():
                    inner = f"({inner})"
                if not mono:
                    body = inner
                else:
                    body = f"{inner}{'' if latex else '*'}{mono}"
            parts.append((negative, body))
        return parts

    def _render(self, latex):
        parts = self._signed_terms(latex)
        if not parts:
            return "0"
        neg, body = parts[0]
        out = ["-" + body if neg else body]
        for neg, body in parts[1:]:
            out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self._render(latex=False)

    def latex(self) -> str:
        return self._render(latex=True)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def to_json_obj(self):
        return [
            dict(coeff=str(c), **dict(zip(self.JSON_KEYS, key)))
            for key, c in self.terms()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        from .parser import parse_param_poly

        terms = {}
        for item in obj:
            key = tuple(int(item[name]) for name in cls.JSON_KEYS)
            terms[key] = parse_param_poly(str(item["coeff"]))
        return cls(terms)


def power_text(symbol: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return symbol
    return f"{symbol}^{e}"


def power_latex(symbol: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return symbol
    return f"{symbol}^{{{e}}}"
