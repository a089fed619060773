"""Exact rationals and polynomials in the grid index symbols.

Rationals are plain :class:`fractions.Fraction`.  :class:`ParamPoly` is a
polynomial with rational coefficients in the symbols ``n, k, l, m, j``
(``l`` stands for the Legendre index, usually typeset as ell).  It is the
coefficient ring of every algebra element, so grid identities can be
checked with symbolic indices.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import UnassignedSymbolError

SYMBOLS = ("n", "k", "l", "m", "j")
_NSYM = len(SYMBOLS)
_ZERO_EXP = (0,) * _NSYM
_LATEX_NAMES = {"l": r"\ell"}


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, ParamPoly):
        return value.constant_value()
    raise TypeError(f"cannot treat {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    """``p/q``, or just ``p`` when the denominator is one."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def latex_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


class ParamPoly:
    """Immutable sparse polynomial over the rationals in ``n, k, l, m, j``.

    Stored as a mapping from exponent 5-tuples to nonzero Fractions.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(exp)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value) -> "ParamPoly":
        value = as_fraction(value)
        return cls._raw({_ZERO_EXP: value} if value else {})

    @classmethod
    def symbol(cls, name: str) -> "ParamPoly":
        try:
            idx = SYMBOLS.index(name)
        except ValueError:
            raise ValueError(f"unknown index symbol {name!r}; expected one of {SYMBOLS}") from None
        exp = [0] * _NSYM
        exp[idx] = 1
        return cls._raw({tuple(exp): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        return cls.const(value)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise UnassignedSymbolError(self.free_symbols()[0])
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def free_symbols(self):
        used = set()
        for exp in self._terms:
            used.update(i for i, e in enumerate(exp) if e)
        return [SYMBOLS[i] for i in sorted(used)]

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[self._ordered_exps()[0]]

    def _ordered_exps(self):
        return sorted(self._terms, key=lambda e: (-sum(e), tuple(-x for x in e)))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            other = ParamPoly.const(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (ParamPoly, int, Rational)):
            return NotImplemented
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        return ParamPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            f = Fraction(other)
            if not f:
                return ParamPoly._raw({})
            return ParamPoly._raw({e: c * f for e, c in self._terms.items()})
        if self.is_constant():
            return other * self.constant_term()
        if other.is_constant():
            return self * other.constant_term()
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return ParamPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational constant."""
        d = as_fraction(other)
        if not d:
            raise ZeroDivisionError("division of a ParamPoly by zero")
        return self * (1 / d)

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError("ParamPoly powers must be non-negative integers")
        out = ParamPoly.const(1)
        base = self
        while power:
            if power & 1:
                out = out * base
            base = base * base
            power >>= 1
        return out

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- evaluation -------------------------------------------------------

    def substitute(self, assignment) -> "ParamPoly":
        """Replace some symbols by values (numbers or ParamPolys)."""
        values = [None] * _NSYM
        for name, v in assignment.items():
            values[SYMBOLS.index(name)] = ParamPoly.coerce(v)
        out = ParamPoly._raw({})
        for exp, c in self._terms.items():
            keep = list(exp)
            term = ParamPoly.const(c)
            for i, e in enumerate(exp):
                if e and values[i] is not None:
                    term = term * values[i] ** e
                    keep[i] = 0
            out = out + term * ParamPoly._raw({tuple(keep): Fraction(1)})
        return out

    def eval(self, assignment=None) -> Fraction:
        """Evaluate to a rational; every symbol present must be assigned."""
        assignment = assignment or {}
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    name = SYMBOLS[i]
                    if name not in assignment:
                        raise UnassignedSymbolError(name)
                    term *= Fraction(assignment[name]) ** e
            total += term
        return total

    # -- printing ---------------------------------------------------------

    def _term_strings(self, *, latex=False):
        parts = []
        for exp in self._ordered_exps():
            c = self._terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if not e:
                    continue
                name = _LATEX_NAMES.get(SYMBOLS[i], SYMBOLS[i]) if latex else SYMBOLS[i]
                if e == 1:
                    factors.append(name)
                else:
                    factors.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
            mag = abs(c)
            if latex:
                mono = " ".join(factors) if factors else ""
                if not mono:
                    body = latex_rational(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{latex_rational(mag)} {mono}"
            else:
                mono = "*".join(factors)
                if not mono:
                    body = format_rational(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{format_rational(mag)}*{mono}"
            parts.append((c < 0, body))
        return parts

    def _join(self, parts, sep_plus, sep_minus, lead_minus):
        if not parts:
            return "0"
        neg, body = parts[0]
        out = [lead_minus + body if neg else body]
        for neg, body in parts[1:]:
            out.append((sep_minus if neg else sep_plus) + body)
        return "".join(out)

    def __str__(self):
        return self._join(self._term_strings(), " + ", " - ", "-")

    def compact(self) -> str:
        """Spaceless form, e.g. ``n+1``, used inside operator prints."""
        return self._join(self._term_strings(), "+", "-", "-")

    def latex(self) -> str:
        return self._join(self._term_strings(latex=True), " + ", " - ", "-")

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"

    def is_single_term(self) -> bool:
        return len(self._terms) <= 1


def binomial_coeff(a, b: int):
    """Binomial coefficient C(a, b).

    ``a`` may be an int or a ParamPoly; ``b`` must be an int.  Returns 0 when
    ``b < 0`` and, for integer ``a >= 0``, when ``b > a``.
    """
    if b < 0:
        return 0
    if isinstance(a, int):
        if a >= 0 and b > a:
            return 0
        return int(falling_factorial(a, b) // factorial(b))
    return falling_factorial(a, b) / factorial(b)


def falling_factorial(a, i: int):
    """a (a-1) ... (a-i+1); works for negative integers and ParamPolys."""
    if i < 0:
        raise ValueError("falling factorial needs a non-negative length")
    out = 1
    for t in range(i):
        out = out * (a - t)
    return out


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of a negative number ({n})")
    out = 1
    for t in range(2, n + 1):
        out *= t
    return out


def sym(name: str) -> ParamPoly:
    return ParamPoly.symbol(name)
