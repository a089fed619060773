"""Text syntax for algebra elements, index polynomials and vectors.

Operator grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' sint)?
    atom   := 'X' | 'D' | 'M' | 'C' | 'R' | 'Dn(' uint ')'
            | uint ('/' uint)? | param | '(' expr ')'
    param  := 'n' | 'k' | 'l' | 'm' | 'j'

``C`` is ``D - 1``, ``R`` is ``X^2 - 1`` and ``Dn(j)`` is ``1 + D + ... + D^j``.
In h-Weyl mode ``M`` is allowed while ``C``, ``R``, ``Dn`` and negative
powers are rejected; Weyl mode rejects ``M``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UnknownAtomError
from .exact import SYMBOLS, ParamPoly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<dn>Dn\()|(?P<name>[A-Za-zℓ])|(?P<op>[-+*/^()\[\]]))")

OPERATOR_ATOMS = {
    "weyl": {"X", "D", "C", "R"},
    "hweyl": {"X", "D", "M"},
    "scalar": set(),
}


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str
    position: int


@dataclass(frozen=True)
class DnAtom:
    index: int
    position: int


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int
    position: int


def tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + stripped]!r}", pos + stripped)
        start = mt.start(mt.lastgroup)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), start))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return node

    def expr(self):
        terms = []
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        terms.append((sign, self.term()))
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                terms.append((-1 if val == "-" else 1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def _starts_factor(self, tok):
        kind, val, _ = tok
        return kind in ("num", "dn", "name") or (kind == "op" and val == "(")

    def term(self):
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                factors.append(self.factor())
            elif self._starts_factor(tok):
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val, epos = self.peek()
            if kind == "op" and val == "-":
                self.take()
                sign = -1
            kind, val, epos = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer", epos)
            return Power(base, sign * int(val), pos)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            value = Fraction(int(val))
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise ParseError("denominator must be an unsigned integer", p3)
                if int(v3) == 0:
                    raise ParseError("zero denominator", p3)
                value = value / int(v3)
            return Num(value)
        if kind == "dn":
            k2, v2, p2 = self.take()
            if k2 != "num":
                raise ParseError("Dn index must be an unsigned integer", p2)
            self.expect(")")
            return DnAtom(int(v2), pos)
        if kind == "name":
            if val == "ℓ":
                val = "l"
            if val in SYMBOLS:
                return Param(val)
            if val in ("X", "D", "M", "C", "R"):
                return Atom(val, pos)
            raise UnknownAtomError(f"unknown atom {val!r}", pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_ast(text: str):
    """Parse operator text into a syntax tree without evaluating it."""
    return _Parser(text).parse()


def _atom_value(name, algebra):
    if algebra == "hweyl":
        from . import hweyl as h

        return {"X": h.X, "D": h.D, "M": h.M}[name]()
    from . import weyl as w

    return {"X": w.X, "D": w.D, "C": w.C, "R": w.R}[name]()


def evaluate(node, algebra="weyl"):
    """Evaluate a syntax tree into a Weyl element, h-Weyl element or ParamPoly."""
    if algebra not in OPERATOR_ATOMS:
        raise ValueError(f"unknown algebra {algebra!r}")
    if isinstance(node, Num):
        return _lift(ParamPoly.const(node.value), algebra)
    if isinstance(node, Param):
        return _lift(ParamPoly.symbol(node.name), algebra)
    if isinstance(node, Atom):
        if node.name not in OPERATOR_ATOMS[algebra]:
            raise UnknownAtomError(f"atom {node.name!r} is not available in {algebra} mode", node.position)
        return _atom_value(node.name, algebra)
    if isinstance(node, DnAtom):
        if algebra != "weyl":
            raise UnknownAtomError(f"Dn is not available in {algebra} mode", node.position)
        from .weyl import Dn

        return Dn(node.index)
    if isinstance(node, Sum):
        out = _lift(ParamPoly.const(0), algebra)
        for sign, sub in node.terms:
            val = evaluate(sub, algebra)
            out = out + val if sign > 0 else out - val
        return out
    if isinstance(node, Product):
        out = evaluate(node.factors[0], algebra)
        for sub in node.factors[1:]:
            out = out * evaluate(sub, algebra)
        return out
    if isinstance(node, Power):
        base = evaluate(node.base, algebra)
        if node.exponent < 0 and algebra != "weyl":
            raise ParseError(f"negative powers are not available in {algebra} mode", node.position)
        try:
            return base ** node.exponent
        except ValueError as exc:
            raise ParseError(str(exc), node.position) from None
    raise TypeError(f"not a syntax node: {node!r}")


def _lift(poly, algebra):
    if algebra == "weyl":
        from .weyl import WeylElement

        return WeylElement.scalar(poly)
    if algebra == "hweyl":
        from .hweyl import HWeylElement

        return HWeylElement.scalar(poly)
    return poly


def parse(text: str, algebra: str = "weyl"):
    """Parse operator text into a normal-form element of ``algebra``."""
    return evaluate(parse_ast(text), algebra)


def parse_param_poly(text: str) -> ParamPoly:
    return evaluate(parse_ast(text), "scalar")


# -- vectors ---------------------------------------------------------------

_VEC_TERM = re.compile(
    r"""\s*(?P<sign>[-+])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?:(?P<x>[xu])(?:\^(?P<exp>-?\d+))?|d\[(?P<z>-?\d+)\])?
        \s*""",
    re.VERBOSE,
)


def parse_vector(text: str, backend: str | None = None):
    """Parse ``x^2 - 4*x + 2``, ``d[-1] + 2*d[1]`` or ``1/2*u^-1 + 1/2*u``.

    The backend is inferred from the basis symbol unless given.  A bare
    rational is a multiple of the constant basis vector (``x^0`` or ``u^0``)
    and needs an explicit backend when it is the whole input.
    """
    from .reps import make_vector

    coeffs = {}
    seen = set()
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty vector", 0)
    first = True
    while pos < len(text):
        mt = _VEC_TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"cannot read vector term {text[pos:]!r}", pos)
        if not first and mt.group("sign") is None:
            raise ParseError("missing '+' or '-' between vector terms", pos)
        coef_txt, var, z = mt.group("coef"), mt.group("x"), mt.group("z")
        if coef_txt is None and var is None and z is None:
            raise ParseError("empty vector term", pos)
        coef = Fraction(coef_txt) if coef_txt else Fraction(1)
        if mt.group("sign") == "-":
            coef = -coef
        if z is not None:
            kind, exp = "delta", int(z)
        elif var is not None:
            kind = "laurent" if var == "x" else "fourier"
            exp = int(mt.group("exp")) if mt.group("exp") else 1
        else:
            kind, exp = None, 0
        if kind:
            seen.add(kind)
        coeffs.setdefault(kind, {})
        coeffs[kind][exp] = coeffs[kind].get(exp, 0) + coef
        pos = mt.end()
        first = False
    if backend is None:
        if len(seen) != 1:
            raise ParseError("cannot infer a single vector backend from the input", 0)
        backend = seen.pop()
    elif seen - {backend}:
        raise ParseError(f"basis symbols do not match backend {backend!r}", 0)
    if None in coeffs:
        if backend == "delta":
            raise ParseError("bare constants are not allowed for delta vectors", 0)
        bucket = coeffs.setdefault(backend, {})
        for exp, c in coeffs.pop(None).items():
            bucket[exp] = bucket.get(exp, 0) + c
    return make_vector(backend, coeffs.get(backend, {}))
