"""Concrete representations and exact linear algebra.

Three backends, each a space of finitely supported vectors on an integer
lattice:

``laurent``  basis ``x^e``; the Weyl algebra acts by X = multiplication,
             D = d/dx.
``delta``    basis ``d[z]`` (point masses on the integers); the h-Weyl
             algebra acts by X d[z] = z d[z], M d[z] = (d[z-1] + d[z+1])/2,
             D d[z] = (d[z-1] - d[z+1])/2.
``fourier``  basis ``u^k`` with u = e^(ix); X u^k = -k u^k and M, D
             multiply by (u + 1/u)/2 and (u - 1/u)/2.  It is isomorphic to
             the delta backend through d[z] <-> u^(-z).

A *window* is an inclusive lattice range ``(lo, hi)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import (
    DivisibilityError,
    EmptyKernelError,
    SymbolicIndexError,
    WindowMismatchError,
    WindowOverflowError,
)
from .exact import binomial_coeff, falling_factorial, format_rational, latex_rational

BACKENDS = ("laurent", "delta", "fourier")


class SparseVector:
    """Immutable finitely supported vector ``{lattice index: Fraction}``."""

    __slots__ = ("_coeffs", "_hash")
    BACKEND = ""
    ASCENDING = True

    def __init__(self, coeffs=None):
        self._coeffs = {int(e): Fraction(c) for e, c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, coeffs):
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    @property
    def backend(self):
        return self.BACKEND

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def __getitem__(self, e):
        return self._coeffs.get(e, Fraction(0))

    def support(self):
        return sorted(self._coeffs)

    def span(self):
        """Smallest window containing the support, or None for the zero vector."""
        if not self._coeffs:
            return None
        return (min(self._coeffs), max(self._coeffs))

    def is_zero(self):
        return not self._coeffs

    def _check_same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {self.BACKEND} and {getattr(other, 'BACKEND', type(other).__name__)} vectors")

    def __add__(self, other):
        self._check_same(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._raw(out)

    def __neg__(self):
        return self._raw({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, factor):
        f = Fraction(factor)
        if not f:
            return self._raw({})
        return self._raw({e: c * f for e, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, factor):
        return self * (1 / Fraction(factor))

    def __eq__(self, other):
        if isinstance(other, SparseVector):
            return type(other) is type(self) and self._coeffs == other._coeffs
        if other == 0:
            return not self._coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.BACKEND, frozenset(self._coeffs.items())))
        return self._hash

    def ordered(self):
        return sorted(self._coeffs.items(), reverse=not self.ASCENDING)

    def first_coefficient(self) -> Fraction:
        items = self.ordered()
        return items[0][1] if items else Fraction(0)

    def monic(self):
        """Scale so the first printed coefficient is one."""
        c = self.first_coefficient()
        if not c:
            raise ValueError("the zero vector has no monic form")
        return self / c

    def primitive(self):
        """Integer coprime coefficients, first printed coefficient positive."""
        if not self._coeffs:
            raise ValueError("the zero vector has no primitive form")
        den = lcm(*(c.denominator for c in self._coeffs.values()))
        ints = [int(c * den) for c in self._coeffs.values()]
        g = 0
        for v in ints:
            g = gcd(g, v)
        scaled = self * Fraction(den, g)
        return -scaled if scaled.first_coefficient() < 0 else scaled

    def is_multiple_of(self, other) -> bool:
        """True when the two vectors agree up to a nonzero rational factor."""
        self._check_same(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self._coeffs) != set(other._coeffs):
            return False
        e0 = next(iter(self._coeffs))
        ratio = self._coeffs[e0] / other._coeffs[e0]
        return all(self._coeffs[e] == ratio * other._coeffs[e] for e in self._coeffs)

    def _basis_text(self, e):
        raise NotImplementedError

    def _basis_latex(self, e):
        raise NotImplementedError

    def _render(self, latex):
        items = self.ordered()
        if not items:
            return "0"
        out = []
        for idx, (e, c) in enumerate(items):
            basis = self._basis_latex(e) if latex else self._basis_text(e)
            mag = abs(c)
            num = latex_rational(mag) if latex else format_rational(mag)
            if not basis:
                body = num
            elif mag == 1:
                body = basis
            else:
                body = f"{num}{'' if latex else '*'}{basis}"
            if idx == 0:
                out.append("-" + body if c < 0 else body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self._render(False)

    def latex(self):
        return self._render(True)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def to_json_obj(self):
        return {"backend": self.BACKEND, "coeffs": {str(e): format_rational(c) for e, c in self.ordered()}}


def _power_basis(symbol, e, latex):
    if e == 0:
        return ""
    if e == 1:
        return symbol
    return f"{symbol}^{{{e}}}" if latex else f"{symbol}^{e}"


class LaurentVector(SparseVector):
    """Laurent polynomial in x."""

    __slots__ = ()
    BACKEND = "laurent"
    ASCENDING = False

    def _basis_text(self, e):
        return _power_basis("x", e, False)

    def _basis_latex(self, e):
        return _power_basis("x", e, True)

    def is_polynomial(self):
        return all(e >= 0 for e in self._coeffs)

    def degree(self):
        return max(self._coeffs, default=-1)

    def times(self, other: "LaurentVector") -> "LaurentVector":
        out = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentVector(out)

    def eval_at(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x**e for e, c in self._coeffs.items()), Fraction(0))


class DeltaVector(SparseVector):
    """Finite combination of point masses d[z]."""

    __slots__ = ()
    BACKEND = "delta"

    def _basis_text(self, e):
        return f"d[{e}]"

    def _basis_latex(self, e):
        return f"\\delta_{{{e}}}"


class FourierVector(SparseVector):
    """Laurent polynomial in u = e^(ix)."""

    __slots__ = ()
    BACKEND = "fourier"

    def _basis_text(self, e):
        return _power_basis("u", e, False)

    def _basis_latex(self, e):
        return _power_basis("u", e, True)


_VECTOR_TYPES = {"laurent": LaurentVector, "delta": DeltaVector, "fourier": FourierVector}


def make_vector(backend: str, coeffs) -> SparseVector:
    try:
        return _VECTOR_TYPES[backend](coeffs)
    except KeyError:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}") from None


def basis_vector(backend: str, e: int) -> SparseVector:
    return make_vector(backend, {e: 1})


def delta_to_fourier(v: DeltaVector) -> FourierVector:
    return FourierVector({-z: c for z, c in v.coeffs.items()})


def fourier_to_delta(v: FourierVector) -> DeltaVector:
    return DeltaVector({-k: c for k, c in v.coeffs.items()})


# -- the action ---------------------------------------------------------------


def _concrete_terms(element):
    out = []
    for key, c in element.terms():
        if not c.is_constant():
            raise SymbolicIndexError(f"cannot apply {element} with symbolic coefficients; substitute the indices first")
        out.append((key, c.constant_term()))
    return out


@lru_cache(maxsize=None)
def _shift_power(b):
    """(T_minus - T_plus)^b / 2^b as {shift: coefficient}, T_minus d[z] = d[z-1]."""
    scale = Fraction(1, 2**b)
    return {2 * i - b: scale * binomial_coeff(b, i) * (-1) ** i for i in range(b + 1)}


def _hweyl_step(a, e, b, z, sign):
    """Image of a lattice basis vector under X^a M^e D^b.

    ``sign`` is +1 for the delta backend and -1 for fourier, whose lattice
    runs the other way.
    """
    out = {}
    for s, c in _shift_power(b).items():
        z1 = z + sign * s
        if e:
            targets = ((z1 - 1, c / 2), (z1 + 1, c / 2))
        else:
            targets = ((z1, c),)
        for z2, c2 in targets:
            val = c2 * (sign * z2) ** a if a else c2
            if val:
                out[z2] = out.get(z2, 0) + val
    return out


def apply(element, vector: SparseVector) -> SparseVector:
    """Apply an algebra element to a vector of a compatible backend."""
    from .hweyl import HWeylElement
    from .weyl import WeylElement

    terms = _concrete_terms(element)
    out = {}
    if isinstance(element, WeylElement):
        if not isinstance(vector, LaurentVector):
            raise TypeError(f"Weyl elements act on laurent vectors, not {vector.BACKEND}")
        for (a, b), c in terms:
            for e, v in vector._coeffs.items():
                f = falling_factorial(e, b)
                if f:
                    t = e - b + a
                    out[t] = out.get(t, 0) + c * v * f
        return LaurentVector._raw({e: c for e, c in out.items() if c})
    if isinstance(element, HWeylElement):
        if isinstance(vector, DeltaVector):
            sign = 1
        elif isinstance(vector, FourierVector):
            sign = -1
        else:
            raise TypeError(f"h-Weyl elements act on delta or fourier vectors, not {vector.BACKEND}")
        for (a, e, b), c in terms:
            for z, v in vector._coeffs.items():
                for t, w in _hweyl_step(a, e, b, z, sign).items():
                    out[t] = out.get(t, 0) + c * v * w
        return type(vector)._raw({e: c for e, c in out.items() if c})
    raise TypeError(f"cannot apply {type(element).__name__}")


def apply_polynomial(element, vector: LaurentVector) -> LaurentVector:
    """Apply and insist that the result is an honest polynomial."""
    out = apply(element, vector)
    if not out.is_polynomial():
        raise DivisibilityError(f"{element} applied to {vector} leaves the polynomial ring: {out}")
    return out


def polynomial_divide(numerator: LaurentVector, denominator: LaurentVector) -> LaurentVector:
    """Exact polynomial division; raises DivisibilityError on a remainder."""
    if denominator.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = dict(numerator.coeffs)
    dd = denominator.degree()
    low = min(denominator.support())
    lead = denominator[dd]
    quotient = {}
    while rem:
        top = max(rem)
        if top - dd < min(rem) - low:
            break
        q = rem[top] / lead
        quotient[top - dd] = q
        for e, c in denominator.coeffs.items():
            t = e + top - dd
            s = rem.get(t, 0) - q * c
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    if rem:
        raise DivisibilityError(f"{denominator} does not divide {numerator}")
    return LaurentVector(quotient)


# -- matrices and kernels -------------------------------------------------------


def window_indices(window):
    lo, hi = window
    if hi < lo:
        raise ValueError(f"empty window {window!r}")
    return range(lo, hi + 1)


def operator_matrix(element, window_in, window_out, backend):
    """Matrix of ``element`` from ``window_in`` to ``window_out``.

    Columns follow ``window_in`` in ascending order, rows ``window_out``.  An
    image leaving ``window_out`` raises WindowOverflowError.  Pass
    ``window_out=None`` to use the smallest window holding every image.
    """
    images = [apply(element, basis_vector(backend, e)) for e in window_indices(window_in)]
    if window_out is None:
        spans = [im.span() for im in images if not im.is_zero()]
        window_out = (min(s[0] for s in spans), max(s[1] for s in spans)) if spans else window_in
    lo, hi = window_out
    rows = hi - lo + 1
    matrix = [[Fraction(0)] * len(images) for _ in range(rows)]
    for col, im in enumerate(images):
        for e, c in im.coeffs.items():
            if not lo <= e <= hi:
                raise WindowOverflowError(
                    f"{element} maps basis index {window_in[0] + col} to index {e}, outside {window_out}"
                )
            matrix[e - lo][col] = c
    return matrix


def nullspace(matrix, ncols=None):
    """Kernel basis of a rational matrix.

    Rows are cleared to integers and reduced with fraction-free (Bareiss)
    elimination; the kernel basis is then read off by back substitution.
    Each basis vector is 1 on its own free column and 0 on the others.
    """
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows = []
    for row in matrix:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
        row = [Fraction(v) for v in row]
        if any(row):
            den = lcm(*(v.denominator for v in row))
            rows.append([int(v * den) for v in row])
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            ric = rows[i][c]
            new = rows[i]
            for j in range(c + 1, ncols):
                num = piv * new[j] - ric * rows[r][j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                new[j] = q
            new[c] = 0
            # columns before c are already zero in this row
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for i in reversed(range(len(pivots))):
            pc = pivots[i]
            s = sum((rows[i][j] * x[j] for j in range(pc + 1, ncols) if rows[i][j] and x[j]), Fraction(0))
            x[pc] = -s / rows[i][pc]
        basis.append(x)
    return basis


def kernel_space(elements, window, backend, window_out=None):
    """Common kernel of ``elements`` on the vectors supported in ``window``."""
    if not isinstance(elements, (list, tuple)):
        elements = [elements]
    stacked = []
    for el in elements:
        stacked.extend(operator_matrix(el, window, window_out, backend))
    cols = list(window_indices(window))
    vecs = [make_vector(backend, dict(zip(cols, v))) for v in nullspace(stacked, len(cols))]
    return Subspace.from_vectors(vecs, backend, window)


def _rref(vectors, columns):
    """Reduced row echelon form of vectors over the given column order."""
    rows = [[v[c] for c in columns] for v in vectors]
    pivots = []
    r = 0
    for ci in range(len(columns)):
        p = next((i for i in range(r, len(rows)) if rows[i][ci]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][ci]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][ci]:
                f = rows[i][ci]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(columns[ci])
        r += 1
    return rows[:r], pivots


class Subspace:
    """Span of finitely many vectors, stored as a reduced echelon basis.

    Coordinates are ordered from the highest lattice index down, so a
    one-dimensional polynomial space is spanned by a monic polynomial.
    """

    __slots__ = ("backend", "window", "basis", "pivots")

    def __init__(self, backend, window, basis, pivots):
        self.backend = backend
        self.window = window
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, vectors, backend, window=None):
        vectors = list(vectors)
        for v in vectors:
            if v.backend != backend:
                raise TypeError(f"expected {backend} vectors, got {v.backend}")
        if window is None:
            spans = [v.span() for v in vectors if not v.is_zero()]
            window = (min(s[0] for s in spans), max(s[1] for s in spans)) if spans else (0, 0)
        lo, hi = window
        for v in vectors:
            s = v.span()
            if s and (s[0] < lo or s[1] > hi):
                raise WindowMismatchError(f"{v} is not supported in window {window}")
        columns = list(range(hi, lo - 1, -1))
        rows, pivots = _rref(vectors, columns)
        basis = [make_vector(backend, dict(zip(columns, row))) for row in rows]
        return cls(backend, tuple(window), basis, pivots)

    @property
    def dim(self):
        return len(self.basis)

    def vectors(self):
        return list(self.basis)

    def single(self):
        """The spanning vector of a one-dimensional space."""
        if self.dim == 0:
            raise EmptyKernelError("the space is zero")
        if self.dim != 1:
            raise ValueError(f"expected a one-dimensional space, got dimension {self.dim}")
        return self.basis[0]

    def membership(self, v):
        """Coordinates of ``v`` in the stored basis, or None if outside the span."""
        if v.backend != self.backend:
            raise TypeError(f"{v.backend} vector tested against a {self.backend} space")
        s = v.span()
        if s and (s[0] < self.window[0] or s[1] > self.window[1]):
            raise WindowMismatchError(f"{v} is not supported in window {self.window}")
        coords = [v[p] for p in self.pivots]
        rest = v
        for c, b in zip(coords, self.basis):
            if c:
                rest = rest - b * c
        return tuple(coords) if rest.is_zero() else None

    def contains(self, v) -> bool:
        s = v.span()
        if s and (s[0] < self.window[0] or s[1] > self.window[1]):
            return False
        return self.membership(v) is not None

    def contains_space(self, other) -> bool:
        return all(self.contains(b) for b in other.basis)

    def same_span(self, other) -> bool:
        return self.dim == other.dim and self.contains_space(other) and other.contains_space(self)

    def __repr__(self):
        inner = ", ".join(str(b) for b in self.basis)
        return f"Subspace({self.backend}, window={self.window}, <{inner}>)"
