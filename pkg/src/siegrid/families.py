"""Closed forms of the three families and checks of their named identities.

* associated Laguerre polynomials ``L_n^k``
* Legendre-Gegenbauer polynomials ``P_n^l`` (Gegenbauer ``C_n^(l/2)``, l odd)
* binomials ``W_nm = M^n D^m d[0]``, i.e. cos^n sin^m in the Fourier picture

Identities are checked in the classical normalization as exact equalities
of vectors.
"""

from __future__ import annotations

from fractions import Fraction

from . import hweyl, weyl
from .errors import DivisibilityError, RegionError
from .exact import binomial_coeff, factorial
from .grids import VerificationReport, builtin_grid
from .reps import (
    FourierVector,
    LaurentVector,
    apply,
    apply_polynomial,
    basis_vector,
    polynomial_divide,
)

NORMS = ("classical", "monic", "span")
FAMILY_ALIASES = {"laguerre": "laguerre", "legendre": "legendre", "legendre_gegenbauer": "legendre",
                  "gegenbauer": "legendre", "binomial": "binomial"}


def family_name(name):
    try:
        return FAMILY_ALIASES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; expected laguerre, legendre or binomial") from None


def normalize(vec, norm):
    if norm == "classical":
        return vec
    if norm == "monic":
        return vec.monic()
    if norm == "span":
        return vec.primitive()
    raise ValueError(f"unknown normalization {norm!r}; expected one of {NORMS}")


# -- Laguerre ----------------------------------------------------------------------------


def laguerre_closed(n, k, norm="classical") -> LaurentVector:
    """sum_j C(n+k, n-j) (-1)^j x^j / j!; ``L_{-1}`` is the zero polynomial."""
    if n == -1:
        return LaurentVector()
    if n < 0 or n + k < 0:
        raise RegionError(f"L_{n}^{k} is outside n >= 0, n + k >= 0")
    vec = LaurentVector({j: Fraction(binomial_coeff(n + k, n - j) * (-1) ** j, factorial(j)) for j in range(n + 1)})
    return normalize(vec, norm)


def laguerre_monic_factor(n):
    """monic = factor * classical."""
    return (-1) ** n * factorial(n)


# -- Legendre-Gegenbauer ----------------------------------------------------------------


def _require_odd(l):
    if l % 2 == 0:
        raise ValueError(f"the Legendre-Gegenbauer index must be odd, got {l}")


def gegenbauer_leading(n, l) -> Fraction:
    """(l + 2n - 2)(l + 2n - 4) ... l / n!"""
    num = 1
    for i in range(n):
        num *= l + 2 * i
    return Fraction(num, factorial(n))


def gegenbauer_closed(n, l, norm="classical") -> LaurentVector:
    """P_n^l from its leading coefficient and the kernel recurrence.

    Imposing ``(x^2 - 1) P'' + (l + 1) x P' - n(n + l) P = 0`` gives
    ``c_e = (e+2)(e+1) c_{e+2} / ((e - n)(e + n + l))`` for e = n-2, n-4, ...
    The denominator never vanishes for odd ``l``.
    """
    _require_odd(l)
    if n == -1:
        return LaurentVector()
    if n < 0 or l < -1:
        raise RegionError(f"P_{n}^{l} is outside n >= 0, l >= -1")
    coeffs = {n: gegenbauer_leading(n, l)}
    for e in range(n - 2, -1, -2):
        coeffs[e] = Fraction((e + 2) * (e + 1), (e - n) * (e + n + l)) * coeffs[e + 2]
    return normalize(LaurentVector(coeffs), norm)


# -- binomials ----------------------------------------------------------------------------


def binomial_closed(n, m, backend="delta", norm="classical"):
    if n < 0 or m < 0:
        raise RegionError(f"W_{n},{m} needs n, m >= 0")
    if backend == "delta":
        vec = apply(hweyl.M() ** n * hweyl.D() ** m, basis_vector("delta", 0))
    elif backend == "fourier":
        cos = FourierVector({-1: Fraction(1, 2), 1: Fraction(1, 2)})
        isin = FourierVector({1: Fraction(1, 2), -1: Fraction(-1, 2)})
        vec = FourierVector({0: 1})
        for factor, times in ((cos, n), (isin, m)):
            for _ in range(times):
                vec = _fourier_product(vec, factor)
    else:
        raise ValueError(f"binomials live in the delta or fourier backend, not {backend!r}")
    return normalize(vec, norm)


def _fourier_product(a, b):
    out = {}
    for e1, c1 in a.coeffs.items():
        for e2, c2 in b.coeffs.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return FourierVector(out)


# -- tables -------------------------------------------------------------------------------


def family_member(family, first, second, norm="classical"):
    """Member at grid vertex (n, k), (n, l) or (n, m)."""
    family = family_name(family)
    if family == "laguerre":
        return laguerre_closed(first, second, norm)
    if family == "legendre":
        return gegenbauer_closed(first, second, norm)
    return binomial_closed(first, second, "delta", norm)


def grid_table(family, rows, cols, norm="span"):
    """Rows of family members as laid out in the global diagrams.

    Laguerre rows are indexed by m = n + k, Legendre rows by l, binomial rows
    by m; columns are always n.
    """
    family = family_name(family)
    out = []
    for r in rows:
        line = []
        for n in cols:
            second = r - n if family == "laguerre" else r
            line.append(family_member(family, n, second, norm))
        out.append(line)
    return out


# -- normalized arrows --------------------------------------------------------------------


def normalized_arrows(family, n, second):
    """Normalized arrows at a vertex as ``{kind: (numerator, denominator)}``.

    The normalized arrow is ``numerator / denominator``; it maps the classical
    member at the vertex to the classical member at the target.
    """
    family = family_name(family)
    x, d = weyl.X(), weyl.D()
    if family == "laguerre":
        k = second
        c = weyl.C()
        sum_n = weyl.Dn(n) if n >= 0 else weyl.WeylElement.zero()
        return {
            "E": (x * c + k, n + 1),
            "W": (-d, 1),
            "N": (-c, 1),
            "S": (sum_n, 1),
            "NE": (x * c + (n + k + 1), n + 1),
            "SW": (-(x * d) + n, n + k),
            "SE": (sum_n * (k - 1) - x, n + 1),
            "NW": (d * c, 1),
        }
    if family == "legendre":
        l = second
        r = weyl.R()
        return {
            "E": (x * (n + l) + r * d, n + 1),
            "W": (x * n - r * d, n + l - 1),
            "N": (x * d + (n + l), l),
            "S": ((r * (x * d - n) + (l - 1)) * (l - 2), (n + l - 2) * (n + l - 1)),
            "NW": (d, l),
            "SE": ((x * (l - 1) + r * d) * (l - 2), (n + 1) * (n + l - 1)),
        }
    raise ValueError("normalized arrows exist for the laguerre and legendre families only")


def verify_normalized_arrows(family, vertex):
    """Check ``den * member(target) == num * member(vertex)`` for each arrow."""
    family = family_name(family)
    grid = builtin_grid(family)
    v = tuple(vertex)
    grid.require_valid(v)
    source = family_member(family, *v)
    reports = []
    for kind, (num, den) in normalized_arrows(family, *v).items():
        w = grid.target(v, kind)
        if not grid.is_valid(w):
            continue
        lhs = family_member(family, *w) * den
        rhs = apply(num, source)
        note = "zero denominator; checked the numerator image vanishes" if den == 0 else ""
        reports.append(VerificationReport("normalized_arrow", family, v, lhs == rhs,
                                          str(lhs), str(rhs), kind, note))
    return reports


# -- identities -----------------------------------------------------------------------------

IDENTITY_IDS = {
    "laguerre": ("recurrence", "three_point_1", "three_point_2", "three_point_3", "three_point_4",
                 "sheffer", "reflection", "rodrigues"),
    "legendre": ("recurrence", "three_point_1", "three_point_2", "three_point_3", "three_point_4",
                 "rodrigues_chain_1", "rodrigues_chain_2", "rodrigues_chain_3"),
    "binomial": ("two_step_L_row0", "two_step_L_row1", "two_step_G_col0", "two_step_G_col1"),
}

# index names each family's identities are parameterized by
IDENTITY_INDICES = {"laguerre": ("n", "k"), "legendre": ("n", "l"), "binomial": ("n", "m")}


def _chain_report(family, identity, vertex, parts):
    """``parts`` is a list of vectors that must all be equal."""
    ok = all(p == parts[0] for p in parts[1:])
    found = " = ".join(str(p) for p in parts) if not ok else str(parts[0])
    return VerificationReport(f"identity:{identity}", family, vertex, ok, str(parts[0]), found)


def _laguerre_identity(identity, n, k):
    L = laguerre_closed
    x, d, c = weyl.X(), weyl.D(), weyl.C()
    v = (n, k)
    if identity == "recurrence":
        lhs = apply(-x + (2 * n + 1 + k), L(n, k))
        rhs = L(n + 1, k) * (n + 1) + L(n - 1, k) * (n + k)
        return _chain_report("laguerre", identity, v, [lhs, rhs])
    if identity == "three_point_1":
        if n < 1:
            raise RegionError("three_point_1 needs n >= 1")
        a = L(n, k)
        b = apply(x * c + (n + k + 1), L(n - 1, k + 1)) / n - L(n - 1, k + 1)
        e = L(n, k + 1) - L(n - 1, k + 1)
        return _chain_report("laguerre", identity, v, [a, b, e])
    if identity == "three_point_2":
        if n < 1:
            raise RegionError("three_point_2 needs n >= 1")
        a = L(n, k) * n
        b = apply(x * c + (n + k), L(n - 1, k))
        e = L(n - 1, k) * (n + k) - apply(x, L(n - 1, k + 1))
        return _chain_report("laguerre", identity, v, [a, b, e])
    if identity == "three_point_3":
        a = L(n, k) * k
        b = apply(x * c + k, L(n, k)) - apply(x * c, L(n, k))
        e = L(n + 1, k - 1) * (n + 1) + apply(x, L(n, k + 1))
        return _chain_report("laguerre", identity, v, [a, b, e])
    if identity == "three_point_4":
        a = apply(-x + n, L(n, k))
        b = apply(x * c, L(n, k)) + apply(-(x * d) + n, L(n, k))
        e = -apply(x, L(n, k + 1)) + L(n - 1, k) * (n + k)
        return _chain_report("laguerre", identity, v, [a, b, e])
    if identity == "sheffer":
        a = apply(d, L(n, k))
        b = -L(n - 1, k + 1)
        e = apply(c, L(n - 1, k)) if n >= 1 else LaurentVector()
        return _chain_report("laguerre", identity, v, [a, b, e])
    if identity == "reflection":
        if k < 0:
            raise RegionError("reflection needs k >= 0")
        lhs = L(n + k, -k)
        rhs = apply((-x) ** k, L(n, k)) * Fraction(factorial(n), factorial(n + k))
        return _chain_report("laguerre", identity, v, [lhs, rhs])
    if identity == "rodrigues":
        inner = apply_polynomial(c ** n, basis_vector("laurent", n + k))
        try:
            rhs = apply_polynomial(x ** (-k), inner) / factorial(n)
        except DivisibilityError as exc:
            return VerificationReport(f"identity:{identity}", "laguerre", v, False, str(L(n, k)), f"not divisible: {exc}")
        return _chain_report("laguerre", identity, v, [L(n, k), rhs])
    raise KeyError(f"unknown laguerre identity {identity!r}")


def _odd_product(l, n):
    out = 1
    for i in range(n):
        out *= l + 2 * i
    return out


def legendre_rodrigues_forms(n, l):
    """The three expressions of the Rodrigues chain, each applied to 1."""
    if l < 1:
        raise RegionError("the Rodrigues chain needs l >= 1")
    x, d, r = weyl.X(), weyl.D(), weyl.R()
    one = basis_vector("laurent", 0)
    # (a) n south-east steps from P_0^(l+2n) down to P_n^l
    vec = one
    for i in reversed(range(n)):
        op = (r * d + x * (l + 2 * i + 1)) * (l + 2 * i)
        vec = apply(op, vec) / ((n - i) * (n + l + i))
    a = vec
    half = (l - 1) // 2
    r_pow = LaurentVector({0: 1})
    r_vec = LaurentVector({2: 1, 0: -1})
    for _ in range(n + half):
        r_pow = r_pow.times(r_vec)
    lead = _odd_product(l, n)
    b = apply(d ** (n + l - 1), r_pow) * Fraction(lead, factorial(l + 2 * n - 1))
    falling = 1
    for t in range(l + n, l + 2 * n):
        falling *= t
    denom_r = LaurentVector({0: 1})
    for _ in range(half):
        denom_r = denom_r.times(r_vec)
    inner = apply(d ** n, r_pow)
    e = polynomial_divide(inner, denom_r) * Fraction(lead, falling * factorial(n))
    return a, b, e


def _legendre_identity(identity, n, l):
    P = gegenbauer_closed
    x, d, r = weyl.X(), weyl.D(), weyl.R()
    v = (n, l)
    if identity == "recurrence":
        lhs = P(n + 1, l) * (n + 1) + P(n - 1, l) * (n + l - 1)
        rhs = apply(x * (2 * n + l), P(n, l))
        return _chain_report("legendre", identity, v, [lhs, rhs])
    if identity == "three_point_1":
        a = P(n, l) * (n + l)
        b = apply(x * d + (n + l), P(n, l)) - apply(x * d, P(n, l))
        e = P(n, l + 2) * l - apply(x, P(n - 1, l + 2)) * l
        return _chain_report("legendre", identity, v, [a, b, e])
    if identity == "three_point_2":
        a = apply(x * n, P(n, l))
        b = apply(x * n - r * d, P(n, l)) + apply(r * d, P(n, l))
        e = P(n - 1, l) * (n + l - 1) + apply(r, P(n - 1, l + 2)) * l
        return _chain_report("legendre", identity, v, [a, b, e])
    if identity == "three_point_3":
        a = apply(x * (n + l), P(n, l))
        b = apply(x * (n + l) + r * d, P(n, l)) - apply(r * d, P(n, l))
        e = P(n + 1, l) * (n + 1) - apply(r, P(n - 1, l + 2)) * l
        return _chain_report("legendre", identity, v, [a, b, e])
    if identity == "three_point_4":
        a = apply(x * ((l - 1) * (l - 2)), P(n, l))
        b = apply((x * (l - 1) + r * d) * (l - 2), P(n, l)) - apply((r * d) * (l - 2), P(n, l))
        e = P(n + 1, l - 2) * ((n + 1) * (n + l - 1)) - apply(r, P(n - 1, l + 2)) * (l * (l - 2))
        return _chain_report("legendre", identity, v, [a, b, e])
    if identity.startswith("rodrigues_chain_"):
        a, b, e = legendre_rodrigues_forms(n, l)
        pairs = {"rodrigues_chain_1": [P(n, l), a], "rodrigues_chain_2": [a, b], "rodrigues_chain_3": [b, e]}
        if identity not in pairs:
            raise KeyError(f"unknown legendre identity {identity!r}")
        return _chain_report("legendre", identity, v, pairs[identity])
    raise KeyError(f"unknown legendre identity {identity!r}")


def _binomial_identity(identity, n, m):
    grid = builtin_grid("binomial")
    X = hweyl.X()
    if identity == "two_step_L_row0":
        src, dst, ops, quad = (n, 0), (n - 2, 0), (hweyl.L(n), hweyl.L(n - 1)), X * X * -1 + n * n
    elif identity == "two_step_L_row1":
        src, dst, ops, quad = (n, 1), (n - 2, 1), (hweyl.L(n + 1), hweyl.L(n)), X * X * -1 + (n + 1) ** 2
    elif identity == "two_step_G_col0":
        src, dst, ops, quad = (0, m), (0, m - 2), (hweyl.G(m), hweyl.G(m - 1)), X * X - m * m
    elif identity == "two_step_G_col1":
        src, dst, ops, quad = (1, m), (1, m - 2), (hweyl.G(m + 1), hweyl.G(m)), X * X - (m + 1) ** 2
    else:
        raise KeyError(f"unknown binomial identity {identity!r}")
    grid.require_valid(src)
    grid.require_valid(dst)
    w = binomial_closed(*src)
    two_step = apply(ops[1], apply(ops[0], w))
    quadratic = apply(quad, w)
    in_target = grid.vertex_space(dst).contains(quadratic)
    ok = two_step == quadratic and in_target
    note = "" if in_target else f"image not in W{dst}"
    return VerificationReport(f"identity:{identity}", "binomial", src, ok, str(quadratic), str(two_step), note=note)


def binomial_kernel_check(n):
    """The row-zero binomial W_n0 is annihilated by G_n."""
    w = binomial_closed(n, 0)
    image = apply(hweyl.G(n), w)
    return VerificationReport("identity:kernel_G_row0", "binomial", (n, 0), image.is_zero(), "0", str(image))


def verify_identity(family, identity, **indices):
    """Run one named identity at the given indices (``n`` plus ``k``, ``l`` or ``m``)."""
    family = family_name(family)
    names = IDENTITY_INDICES[family]
    if identity not in IDENTITY_IDS[family]:
        raise KeyError(f"unknown {family} identity {identity!r}; expected one of {IDENTITY_IDS[family]}")
    if family == "binomial":
        needed = ("m",) if "G_" in identity else ("n",)
    else:
        needed = names
    missing = [nm for nm in needed if nm not in indices]
    if missing:
        raise ValueError(f"{family} {identity} needs indices {', '.join(missing)}")
    first = indices.get("n", 0)
    second = indices.get(names[1], 0)
    if family == "laguerre":
        return _laguerre_identity(identity, first, second)
    if family == "legendre":
        return _legendre_identity(identity, first, second)
    return _binomial_identity(identity, first, second)
