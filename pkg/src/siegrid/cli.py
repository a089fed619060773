"""Command-line interface.

Subcommands::

    nf EXPR                    normal form of an operator expression
    apply EXPR VECTOR          apply an operator to a vector
    verify GRID                run the SIE verifier over a range of vertices
    table FAMILY               print a table of family members
    identity FAMILY ID         check a named identity

Exit status is 0 when everything passes, 1 on a failed verification and 2
on a usage error.  Options whose value starts with a minus sign need the
``--opt=value`` form, e.g. ``--l-set=-1,1,3``.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import families, grids
from .cofactors import check_all_cofactors
from .errors import SiegridError
from .exact import format_rational
from .parser import parse, parse_vector
from .reps import apply, apply_polynomial, operator_matrix

CHECKS = ("arrow", "scalar", "narrow", "wide", "ladder", "random", "cofactor")
DEFAULT_L_SET = (-1, 1, 3, 5, 7)


def _int_range(text):
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer range like 0..5, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return (lo, hi)


def _int_list(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _check_list(text):
    items = tuple(t.strip() for t in text.split(",") if t.strip())
    unknown = [t for t in items if t not in CHECKS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    return items


def build_parser():
    p = argparse.ArgumentParser(prog="siegrid", description="Verify scalar circuit identities on polynomial grids.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("text", "latex", "json"), default="text")
        sp.add_argument("--json", action="store_true", help="same as --format json")

    nf = sub.add_parser("nf", help="print the normal form of an expression")
    nf.add_argument("expr")
    nf.add_argument("--algebra", choices=("weyl", "hweyl"), default="weyl")
    nf.add_argument("--window", type=_int_range, help="also print the operator matrix on this window")
    add_format(nf)

    ap = sub.add_parser("apply", help="apply an expression to a vector")
    ap.add_argument("expr")
    ap.add_argument("vector")
    ap.add_argument("--algebra", choices=("weyl", "hweyl"), default=None,
                    help="defaults to weyl for x-vectors and hweyl otherwise")
    ap.add_argument("--polynomial", action="store_true", help="fail unless the result is a polynomial")
    add_format(ap)

    ve = sub.add_parser("verify", help="run grid checks")
    ve.add_argument("grid", choices=grids.GRID_NAMES)
    ve.add_argument("--n-max", type=int, default=5)
    ve.add_argument("--k-max", type=int, default=5)
    ve.add_argument("--l-set", type=_int_list, default=DEFAULT_L_SET)
    ve.add_argument("--m-max", type=int, default=5)
    ve.add_argument("--checks", type=_check_list, default=CHECKS)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--walks", type=int, default=100, help="random walks for the random check")
    ve.add_argument("--max-len", type=int, default=8)
    ve.add_argument("--quiet", action="store_true", help="print failures and the summary only")
    add_format(ve)

    ta = sub.add_parser("table", help="print a table of family members")
    ta.add_argument("family", choices=sorted(families.FAMILY_ALIASES))
    ta.add_argument("--rows", type=_int_range)
    ta.add_argument("--cols", type=_int_range)
    ta.add_argument("--l-set", type=_int_list)
    ta.add_argument("--norm", choices=families.NORMS, default="span")
    add_format(ta)

    idn = sub.add_parser("identity", help="check a named identity")
    idn.add_argument("family", choices=sorted(families.FAMILY_ALIASES))
    idn.add_argument("id")
    for name in ("n", "k", "l", "m"):
        idn.add_argument(f"--{name}", type=int)
    idn.add_argument("--n-max", type=int, default=5)
    idn.add_argument("--k-max", type=int, default=4)
    idn.add_argument("--l-set", type=_int_list, default=(1, 3, 5))
    idn.add_argument("--m-max", type=int, default=5)
    add_format(idn)
    return p


def _fmt_of(args):
    return "json" if args.json else args.format


def _emit_element(el, fmt):
    if fmt == "json":
        return el.to_json()
    if fmt == "latex":
        return el.latex()
    return str(el)


def _emit_vector(vec, fmt):
    if fmt == "json":
        return json.dumps(vec.to_json_obj())
    if fmt == "latex":
        return vec.latex()
    return str(vec)


def cmd_nf(args, out):
    el = parse(args.expr, args.algebra)
    fmt = _fmt_of(args)
    out.write(_emit_element(el, fmt) + "\n")
    if args.window:
        backend = "laurent" if args.algebra == "weyl" else "delta"
        mat = operator_matrix(el, args.window, None, backend)
        if fmt == "json":
            out.write(json.dumps([[format_rational(c) for c in row] for row in mat]) + "\n")
        else:
            for row in mat:
                out.write(" ".join(format_rational(c) for c in row) + "\n")
    return 0


def cmd_apply(args, out):
    vec = parse_vector(args.vector)
    algebra = args.algebra or ("weyl" if vec.backend == "laurent" else "hweyl")
    el = parse(args.expr, algebra)
    result = apply_polynomial(el, vec) if args.polynomial else apply(el, vec)
    out.write(_emit_vector(result, _fmt_of(args)) + "\n")
    return 0


def verification_reports(grid_name, n_max=5, k_max=5, l_set=DEFAULT_L_SET, m_max=5,
                         checks=CHECKS, seed=0, walks=100, max_len=8):
    """All requested reports for one grid, in a stable order."""
    g = grids.builtin_grid(grid_name)
    if grid_name == "laguerre":
        region = g.region(range(n_max + 1), range(-n_max, k_max + 1))
    elif grid_name == "legendre":
        region = g.region(range(n_max + 1), sorted(l_set))
    else:
        region = g.region(range(n_max + 1), range(m_max + 1))
    in_region = set(region)
    reports = []
    if "arrow" in checks:
        for v in region:
            for kind in g.kinds:
                if g.target(v, kind) in in_region:
                    reports.append(grids.check_arrow_well_defined(g, v, kind))
    if "scalar" in checks:
        reports.extend(grids.check_table(g, region))
    if "narrow" in checks:
        for v in region:
            for kind in g.kinds:
                if g.target(v, kind) in in_region:
                    reports.append(grids.check_narrow_scalars_equal(g, v, kind))
    if "wide" in checks:
        for v in region:
            c10 = g.target(v, "E")
            corners = (c10, g.target(v, "N"), g.target(c10, "N"))
            if all(c in in_region for c in corners):
                reports.extend(grids.check_wide_lemma(g, v))
    if "ladder" in checks:
        for kind in g.ladders.values():
            reports.extend(grids.check_ladder_commutator(g, kind, "symbolic", region))
    if "random" in checks and region:
        center = region[len(region) // 2]
        reports.extend(grids.random_circuit_scan(g, center, max_len, walks, seed))
    if "cofactor" in checks:
        reports.extend(check_all_cofactors(grid_name, range(n_max + 1)))
    return sorted(reports, key=lambda r: r.sort_key())


def _write_reports(reports, fmt, out, quiet=False):
    failed = sum(not r.passed for r in reports)
    for r in reports:
        if quiet and r.passed:
            continue
        out.write((r.to_json() if fmt == "json" else r.to_text()) + "\n")
    if fmt != "json":
        out.write(f"summary: {len(reports)} checks, {failed} failed\n")
    return 1 if failed else 0


def cmd_verify(args, out):
    reports = verification_reports(args.grid, args.n_max, args.k_max, args.l_set, args.m_max,
                                   args.checks, args.seed, args.walks, args.max_len)
    return _write_reports(reports, _fmt_of(args), out, args.quiet)


def _latex_table(family, rows, cols, table):
    head = " & ".join(f"n={n}" for n in cols)
    lines = [f"\\begin{{tabular}}{{r|{'l' * len(cols)}}}", f" & {head} \\\\", "\\hline"]
    for r, line in zip(rows, table):
        cells = " & ".join(f"${v.latex()}$" for v in line)
        lines.append(f"{r} & {cells} \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def cmd_table(args, out):
    family = families.family_name(args.family)
    defaults = {"laguerre": ((0, 7), (0, 5)), "legendre": (None, (0, 5)), "binomial": ((0, 4), (0, 4))}
    row_range, col_range = defaults[family]
    col_range = args.cols or col_range
    cols = list(range(col_range[0], col_range[1] + 1))
    if family == "legendre":
        if args.rows:
            rows = [r for r in range(args.rows[0], args.rows[1] + 1) if r % 2]
        else:
            rows = list(args.l_set or (-1, 1, 3, 5, 7, 9, 11, 13))
    else:
        row_range = args.rows or row_range
        rows = list(range(row_range[0], row_range[1] + 1))
    table = families.grid_table(family, rows, cols, args.norm)
    fmt = _fmt_of(args)
    row_name = {"laguerre": "m", "legendre": "l", "binomial": "m"}[family]
    if fmt == "json":
        payload = {"family": family, "norm": args.norm, "row_index": row_name, "cols": cols,
                   "rows": [{"index": r, "cells": [str(v) for v in line]} for r, line in zip(rows, table)]}
        out.write(json.dumps(payload) + "\n")
    elif fmt == "latex":
        out.write(_latex_table(family, rows, cols, table) + "\n")
    else:
        for r, line in zip(rows, table):
            out.write(f"{row_name}={r}: " + " | ".join(str(v) for v in line) + "\n")
    return 0


def _identity_points(family, identity, args):
    given = {nm: getattr(args, nm) for nm in ("n", "k", "l", "m") if getattr(args, nm) is not None}
    if family == "binomial":
        if "G_" in identity:
            ms = [given["m"]] if "m" in given else range(2, args.m_max + 1)
            return [dict(m=m) for m in ms], "m" in given
        ns = [given["n"]] if "n" in given else range(2, args.n_max + 1)
        return [dict(n=n) for n in ns], "n" in given
    second = "k" if family == "laguerre" else "l"
    ns = [given["n"]] if "n" in given else range(args.n_max + 1)
    if second in given:
        ss = [given[second]]
    else:
        ss = range(args.k_max + 1) if family == "laguerre" else args.l_set
    explicit = "n" in given and second in given
    return [{"n": n, second: s} for n in ns for s in ss], explicit


def cmd_identity(args, out):
    family = families.family_name(args.family)
    points, explicit = _identity_points(family, args.id, args)
    reports = []
    for idx in points:
        try:
            reports.append(families.verify_identity(family, args.id, **idx))
        except SiegridError:
            if explicit:
                raise
    if not reports:
        raise SiegridError(f"no index in range is valid for {family} {args.id}")
    return _write_reports(reports, _fmt_of(args), out)


COMMANDS = {"nf": cmd_nf, "apply": cmd_apply, "verify": cmd_verify, "table": cmd_table, "identity": cmd_identity}


def run_cli(argv=None, out=None, err=None):
    """Run the CLI and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        # argparse prints usage and help itself; route that to the given streams
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (SiegridError, KeyError, ValueError, TypeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"siegrid: error: {msg}\n")
        return 2


def main():
    sys.exit(run_cli())
