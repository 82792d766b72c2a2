"""Command-line interface.

Every library operation is one subcommand.  Multi-indices are written as
comma lists (``2,1``); symbolic results print in the expression grammar of
:mod:`polykay.symbolic`, numeric results with 7 significant digits unless
``--precise`` is given.

Exit status is 0 on success, 1 for usage errors and 2 when the operation
itself fails.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import re
import sys
from fractions import Fraction
from math import factorial
from typing import Sequence

import numpy as np

from . import bellpoly, estimators, faadibruno
from .partitions import (
    Partition,
    as_multi_index,
    compositions,
    integer_partitions,
    multi_index_partitions,
    partition_count_coefficient,
)
from .symbolic import Assignments, Indeterminate, Polynomial, evaluate_fully, format_expression, parse_assignments

__all__ = ["load_sample", "main", "run"]


class UsageError(Exception):
    """Bad command-line arguments (exit status 1)."""


def _multi_index(text: str) -> tuple[int, ...]:
    try:
        return as_multi_index(int(x) for x in text.replace(" ", "").strip("()[]").split(","))
    except ValueError as exc:
        raise UsageError(f"not a multi-index: {text!r} ({exc})") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None
    if value < 1:
        raise UsageError(f"expected a positive integer, got {value}")
    return value


def _order_list(text: str) -> list[tuple[int, ...]]:
    """Parse ``"(2,1);(1,0)"`` or ``"2,1;1,0"`` into a list of multi-indices."""
    chunks = [c for c in re.split(r"[;\s]+|\)\s*,?\s*\(", text.strip()) if c.strip("()")]
    if not chunks:
        raise UsageError(f"no orders in {text!r}")
    return [_multi_index(c) for c in chunks]


def _partition(text: str) -> Partition:
    """Parse ``"(1,0)(1,1)"``, ``"( 1 0 )( 1 1 )"`` or ``"1,0;1,1"`` as a partition."""
    if "(" in text:
        groups = re.findall(r"\(([^()]*)\)", text)
    else:
        groups = text.split(";")
    columns = []
    for g in groups:
        parts = [p for p in re.split(r"[,\s]+", g.strip()) if p]
        if not parts:
            continue
        try:
            columns.append(tuple(int(p) for p in parts))
        except ValueError:
            raise UsageError(f"not a partition: {text!r}") from None
    if not columns:
        raise UsageError(f"not a partition: {text!r}")
    try:
        return Partition.from_columns(columns)
    except ValueError as exc:
        raise UsageError(f"not a partition: {text!r} ({exc})") from None


def load_sample(path: str, columns: str | None = None, no_header: bool = False) -> np.ndarray:
    """Read comma-separated numeric rows into an ``(N, m)`` array.

    Parameters
    ----------
    path : str
        CSV file; blank lines are skipped.
    columns : str, optional
        Comma list of columns to keep, as 1-based positions or header names.
    no_header : bool
        Treat every row as data.  Otherwise a first row holding any
        non-numeric cell is taken as a header.

    Raises
    ------
    ValueError
        On an empty file, ragged rows or a non-numeric cell; the message
        gives the row and column (1-based).
    """
    with open(path, newline="") as fh:
        rows = [(n, [c.strip() for c in row]) for n, row in enumerate(csv.reader(fh), start=1)
                if row and any(c.strip() for c in row)]
    if not rows:
        raise ValueError(f"{path}: no data")
    header = None
    if not no_header:
        first = rows[0][1]
        if any(not _is_number(c) for c in first):
            header = first
            rows = rows[1:]
            if not rows:
                raise ValueError(f"{path}: header but no data")
    width = len(rows[0][1])
    values = []
    for n, row in rows:
        if len(row) != width:
            raise ValueError(f"{path}: row {n} has {len(row)} columns, expected {width}")
        out = []
        for col, cell in enumerate(row, start=1):
            try:
                out.append(float(cell))
            except ValueError:
                raise ValueError(f"{path}: row {n}, column {col}: not a number: {cell!r}") from None
        values.append(out)
    data = np.array(values, dtype=float)
    if columns:
        keep = []
        for name in columns.split(","):
            name = name.strip()
            if name.isdigit():
                idx = int(name) - 1
            elif header is not None and name in header:
                idx = header.index(name)
            else:
                raise ValueError(f"{path}: unknown column {name!r}")
            if not 0 <= idx < width:
                raise ValueError(f"{path}: column {name} out of range 1..{width}")
            keep.append(idx)
        data = data[:, keep]
    return data


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _format_number(value, precise: bool) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        if precise:
            return str(value)
        value = float(value)
    if isinstance(value, int):
        return str(value)
    if precise:
        return repr(float(value))
    return f"{value:.7g}"


def _show(poly: Polynomial, args, prefix: Fraction | None = None, parenthesize: bool = True) -> str:
    text = format_expression(poly, prefix=prefix, parenthesize=parenthesize)
    if args.paper_style:
        if text.startswith("-"):
            text = " - " + text[1:]
        text = "[1] " + text
    return text


def _show_value(value, args) -> str:
    if isinstance(value, Polynomial):
        return _show(value, args)
    return _format_number(value, args.precise)


def _compact_columns(columns) -> str:
    return "".join("( " + " ".join(map(str, c)) + " )" for c in columns)


# subcommand handlers: each returns the lines to print

def _cmd_mkmset(args):
    out = []
    for partition, count in multi_index_partitions(_multi_index(args.index)):
        if args.compact:
            out.append(f"[{partition.compact()},  {count} ]")
        else:
            out.append(f"{[list(c) for c in partition.columns]} {count}")
    return out


def _cmd_intpart(args):
    parts = integer_partitions(_positive_int(args.n))
    if args.compact:
        return ["[ " + " ".join(map(str, p)) + " ]" for p in parts]
    return [" ".join(map(str, p)) for p in parts]


def _cmd_mkt(args):
    tuples = compositions(_multi_index(args.index), _positive_int(args.n))
    if args.compact:
        return [f"[{_compact_columns(t)}]" for t in tuples]
    return [" ".join(str(list(c)) for c in t) for t in tuples]


def _cmd_countp(args):
    return [str(partition_count_coefficient(_partition(args.partition)))]


def _cmd_mfb(args):
    spec = faadibruno.FdBSpec(_multi_index(args.index), _positive_int(args.n))
    if args.eval is not None:
        return [_show_value(faadibruno.e_mfb(spec, parse_assignments(args.eval), max_weight=args.max_weight), args)]
    return [_show(faadibruno.mfb(spec, max_weight=args.max_weight), args)]


def _cmd_gcbell(args):
    spec = faadibruno.FdBSpec(_multi_index(args.index), _positive_int(args.n), args.collapse)
    if args.eval is not None:
        value = faadibruno.e_gc_bell(spec, parse_assignments(args.eval), max_weight=args.max_weight)
        return [_show_value(value, args)]
    return [_show(faadibruno.gc_bell(spec, max_weight=args.max_weight), args)]


def _cmd_ebell(args):
    i = _positive_int(args.i)
    j = None if args.j is None else _positive_int(args.j)
    if args.eval is not None:
        try:
            seq = [Fraction(v.strip()) for v in args.eval.split(",") if v.strip()] or None
        except ValueError:
            raise UsageError(f"not a list of numbers: {args.eval!r}") from None
        return [_show_value(bellpoly.e_bell_eval(i, j, seq), args)]
    poly = bellpoly.complete_e_bell(i) if j is None else bellpoly.partial_e_bell(i, j)
    return [_show(poly, args)]


def _cmd_obell(args):
    i = _positive_int(args.i)
    poly = bellpoly.complete_o_bell(i) if args.j is None else bellpoly.partial_o_bell(i, _positive_int(args.j))
    return [_show(poly, args, prefix=Fraction(1, factorial(i)))]


def _cmd_gppart(args):
    return [_show(bellpoly.general_partition_poly(_positive_int(args.i)), args)]


def _cmd_ppart(args):
    i = _positive_int(args.i)
    poly = bellpoly.partition_poly(i)
    if args.at is None:
        return [_show(poly, args, parenthesize=False)]
    if args.recipe:
        return [_format_number(bellpoly.partition_poly_recipe_value(i, args.at), args.precise)]
    try:
        y = Fraction(args.at)
    except ValueError:
        raise UsageError(f"not a number: {args.at!r}") from None
    value = evaluate_fully(poly, Assignments({Indeterminate("y"): y}))
    return [_format_number(value, args.precise)]


def _cmd_mom2cum(args):
    return [_show(bellpoly.mom2cum(_multi_index(args.index)), args)]


def _cmd_cum2mom(args):
    return [_show(bellpoly.cum2mom(_multi_index(args.index)), args)]


def _cmd_e2p(args):
    i = _positive_int(args.i)
    return [_show(bellpoly.elementary_to_powersum(i), args, prefix=Fraction(1, factorial(i)))]


def _cmd_stirling2(args):
    try:
        i, j = int(args.i), int(args.j)
    except ValueError:
        raise UsageError("stirling2 needs two integers") from None
    return [str(bellpoly.stirling2(i, j))]


def _data(args) -> np.ndarray:
    if args.data is None:
        raise UsageError("--data FILE is required")
    return load_sample(args.data, args.columns, args.no_header)


def _cmd_nks(args):
    return [_format_number(estimators.k_statistic(_positive_int(args.i), _data(args)), args.precise)]


def _cmd_nkm(args):
    return [_format_number(estimators.multivariate_k_statistic(_multi_index(args.index), _data(args)), args.precise)]


def _cmd_nps(args):
    orders = [_positive_int(v) for v in args.orders.split(",") if v.strip()]
    return [_format_number(estimators.polykay(orders, _data(args)), args.precise)]


def _cmd_npm(args):
    return [_format_number(estimators.multivariate_polykay(_order_list(args.orders), _data(args)), args.precise)]


def _cmd_npolyk(args):
    orders = _order_list(args.orders)
    data = _data(args)
    if data.shape[1] == 1 and all(len(o) == 1 for o in orders):
        request = [o[0] for o in orders] if len(orders) > 1 else orders[0][0]
    else:
        request = orders
    return [_format_number(estimators.polyk(request, data), args.precise)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polykay",
        description="Multi-index partitions, Faa di Bruno expansions, Bell polynomials, "
                    "k-statistics and polykays.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precise", action="store_true", help="print numbers at full precision")
    common.add_argument("--paper-style", action="store_true",
                        help="prefix expressions with '[1] ' and print a leading minus as ' - '")
    common.add_argument("--max-weight", type=int, default=None,
                        help=f"largest order weight to expand (default {faadibruno.DEFAULT_MAX_WEIGHT})")
    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--data", metavar="FILE", help="comma-separated sample, one observation per row")
    data.add_argument("--columns", help="columns to use, as 1-based positions or header names")
    data.add_argument("--no-header", action="store_true", help="the first row is data, never a header")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name, handler, help, parents=(common,)):
        p = sub.add_parser(name, help=help, parents=list(parents))
        p.set_defaults(handler=handler)
        return p

    p = add("mkmset", _cmd_mkmset, "partitions of a multi-index with their counts")
    p.add_argument("index")
    p.add_argument("--compact", action="store_true")
    p = add("intpart", _cmd_intpart, "partitions of an integer")
    p.add_argument("n")
    p.add_argument("--compact", action="store_true")
    p = add("mkt", _cmd_mkt, "compositions of a multi-index into N parts")
    p.add_argument("index")
    p.add_argument("n")
    p.add_argument("--compact", action="store_true")
    p = add("countp", _cmd_countp, "number of set partitions collapsing onto a partition")
    p.add_argument("partition", help='columns, e.g. "(1,0)(1,1)" or "1,0;1,1"')
    p = add("mfb", _cmd_mfb, "multivariate Faa di Bruno expansion")
    p.add_argument("index")
    p.add_argument("n")
    p.add_argument("--eval", metavar="ASSIGNMENTS")
    p = add("gcbell", _cmd_gcbell, "generalized complete exponential Bell polynomial")
    p.add_argument("index")
    p.add_argument("n")
    p.add_argument("--collapse", action="store_true", help="all inner sequences are equal")
    p.add_argument("--eval", metavar="ASSIGNMENTS")
    p = add("ebell", _cmd_ebell, "exponential Bell polynomial (partial when J is given)")
    p.add_argument("i")
    p.add_argument("j", nargs="?")
    p.add_argument("--eval", metavar="V1,V2,...", help="evaluate at these values (default all ones if empty)")
    p = add("obell", _cmd_obell, "ordinary Bell polynomial (partial when J is given)")
    p.add_argument("i")
    p.add_argument("j", nargs="?")
    p = add("gppart", _cmd_gppart, "general partition polynomial")
    p.add_argument("i")
    p = add("ppart", _cmd_ppart, "partition polynomial")
    p.add_argument("i")
    p.add_argument("--at", metavar="Y", help="evaluate at y = Y")
    p.add_argument("--recipe", action="store_true",
                   help="with --at, evaluate by editing the printed text and running it as arithmetic")
    for name, handler, what in (("mom2cum", _cmd_mom2cum, "moment in terms of cumulants"),
                                ("cum2mom", _cmd_cum2mom, "cumulant in terms of moments")):
        p = add(name, handler, what)
        p.add_argument("index")
    p = add("e2p", _cmd_e2p, "elementary symmetric polynomial in power sums")
    p.add_argument("i")
    p = add("stirling2", _cmd_stirling2, "Stirling number of the second kind")
    p.add_argument("i")
    p.add_argument("j")
    p = add("nks", _cmd_nks, "k-statistic", (common, data))
    p.add_argument("i")
    p = add("nkm", _cmd_nkm, "multivariate k-statistic", (common, data))
    p.add_argument("index")
    p = add("nps", _cmd_nps, "polykay", (common, data))
    p.add_argument("orders", help="comma list, e.g. 2,2")
    p = add("npm", _cmd_npm, "multivariate polykay", (common, data))
    p.add_argument("orders", help='semicolon list of multi-indices, e.g. "(2,1);(1,0)"')
    p = add("npolyk", _cmd_npolyk, "k-statistic or polykay, chosen from the request", (common, data))
    p.add_argument("orders", help='one order or a semicolon list, e.g. "2", "2;2", "(2,1);(1,0)"')
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        lines = args.handler(args)
    except UsageError as exc:
        print(f"polykay {args.command}: {exc}", file=stderr)
        return 1
    except (ValueError, KeyError, ArithmeticError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"polykay {args.command}: {message}", file=stderr)
        return 2
    for line in lines:
        print(line, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
