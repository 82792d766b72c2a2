"""Classical polynomial families read off the univariate Faa di Bruno expansion.

Every family here starts from ``h_i = sum over partitions of i of
d * f[l] * g[1]^r_1 g[2]^r_2 ...`` and rewrites the ``f`` and ``g``
indeterminates: Bell polynomials put ``y_s`` in place of ``g[s]`` and
constants in place of ``f[l]``, moments and cumulants swap ``g`` for ``k``
or ``m``, and so on.
"""

from __future__ import annotations

import ast
import operator
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .faadibruno import mfb
from .partitions import as_multi_index
from .symbolic import Indeterminate, Polynomial, format_expression

__all__ = [
    "bell_number",
    "complete_e_bell",
    "complete_o_bell",
    "cum2mom",
    "e_bell_eval",
    "elementary_to_powersum",
    "general_partition_poly",
    "mom2cum",
    "partial_e_bell",
    "partial_o_bell",
    "partition_poly",
    "partition_poly_recipe_value",
    "stirling2",
    "string_recipe_eval",
]


def _positive(n, what="order") -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"the {what} must be a positive integer, got {n!r}")
    return int(n)


@lru_cache(maxsize=None)
def _univariate_terms(i: int) -> tuple[tuple[Fraction, int, tuple[tuple[int, int], ...]], ...]:
    """``(d, length, ((part, multiplicity), ...))`` for each term of ``h_i``."""
    out = []
    for coeff, mono in mfb((i,), 1, max_weight=i).terms():
        length = None
        parts = []
        for ind, power in mono:
            if ind.family == "f":
                length = ind.subscript[0]
            else:
                parts.append((ind.subscript[0], power))
        out.append((coeff, length, tuple(parts)))
    return tuple(out)


def _y(s: int) -> Indeterminate:
    return Indeterminate("y", s)


def stirling2(i: int, j: int) -> int:
    """Stirling number of the second kind ``S(i, j)``; zero when ``j > i``."""
    for v in (i, j):
        if isinstance(v, bool) or int(v) != v or v < 0:
            raise ValueError(f"Stirling numbers need non-negative integers, got {v!r}")
    i, j = int(i), int(j)
    if j > i:
        return 0
    row = [1]  # S(0, 0)
    for n in range(1, i + 1):
        nxt = [0] * (n + 1)
        for k in range(1, n + 1):
            nxt[k] = k * (row[k] if k < len(row) else 0) + row[k - 1]
        row = nxt
    return row[j]


def bell_number(n: int) -> int:
    return sum(stirling2(n, j) for j in range(n + 1))


def partial_e_bell(i: int, j: int) -> Polynomial:
    """Partial exponential Bell polynomial ``B_{i,j}(y1, ..., y_{i-j+1})``.

    >>> print(partial_e_bell(5, 3))
    10(y1^2)(y3) + 15(y1)(y2^2)
    """
    i = _positive(i)
    j = _positive(j, "number of parts")
    if j > i:
        return Polynomial()
    out = Polynomial()
    for d, length, parts in _univariate_terms(i):
        if length == j:
            out = out + Polynomial.from_factors(d, {_y(s): r for s, r in parts})
    return out


def complete_e_bell(i: int) -> Polynomial:
    i = _positive(i)
    out = Polynomial()
    for d, _, parts in _univariate_terms(i):
        out = out + Polynomial.from_factors(d, {_y(s): r for s, r in parts})
    return out


def partial_o_bell(i: int, j: int) -> Polynomial:
    """Partial ordinary Bell polynomial ``j!/i! B_{i,j}(1! y1, 2! y2, ...)``.

    Print it with ``format_expression(p, prefix=Fraction(1, factorial(i)))``
    for the ``1/120( ... )`` display.
    """
    i = _positive(i)
    j = _positive(j, "number of parts")
    if j > i:
        return Polynomial()
    scale = Fraction(factorial(j), factorial(i))
    out = Polynomial()
    for d, length, parts in _univariate_terms(i):
        if length != j:
            continue
        weight = d * scale
        for s, r in parts:
            weight *= factorial(s) ** r
        out = out + Polynomial.from_factors(weight, {_y(s): r for s, r in parts})
    return out


def complete_o_bell(i: int) -> Polynomial:
    """Complete ordinary Bell polynomial, the sum of ``partial_o_bell(i, j)``.

    Its coefficients count compositions of ``i``: it is the ``i``-th
    coefficient of ``1 / (1 - y1 z - y2 z^2 - ...)``.
    """
    i = _positive(i)
    out = Polynomial()
    for j in range(1, i + 1):
        out = out + partial_o_bell(i, j)
    return out


def general_partition_poly(i: int) -> Polynomial:
    """General partition polynomial ``G_i(a_1, ..., a_i; y_1, ..., y_i)``.

    >>> print(general_partition_poly(3))
    a3(y1^3) + 3a2(y1)(y2) + a1(y3)
    """
    i = _positive(i)
    out = Polynomial()
    for d, length, parts in _univariate_terms(i):
        factors = {_y(s): r for s, r in parts}
        factors[Indeterminate("a", length)] = 1
        out = out + Polynomial.from_factors(d, factors)
    return out


def e_bell_eval(i: int, j: int | None = None, seq: Sequence | None = None) -> Fraction:
    """Exponential Bell polynomial at numeric arguments.

    ``B_{i,j}(seq)`` when ``j`` is given, otherwise the complete polynomial.
    ``seq`` defaults to all ones, giving Stirling numbers of the second kind
    and Bell numbers.  Other classical sequences:

    ======================  ==========================
    ``seq``                 ``B_{i,j}(seq)``
    ======================  ==========================
    ``1!, 2!, 3!, ...``     Lah numbers
    ``0!, -1!, 2!, ...``    Stirling numbers, 1st kind
    ``0!, 1!, 2!, ...``     unsigned version of those
    ``1, 2, 3, ...``        idempotent numbers
    ======================  ==========================
    """
    i = _positive(i)
    if j is not None:
        j = _positive(j, "number of parts")
        if j > i:
            return Fraction(0)
    needed = i if j is None else i - j + 1
    if seq is None:
        seq = [1] * needed
    seq = [Fraction(v) if not isinstance(v, float) else Fraction(v) for v in seq]
    if len(seq) < needed:
        raise ValueError(f"need at least {needed} values, got {len(seq)}")
    total = Fraction(0)
    for d, length, parts in _univariate_terms(i):
        if j is not None and length != j:
            continue
        term = Fraction(d)
        for s, r in parts:
            term *= seq[s - 1] ** r
        total += term
    return total


def _multi_terms(index) -> Iterator[tuple[Fraction, int, dict]]:
    index = as_multi_index(index)
    poly = mfb(index, 1, max_weight=sum(index))
    for coeff, mono in poly.terms():
        length = None
        gs = {}
        for ind, power in mono:
            if ind.family == "f":
                length = ind.subscript[0]
            else:
                gs[ind.subscript] = power
        yield coeff, length, gs


def mom2cum(index) -> Polynomial:
    """Joint moment ``m_i`` as a polynomial in joint cumulants ``k[...]``.

    >>> print(mom2cum(3))
    k[1]^3 + 3k[1]k[2] + k[3]
    """
    out = Polynomial()
    for d, _, gs in _multi_terms(index):
        out = out + Polynomial.from_factors(d, {Indeterminate("k", None, s): r for s, r in gs.items()})
    return out


def cum2mom(index) -> Polynomial:
    """Joint cumulant ``k_i`` as a polynomial in joint moments ``m[...]``."""
    out = Polynomial()
    for d, length, gs in _multi_terms(index):
        weight = d * (-1) ** (length - 1) * factorial(length - 1)
        out = out + Polynomial.from_factors(weight, {Indeterminate("m", None, s): r for s, r in gs.items()})
    return out


def partition_poly(i: int) -> Polynomial:
    """Partition polynomial ``F_i(y)``: the coefficient of ``y^j`` is the
    number of partitions of ``i`` into ``j`` parts.

    Obtained from ``h_i`` with ``f[j] = 1/i!`` and each ``g[s]^r`` replaced
    by ``(s!)^r r! y^r``.
    """
    i = _positive(i)
    y = Indeterminate("y")
    out = Polynomial()
    for d, _, parts in _univariate_terms(i):
        weight = Fraction(d, factorial(i))
        power = 0
        for s, r in parts:
            weight *= factorial(s) ** r * factorial(r)
            power += r
        out = out + Polynomial.from_factors(weight, {y: power})
    return out


def elementary_to_powersum(i: int) -> Polynomial:
    """Elementary symmetric polynomial ``e_i`` in terms of power sums ``p_s``.

    Uses ``e_i = (-1)^i / i! * G_i(1, ..., 1; -p1, -1! p2, -2! p3, ...)``;
    print with ``prefix=Fraction(1, factorial(i))`` for the ``1/24( ... )``
    display.
    """
    i = _positive(i)
    sign = (-1) ** i
    out = Polynomial()
    for d, _, parts in _univariate_terms(i):
        weight = Fraction(d * sign, factorial(i))
        for s, r in parts:
            weight *= (-factorial(s - 1)) ** r
        out = out + Polynomial.from_factors(weight, {Indeterminate("p", s): r for s, r in parts})
    return out


# evaluation by text substitution

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def _arith(node) -> float:
    if isinstance(node, ast.Expression):
        return _arith(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_arith(node.left), _arith(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
        return _UNOPS[type(node.op)](_arith(node.operand))
    raise ValueError(f"unsupported syntax in arithmetic expression: {ast.dump(node)}")


def string_recipe_eval(text: str, y) -> float:
    """Evaluate a printed polynomial in ``y`` by editing its text.

    Prepends ``1`` to the text, turns every `` y`` into ``1y``, replaces
    each ``y`` by ``*<value>`` and evaluates the resulting arithmetic in
    double precision, with ``^`` binding tighter than unary minus and
    associating to the right.
    """
    s = "1" + text
    s = s.replace(" y", "1y")
    s = s.replace("y", f"*{y}")
    try:
        tree = ast.parse(s.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"not an arithmetic expression after substitution: {s!r}") from exc
    return _arith(tree)


def partition_poly_recipe_value(i: int, y) -> float:
    """``F_i(y)`` computed by ``string_recipe_eval`` on the bare-y printout."""
    return string_recipe_eval(format_expression(partition_poly(i), parenthesize=False), y)

