"""Multivariate Faa di Bruno formula and generalized Bell polynomials.

For ``h(z) = f(g_1(z) - 1, ..., g_n(z) - 1)`` with exponential power series
``f`` and ``g_j`` (constant terms 1), the ``i``-th coefficient of ``h`` is
expanded as a polynomial in the coefficient indeterminates ``f[t]`` and
``g<j>[s]``:

1. list the compositions ``(s_1, ..., s_n)`` of ``i`` into ``n`` parts;
2. for each part build ``q_j(y_j) = sum over partitions L of s_j of
   count(L) * y_j^len(L) * g_j[L]``;
3. multiply the ``q_j`` with the multinomial ``i! / (s_1! ... s_n!)``;
4. replace ``y_1^t_1 ... y_n^t_n`` by ``f[t_1, ..., t_n]``.

Skipping step 4 gives the generalized complete exponential Bell polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .partitions import MultiIndex, as_multi_index, compositions, multi_index_factorial, multi_index_partitions
from .symbolic import (
    Assignments,
    Indeterminate,
    Polynomial,
    evaluate_fully,
    parse_assignments,
    poly_eval,
)

__all__ = [
    "DEFAULT_MAX_WEIGHT",
    "FdBSpec",
    "OrderTooLargeError",
    "e_gc_bell",
    "e_mfb",
    "gc_bell",
    "mfb",
    "to_ordinary",
]

DEFAULT_MAX_WEIGHT = 12


class OrderTooLargeError(ValueError):
    """The requested order would make the expansion explode combinatorially."""


@dataclass(frozen=True)
class FdBSpec:
    """Order ``i`` of the coefficient, number ``n`` of inner series, and
    whether all inner series are the same one."""

    order: MultiIndex
    n_inner: int = 1
    collapse_equal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "order", as_multi_index(self.order))
        if not any(self.order):
            raise ValueError("the order must have positive weight")
        if isinstance(self.n_inner, bool) or int(self.n_inner) != self.n_inner or self.n_inner < 1:
            raise ValueError(f"the number of inner series must be a positive integer, got {self.n_inner!r}")

    @property
    def weight(self) -> int:
        return sum(self.order)


def _coerce_spec(spec, n_inner=None, collapse_equal=False) -> FdBSpec:
    if isinstance(spec, FdBSpec):
        return spec
    return FdBSpec(as_multi_index(spec), 1 if n_inner is None else n_inner, collapse_equal)


def _check_weight(spec: FdBSpec, max_weight: int | None):
    cap = DEFAULT_MAX_WEIGHT if max_weight is None else max_weight
    if spec.weight > cap:
        raise OrderTooLargeError(
            f"order {spec.order} has weight {spec.weight}, above the limit of {cap}; "
            "pass a larger max_weight to expand it anyway"
        )


def _g(series: int | None, column: MultiIndex) -> Indeterminate:
    return Indeterminate("g", series, column)


def _y(series: int | None) -> Indeterminate:
    return Indeterminate("y", series)


@lru_cache(maxsize=None)
def _inner_polynomial(part: MultiIndex, series: int | None) -> Polynomial:
    # s! * sum over L |- s of y^l(L) g_L / (L! m(L)!), i.e. counts times monomials
    if not any(part):
        return Polynomial.const(1)
    y = _y(series)
    out = Polynomial()
    for partition, count in multi_index_partitions(part):
        factors = {_g(series, column): r for column, r in partition.blocks}
        factors[y] = partition.length
        out = out + Polynomial.from_factors(count, factors)
    return out


def _pair_products(factors: list[Polynomial]) -> Polynomial:
    # recursive pair matching: combine the first two, then the result with the next
    product = factors[0]
    for nxt in factors[1:]:
        product = product * nxt
    return product


def _expand(spec: FdBSpec) -> Polynomial:
    """Generalized Bell polynomial in y_j and g_j, before any f substitution."""
    n = spec.n_inner
    series_of = (lambda j: None) if n == 1 else (lambda j: j + 1)
    total_factorial = multi_index_factorial(spec.order)
    out = Polynomial()
    for parts in compositions(spec.order, n):
        multinomial = total_factorial
        for part in parts:
            multinomial //= multi_index_factorial(part)
        inner = [_inner_polynomial(part, series_of(j)) for j, part in enumerate(parts)]
        out = out + _pair_products(inner) * multinomial
    return out


def _collapse(poly: Polynomial, n: int) -> Polynomial:
    """Identify every g<j> series with one unindexed g."""
    def merge(coeff, factors):
        merged: dict[Indeterminate, int] = {}
        for ind, p in factors.items():
            if ind.family == "g":
                ind = Indeterminate("g", None, ind.subscript)
            merged[ind] = merged.get(ind, 0) + p
        return Polynomial.from_factors(coeff, merged)

    return poly.map_terms(merge)


def gc_bell(spec: FdBSpec | MultiIndex | int, n_inner: int | None = None, collapse_equal: bool = False,
            max_weight: int | None = None) -> Polynomial:
    """Generalized complete exponential Bell polynomial ``h_i(y_1, ..., y_n)``.

    With ``collapse_equal`` all inner sequences are the same, every ``g<j>``
    becomes ``g`` and like terms combine.  For ``n_inner == 1`` the
    indeterminates are the unnumbered ``y`` and ``g``.

    >>> print(gc_bell((1, 1), 1))
    (y^2)g[0,1]g[1,0] + (y)g[1,1]
    """
    spec = _coerce_spec(spec, n_inner, collapse_equal)
    _check_weight(spec, max_weight)
    poly = _expand(spec)
    if spec.collapse_equal and spec.n_inner > 1:
        poly = _collapse(poly, spec.n_inner)
    return poly


def mfb(spec: FdBSpec | MultiIndex | int, n_inner: int | None = None, max_weight: int | None = None) -> Polynomial:
    """The ``i``-th coefficient of ``f(g_1 - 1, ..., g_n - 1)`` as a polynomial.

    Each term carries one ``f[t]`` whose ``j``-th component counts the
    ``g<j>`` factors of that term.  ``f[0]`` and ``g<j>[0]`` are 1 and never
    appear.

    >>> print(mfb((3,), 1))
    f[1]g[3] + 3f[2]g[1]g[2] + f[3]g[1]^3
    """
    spec = _coerce_spec(spec, n_inner)
    _check_weight(spec, max_weight)
    n = spec.n_inner
    ys = [_y(None)] if n == 1 else [_y(j + 1) for j in range(n)]

    def to_f(coeff, factors):
        t = tuple(factors.pop(y, 0) for y in ys)
        factors[Indeterminate("f", None, t)] = 1
        return Polynomial.from_factors(coeff, factors)

    poly = _expand(spec).map_terms(to_f)
    if spec.collapse_equal and n > 1:
        poly = _collapse(poly, n)
    return poly


def _coerce_assignments(values) -> Assignments:
    if isinstance(values, Assignments):
        return values
    if isinstance(values, str):
        return parse_assignments(values)
    return Assignments(values)


def e_mfb(spec: FdBSpec | MultiIndex | int, values, n_inner: int | None = None,
          max_weight: int | None = None):
    """Evaluate the Faa di Bruno expansion at numeric ``f`` and ``g`` values.

    Raises
    ------
    UnboundIndeterminateError
        If an ``f`` or ``g`` of the expansion has no value.
    """
    return evaluate_fully(mfb(spec, n_inner, max_weight=max_weight), _coerce_assignments(values))


def e_gc_bell(spec: FdBSpec | MultiIndex | int, values, n_inner: int | None = None,
              collapse_equal: bool = False, max_weight: int | None = None):
    """Substitute values into ``gc_bell``; partial bindings leave a polynomial."""
    return poly_eval(gc_bell(spec, n_inner, collapse_equal, max_weight), _coerce_assignments(values))


def to_ordinary(poly: Polynomial, order) -> Polynomial:
    """Rescale an exponential-series expansion to ordinary power series.

    Replaces every ``f[t]`` by ``t! f[t]`` and every ``g<j>[s]`` by
    ``s! g<j>[s]`` and divides by ``i!``, giving the ``i``-th coefficient of
    the composition of ordinary power series.
    """
    order = as_multi_index(order)

    def rescale(coeff, factors):
        scale = Fraction(1, multi_index_factorial(order))
        for ind, p in factors.items():
            if ind.family in ("f", "g") and ind.subscript is not None:
                scale *= multi_index_factorial(ind.subscript) ** p
        return Polynomial.from_factors(coeff * scale, factors)

    return poly.map_terms(rescale)

