"""Unbiased estimators of cumulants and cumulant products from sample data.

k-statistics estimate a single (joint) cumulant, polykays estimate a
product of (joint) cumulants.  Both are computed by expanding a polynomial
whose coefficients are built from partitions and power sums, and then
replacing its monomials by numbers that depend only on the sample size.
Combinatorial coefficients are exact; power sums are binary64.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator

from .bellpoly import stirling2
from .partitions import (
    MultiIndex,
    Partition,
    as_multi_index,
    multi_index_partitions,
    partition_count_coefficient,
)

__all__ = [
    "KStatistic",
    "Polykay",
    "SampleTooSmallError",
    "as_sample",
    "falling_factorial",
    "k_statistic",
    "multivariate_k_statistic",
    "multivariate_polykay",
    "polyk",
    "polykay",
    "power_sums",
]


class SampleTooSmallError(ValueError):
    """The requested order needs more observations than the sample has."""


def as_sample(data) -> np.ndarray:
    """Coerce data to an ``(N, m)`` float array of finite values.

    A one-dimensional input is read as ``N`` observations of one variate.
    """
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"a sample must be one- or two-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("a sample needs at least one observation of at least one variate")
    if not np.all(np.isfinite(arr)):
        raise ValueError("a sample may only hold finite values")
    return arr


def falling_factorial(n: int, k: int) -> int:
    """``(n)_k = n (n-1) ... (n-k+1)`` as an exact integer."""
    return prod(range(n - k + 1, n + 1)) if k > 0 else 1


def _log_weight(length: int) -> int:
    # (-1)^(l-1) (l-1)!
    return (-1) ** (length - 1) * factorial(length - 1)


def power_sums(data, cap) -> dict[MultiIndex, float]:
    """Power sums ``p_s = sum_rows prod_t a_t^s_t`` for every ``0 <= s <= cap``.

    Parameters
    ----------
    data : array_like
        Sample of shape ``(N,)`` or ``(N, m)``.
    cap : int or sequence of int
        Largest subscript, one component per variate.

    Returns
    -------
    dict
        Maps each multi-index ``s`` (component-wise at most ``cap``) to
        ``p_s``; ``p_0`` equals ``N``.
    """
    sample = as_sample(data)
    cap = as_multi_index(cap)
    if len(cap) != sample.shape[1]:
        raise ValueError(f"cap has {len(cap)} components but the sample has {sample.shape[1]} variates")
    # powers[t][e] is column t raised to e
    powers = [np.vstack([sample[:, t] ** e for e in range(c + 1)]) for t, c in enumerate(cap)]
    table = {}
    for s in product(*(range(c + 1) for c in cap)):
        rows = np.ones(sample.shape[0])
        for t, e in enumerate(s):
            if e:
                rows = rows * powers[t][e]
        table[s] = float(np.sum(rows))
    return table


def _check_size(order: MultiIndex, n_obs: int):
    weight = sum(order)
    if weight < 1:
        raise ValueError("the order must have positive weight")
    if weight > n_obs:
        raise SampleTooSmallError(
            f"sample too small: order {order} has weight {weight} but there are only {n_obs} observations"
        )


@lru_cache(maxsize=None)
def _cumulant_weight_poly(t: int) -> tuple[int, ...]:
    """Coefficients of ``P_t(y) = sum_j S(t,j) (-1)^(j-1) (j-1)! y^j``, index = power."""
    return (0,) + tuple(stirling2(t, j) * _log_weight(j) for j in range(1, t + 1))


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def multivariate_k_statistic(order, data) -> float:
    """Multivariate k-statistic of the given order.

    Expands ``Q_i(y) = sum over partitions L of i of d_L P_L(y) p_L`` with
    ``P_L(y)`` the product of ``P_|column|(y)`` over the columns of ``L``,
    then replaces ``y^t`` by ``(-1)^(t-1) (t-1)! / (N)_t``.

    Raises
    ------
    SampleTooSmallError
        If the weight of ``order`` exceeds the number of observations.
    """
    sample = as_sample(data)
    order = as_multi_index(order)
    n_obs, n_var = sample.shape
    if len(order) != n_var:
        raise ValueError(f"order {order} has {len(order)} components but the sample has {n_var} variates")
    _check_size(order, n_obs)
    weight = sum(order)
    if weight >= 2:
        # cumulant estimators of total order >= 2 are translation invariant;
        # centering first avoids cancellation between large power sums
        sample = sample - sample.mean(axis=0)
    sums = power_sums(sample, order)
    substitute = [Fraction(0)] + [
        Fraction(_log_weight(t), falling_factorial(n_obs, t)) for t in range(1, weight + 1)
    ]
    total = 0.0
    for partition, count in multi_index_partitions(order):
        q = [1]
        for column, r in partition.blocks:
            for _ in range(r):
                q = _poly_mul(q, _cumulant_weight_poly(sum(column)))
        y_value = sum((c * substitute[t] for t, c in enumerate(q) if c), Fraction(0))
        p_value = prod(sums[column] ** r for column, r in partition.blocks)
        total += float(count * y_value) * p_value
    return total


def k_statistic(order: int, data) -> float:
    """The ``order``-th k-statistic of a univariate sample.

    ``k_statistic(1, x)`` is the mean and ``k_statistic(2, x)`` the sample
    variance with ``N - 1`` denominator.

    >>> round(k_statistic(2, [1.0, 2.0, 4.0]), 10)
    2.3333333333
    """
    sample = as_sample(data)
    if sample.shape[1] != 1:
        raise ValueError("k_statistic needs a univariate sample; use multivariate_k_statistic")
    if isinstance(order, bool) or int(order) != order or order < 1:
        raise ValueError(f"the order must be a positive integer, got {order!r}")
    return multivariate_k_statistic((int(order),), sample)


@lru_cache(maxsize=None)
def _log_partition_poly(k: MultiIndex) -> tuple[tuple[Partition, int], ...]:
    """Terms ``(M, d_M (-1)^(l-1) (l-1)!)`` of the logarithmic polynomial ``P~_k``."""
    return tuple((m, count * _log_weight(m.length)) for m, count in multi_index_partitions(k))


def _merge_key(columns: Iterable[MultiIndex]) -> tuple[MultiIndex, ...]:
    return tuple(sorted(columns))


def _expand_log_product(partition: Partition) -> dict[tuple[MultiIndex, ...], int]:
    """Expand ``prod over columns of P~_column`` into merged-partition monomials."""
    acc: dict[tuple[MultiIndex, ...], int] = {(): 1}
    for column in partition.columns:
        nxt: dict[tuple[MultiIndex, ...], int] = defaultdict(int)
        for key, coeff in acc.items():
            for m, c in _log_partition_poly(column):
                nxt[_merge_key(key + m.columns)] += coeff * c
        acc = nxt
    return acc


def _merged_d(columns: tuple[MultiIndex, ...]) -> int:
    return partition_count_coefficient(Partition.from_columns(columns))


def _monomial_values(orders: tuple[MultiIndex, ...], n_obs: int) -> dict[tuple[MultiIndex, ...], Fraction]:
    """Value plugged in for each ``y_M`` with ``M`` a merged partition.

    ``M`` gets the sum, over every way of writing it as ``M_1 + ... + M_B``
    with ``M_b`` a partition of the ``b``-th order, of
    ``prod_b (-1)^(l_b - 1) (l_b - 1)! d_{M_b} / ((N)_{l(M)} d_M)``;
    partitions with no such decomposition get zero.
    """
    values: dict[tuple[MultiIndex, ...], Fraction] = defaultdict(Fraction)
    choices = [multi_index_partitions(o) for o in orders]
    for combo in product(*choices):
        columns = _merge_key(c for part, _ in combo for c in part.columns)
        numerator = prod(count * _log_weight(part.length) for part, count in combo)
        denominator = falling_factorial(n_obs, len(columns)) * _merged_d(columns)
        values[columns] += Fraction(numerator, denominator)
    return values


def multivariate_polykay(orders, data) -> float:
    """Multivariate polykay: unbiased estimate of ``prod_b k_{orders[b]}``.

    Expands ``A_w = sum over L of w of d_L P~_L p_L`` with ``w`` the sum of
    the orders and ``P~`` the logarithmic polynomials, then replaces each
    monomial ``y_M`` by a value depending on how ``M`` splits into
    partitions of the individual orders (see ``_monomial_values``).

    Parameters
    ----------
    orders : sequence of multi-indices
        One multi-index per cumulant factor, all of dimension ``m``.
    data : array_like
        Sample of shape ``(N, m)``.
    """
    sample = as_sample(data)
    n_obs, n_var = sample.shape
    orders = tuple(as_multi_index(o) for o in orders)
    if not orders:
        raise ValueError("at least one order is needed")
    for o in orders:
        if len(o) != n_var:
            raise ValueError(f"order {o} has {len(o)} components but the sample has {n_var} variates")
        if not any(o):
            raise ValueError("every order must have positive weight")
    total_order = tuple(sum(col) for col in zip(*orders))
    _check_size(total_order, n_obs)
    sums = power_sums(sample, total_order)
    values = _monomial_values(orders, n_obs)
    total = 0.0
    for partition, count in multi_index_partitions(total_order):
        y_value = Fraction(0)
        for key, coeff in _expand_log_product(partition).items():
            v = values.get(key)
            if v:
                y_value += coeff * v
        if y_value:
            p_value = prod(sums[column] ** r for column, r in partition.blocks)
            total += float(count * y_value) * p_value
    return total


def polykay(orders: Sequence[int], data) -> float:
    """Univariate polykay: unbiased estimate of ``k_{i_1} k_{i_2} ...``.

    >>> x = [1.0, 2.0, 4.0, 7.0]
    >>> p1, p2 = sum(x), sum(v * v for v in x)
    >>> round(polykay([1, 1], x) - (p1 ** 2 - p2) / (4 * 3), 12)
    0.0
    """
    sample = as_sample(data)
    if sample.shape[1] != 1:
        raise ValueError("polykay needs a univariate sample; use multivariate_polykay")
    blocks = []
    for o in orders:
        if isinstance(o, bool) or int(o) != o or o < 1:
            raise ValueError(f"orders must be positive integers, got {o!r}")
        blocks.append((int(o),))
    return multivariate_polykay(blocks, sample)


def polyk(orders, data, multivariate: bool | None = None) -> float:
    """Dispatch to the k-statistic or polykay matching the request.

    Parameters
    ----------
    orders : int, multi-index, or sequence of these
        A single order asks for a k-statistic, several orders for a polykay.
    data : array_like
    multivariate : bool, optional
        Force the multivariate routines.  By default a sample with more than
        one column, or orders given as tuples, select them.
    """
    sample = as_sample(data)
    if isinstance(orders, (int, np.integer)):
        blocks = [(int(orders),)]
    else:
        orders = list(orders)
        if not orders:
            raise ValueError("empty request")
        if all(isinstance(o, (int, np.integer)) for o in orders):
            # a flat list is one multi-index for multivariate data, else a product
            if sample.shape[1] > 1 or multivariate:
                blocks = [tuple(int(o) for o in orders)]
            else:
                blocks = [(int(o),) for o in orders]
        else:
            blocks = [as_multi_index(o) for o in orders]
    if multivariate is None:
        multivariate = sample.shape[1] > 1
    if len(blocks) == 1:
        if multivariate:
            return multivariate_k_statistic(blocks[0], sample)
        return k_statistic(blocks[0][0], sample)
    if multivariate:
        return multivariate_polykay(blocks, sample)
    return polykay([b[0] for b in blocks], sample)


class KStatistic(BaseEstimator):
    """Estimate a (joint) cumulant with its k-statistic.

    Parameters
    ----------
    order : int or sequence of int
        Cumulant order; a sequence gives the joint order for multivariate data.

    Attributes
    ----------
    statistic_ : float
        The k-statistic of the fitted sample.
    n_samples_ : int
    """

    def __init__(self, order=2):
        self.order = order

    def fit(self, X, y=None):
        X = as_sample(X)
        if isinstance(self.order, (int, np.integer)):
            order = (int(self.order),) + (0,) * (X.shape[1] - 1) if X.shape[1] > 1 else (int(self.order),)
        else:
            order = as_multi_index(self.order)
        self.statistic_ = multivariate_k_statistic(order, X)
        self.n_samples_ = X.shape[0]
        return self


class Polykay(BaseEstimator):
    """Estimate a product of (joint) cumulants with its polykay.

    Parameters
    ----------
    orders : sequence
        Orders of the cumulant factors: integers for univariate data,
        multi-indices for multivariate data.

    Attributes
    ----------
    statistic_ : float
    n_samples_ : int
    """

    def __init__(self, orders=(2, 2)):
        self.orders = orders

    def fit(self, X, y=None):
        X = as_sample(X)
        blocks = [(int(o),) if isinstance(o, (int, np.integer)) else as_multi_index(o) for o in self.orders]
        self.statistic_ = multivariate_polykay(blocks, X)
        self.n_samples_ = X.shape[0]
        return self
