import random
import time
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polykay.bellpoly import general_partition_poly
from polykay.faadibruno import (
    FdBSpec,
    OrderTooLargeError,
    e_gc_bell,
    e_mfb,
    gc_bell,
    mfb,
    to_ordinary,
)
from polykay.symbolic import Indeterminate, Polynomial, UnboundIndeterminateError, parse_assignments, parse_expression, poly_eval

from oracles import bell_by_triangle

INNER_VALUES = "g1[0,1]=1, g1[1,0]=2, g1[1,1]=3, g2[0,1]=4, g2[1,0]=5, g2[1,1]=6"
MIXED_VALUES = ("f[0,1]=2, f[0,2]=5, f[1,0]=13, f[1,1]=-4, f[2,0]=0,"
        "g1[0,1]=-2.1, g1[1,0]=2,g1[1,1]=3.1,g2[0,1]=5,g2[1,0]=0,g2[1,1]=6.1")


def _series_compose(f, g, order):
    """Coefficients of f(g(z) - 1) up to z^order for ordinary series lists.

    ``f[t]`` and ``g[s]`` are coefficients with ``g[0] = f[0] = 1``.
    """
    inner = [Fraction(0)] + [Fraction(c) for c in g[1:order + 1]]
    result = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for t in range(order + 1):
        for k in range(order + 1):
            result[k] += f[t] * power[k]
        nxt = [Fraction(0)] * (order + 1)
        for a, x in enumerate(power):
            if x:
                for b, yv in enumerate(inner):
                    if a + b <= order:
                        nxt[a + b] += x * yv
        power = nxt
    return result


class TestMfb:
    def test_bivariate_two_series(self):
        expected = parse_expression(
            "f[1,1]g1[0,1]g2[1,0] + f[1,1]g1[1,0]g2[0,1] + f[2,0]g1[0,1]g1[1,0] + f[1,0]g1[1,1]"
            " + f[0,2]g2[0,1]g2[1,0] + f[0,1]g2[1,1]"
        )
        assert mfb((1, 1), 2) == expected

    def test_univariate_order_five(self):
        expected = parse_expression(
            "f[5]g[1]^5 + 10f[4]g[1]^3g[2] + 15f[3]g[1]g[2]^2 + 10f[3]g[1]^2g[3] + 10f[2]g[2]g[3]"
            " + 5f[2]g[1]g[4] + f[1]g[5]"
        )
        assert mfb(5, 1) == expected

    def test_chain_rule(self):
        assert str(mfb(1, 1)) == "f[1]g[1]"

    def test_spec_object(self):
        assert mfb(FdBSpec((1, 1), 2)) == mfb((1, 1), 2)

    def test_zero_order_rejected(self):
        with pytest.raises(ValueError):
            mfb((0, 0), 1)

    @pytest.mark.parametrize("order,n", [((2, 1), 2), ((2, 2), 2), ((1, 1, 1), 3), ((3,), 2), ((2, 1), 3)])
    def test_homogeneity_and_weight(self, order, n):
        for _, mono in mfb(order, n).terms():
            f_sub = [ind.subscript for ind, _ in mono if ind.family == "f"]
            assert len(f_sub) == 1
            g_per_series = [0] * n
            weight = [0] * len(order)
            for ind, p in mono:
                if ind.family == "g":
                    g_per_series[(ind.series or 1) - 1] += p
                    for t, c in enumerate(ind.subscript):
                        weight[t] += c * p
            assert list(f_sub[0]) == g_per_series
            assert tuple(weight) == order

    @pytest.mark.parametrize("k", range(1, 9))
    def test_all_ones_gives_bell_number(self, k):
        assert sum(c for c, _ in mfb(k, 1).terms()) == bell_by_triangle(k)

    @pytest.mark.parametrize("i", range(1, 8))
    def test_univariate_matches_general_partition_poly(self, i):
        renamed = general_partition_poly(i).map_terms(
            lambda c, fs: Polynomial.from_factors(
                c,
                {(Indeterminate("f", None, (ind.series,)) if ind.family == "a"
                  else Indeterminate("g", None, (ind.series,))): p for ind, p in fs.items()},
            )
        )
        assert mfb(i, 1) == renamed

    @pytest.mark.parametrize("i", range(1, 7))
    def test_matches_series_composition(self, i):
        rng = random.Random(i)
        f = [Fraction(1)] + [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(i)]
        g = [Fraction(1)] + [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(i)]
        values = {Indeterminate("f", None, (t,)): f[t] for t in range(1, i + 1)}
        values.update({Indeterminate("g", None, (s,)): g[s] for s in range(1, i + 1)})
        ordinary = to_ordinary(mfb(i, 1), i)
        # exponential coefficients f_t / t! and g_s / s! are ordinary ones
        exp_f = [f[t] / factorial(t) for t in range(i + 1)]
        exp_g = [g[s] / factorial(s) for s in range(i + 1)]
        assert e_mfb(i, values) / factorial(i) == _series_compose(exp_f, exp_g, i)[i]
        assert poly_eval(ordinary, values) == _series_compose(f, g, i)[i]


class TestEvaluation:
    def test_e_mfb(self):
        assert e_mfb((1, 1), parse_assignments(MIXED_VALUES), n_inner=2) == 12.5

    def test_e_mfb_string_input(self):
        assert e_mfb((1, 1), MIXED_VALUES, n_inner=2) == 12.5

    def test_zero_g_gives_zero(self):
        poly = mfb((2, 1), 2)
        values = {ind: (0 if ind.family == "g" else 7) for ind in poly.indeterminates()}
        assert e_mfb((2, 1), values, n_inner=2) == 0

    def test_unbound_is_named(self):
        with pytest.raises(UnboundIndeterminateError) as info:
            e_mfb((1, 1), "f[0,1]=2", n_inner=2)
        assert info.value.name

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=12, max_size=12))
    def test_e_mfb_equals_poly_eval(self, raw):
        poly = mfb((1, 1), 2)
        inds = sorted(poly.indeterminates())
        values = dict(zip(inds, raw))
        assert e_mfb((1, 1), values, n_inner=2) == poly_eval(poly, values)


class TestGcBell:
    def test_two_series(self):
        expected = parse_expression(
            "(y1)(y2)g1[0,1]g2[1,0] + (y1)(y2)g1[1,0]g2[0,1] + (y1^2)g1[0,1]g1[1,0] + (y1)g1[1,1]"
            " + (y2^2)g2[0,1]g2[1,0] + (y2)g2[1,1]"
        )
        assert gc_bell((1, 1), 2) == expected

    def test_collapsed(self):
        expected = parse_expression(
            "2(y1)(y2)g[0,1]g[1,0] + (y1^2)g[0,1]g[1,0] + (y1)g[1,1] + (y2^2)g[0,1]g[1,0] + (y2)g[1,1]"
        )
        assert gc_bell((1, 1), 2, collapse_equal=True) == expected

    def test_single_series(self):
        assert gc_bell((1, 1), 1) == parse_expression("(y^2)g[0,1]g[1,0] + (y)g[1,1]")

    def test_partial_evaluation(self):
        got = e_gc_bell((1, 1), INNER_VALUES, n_inner=2)
        assert got == parse_expression("13(y1)(y2) + 2(y1^2) + 3(y1) + 20(y2^2) + 6(y2)")

    def test_full_evaluation(self):
        assert e_gc_bell((1, 1), "y1=1,  y2=5, " + INNER_VALUES, n_inner=2) == 600

    def test_empty_assignments(self):
        assert e_gc_bell((1, 1), "", n_inner=2) == gc_bell((1, 1), 2)

    def test_replacing_f_by_y_powers_gives_mfb(self):
        def to_y(c, fs):
            out = {}
            for ind, p in fs.items():
                if ind.family == "f":
                    for j, t in enumerate(ind.subscript):
                        if t:
                            out[Indeterminate("y", j + 1)] = t
                else:
                    out[ind] = p
            return Polynomial.from_factors(c, out)

        assert mfb((2, 1), 2).map_terms(to_y) == gc_bell((2, 1), 2)

    @settings(max_examples=20, deadline=None)
    @given(
        st.sampled_from([(1, 1), (2, 1), (2,), (1, 1, 1)]),
        st.integers(2, 3),
        st.randoms(use_true_random=False),
    )
    def test_equal_series_reduce_to_sum_of_y(self, order, n, rng):
        collapsed = gc_bell(order, n, collapse_equal=True)
        single = gc_bell(order, 1)
        g_values = {ind: Fraction(rng.randint(-3, 3)) for ind in single.indeterminates() if ind.family == "g"}
        ys = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)]
        left = dict(g_values)
        left.update({Indeterminate("y", j + 1): v for j, v in enumerate(ys)})
        right = dict(g_values)
        right[Indeterminate("y")] = sum(ys)
        assert poly_eval(collapsed, left) == poly_eval(single, right)


class TestGuard:
    def test_weight_eight_two_series_is_fast(self):
        start = time.perf_counter()
        poly = mfb((4, 4), 2)
        assert time.perf_counter() - start < 60
        assert len(poly) > 0

    def test_beyond_cap_fails_fast(self):
        start = time.perf_counter()
        with pytest.raises(OrderTooLargeError, match="limit"):
            mfb((7, 6), 2)
        assert time.perf_counter() - start < 1

    def test_cap_is_configurable(self):
        with pytest.raises(OrderTooLargeError):
            mfb(5, 1, max_weight=4)
        assert len(mfb(13, 1, max_weight=13)) == 101
