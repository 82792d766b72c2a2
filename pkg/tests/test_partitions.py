from collections import Counter
from math import comb, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polykay.partitions import (
    Partition,
    as_multi_index,
    compositions,
    integer_partitions,
    multi_index_factorial,
    multi_index_partitions,
    partition_count_coefficient,
)

from oracles import bell_by_triangle, brute_compositions, collapsed_partitions, euler_partition_count


def _as_counter(found):
    return Counter({p.columns: c for p, c in found})


class TestMultiIndex:
    def test_int_becomes_singleton(self):
        assert as_multi_index(3) == (3,)

    @pytest.mark.parametrize("bad", [(), (-1, 2), (1.5,), (True,)])
    def test_rejects_bad_components(self, bad):
        with pytest.raises(ValueError):
            as_multi_index(bad)

    def test_factorial(self):
        assert multi_index_factorial((3, 2)) == 12


class TestIntegerPartitions:
    def test_four_in_increasing_order(self):
        assert integer_partitions(4) == [(1, 1, 1, 1), (1, 1, 2), (2, 2), (1, 3), (4,)]

    def test_one(self):
        assert integer_partitions(1) == [(1,)]

    @pytest.mark.parametrize("n", range(1, 26))
    def test_count_matches_euler_recurrence(self, n):
        assert len(integer_partitions(n)) == euler_partition_count(n)

    def test_ten_has_42(self):
        assert len(integer_partitions(10)) == 42

    def test_parts_are_weakly_increasing_and_sum(self):
        for p in integer_partitions(9):
            assert list(p) == sorted(p)
            assert sum(p) == 9

    @pytest.mark.parametrize("bad", [0, -3])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            integer_partitions(bad)


class TestMultiIndexPartitions:
    def test_two_one(self):
        got = [(p.compact(), c) for p, c in multi_index_partitions((2, 1))]
        assert got == [
            ("( 0 1 )( 1 0 )( 1 0 )", 1),
            ("( 0 1 )( 2 0 )", 1),
            ("( 1 0 )( 1 1 )", 2),
            ("( 2 1 )", 1),
        ]

    def test_three(self):
        got = [(p.columns, c) for p, c in multi_index_partitions(3)]
        assert got == [(((1,), (1,), (1,)), 1), (((1,), (2,)), 3), (((3,),), 1)]

    def test_one_one_has_exactly_two(self):
        got = _as_counter(multi_index_partitions((1, 1)))
        assert got == Counter({((0, 1), (1, 0)): 1, ((1, 1),): 1})

    def test_zero_index_rejected(self):
        with pytest.raises(ValueError):
            multi_index_partitions((0, 0))

    @pytest.mark.parametrize(
        "index",
        [(1,), (4,), (2, 1), (1, 1, 1), (2, 2), (3, 2), (2, 2, 1), (3, 1, 1), (0, 3, 1), (4, 0), (1, 2, 2)],
    )
    def test_against_set_partition_collapse(self, index):
        assert _as_counter(multi_index_partitions(index)) == collapsed_partitions(index)

    @pytest.mark.parametrize("index", [(2, 1), (3, 2), (2, 2, 2), (4, 3), (1, 1, 1, 1)])
    def test_counts_sum_to_bell(self, index):
        total = sum(c for _, c in multi_index_partitions(index))
        assert total == bell_by_triangle(sum(index))

    @pytest.mark.parametrize("n", range(1, 13))
    def test_univariate_matches_integer_partitions(self, n):
        flat = sorted(tuple(c[0] for c in p.columns) for p, _ in multi_index_partitions(n))
        assert flat == sorted(integer_partitions(n))

    def test_row_sums_and_column_order(self):
        for index in [(3, 2), (2, 2, 1)]:
            for p, _ in multi_index_partitions(index):
                assert p.total == index
                cols = [c for c, _ in p.blocks]
                assert cols == sorted(set(cols))

    def test_deterministic(self):
        assert multi_index_partitions((3, 2)) == multi_index_partitions((3, 2))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=3).filter(lambda v: 0 < sum(v) <= 6))
    def test_collapse_property(self, index):
        assert _as_counter(multi_index_partitions(tuple(index))) == collapsed_partitions(index)


class TestPartition:
    def test_validation(self):
        with pytest.raises(ValueError):
            Partition((((0, 0), 1),))
        with pytest.raises(ValueError):
            Partition((((1, 0), 1), ((0, 1), 1)))
        with pytest.raises(ValueError):
            Partition((((1, 0), 1), ((1,), 1)))

    def test_derived_quantities(self):
        p = Partition.from_columns([(1, 0), (1, 1), (1, 0)])
        assert p.length == len(p) == 3
        assert p.total == (3, 1)
        assert p.multiplicities == (2, 1)
        assert p.factorial == 1
        assert p.multiplicity_factorial == 2

    def test_merge(self):
        a = Partition.from_columns([(1, 0)])
        b = Partition.from_columns([(1, 0), (0, 1)])
        assert (a + b).columns == ((0, 1), (1, 0), (1, 0))


class TestCountCoefficient:
    def test_examples(self):
        assert partition_count_coefficient(Partition.from_columns([(1, 0), (1, 1)])) == 2
        assert partition_count_coefficient(Partition.from_columns([(1,)])) == 1
        assert partition_count_coefficient(Partition.from_columns([(1,)] * 3)) == 1
        assert partition_count_coefficient(Partition.from_columns([(1,), (2,)])) == 3

    def test_large_exact(self):
        # 25! exceeds 64 bits; result must still be exact
        p = Partition.from_columns([(1,)] * 25)
        assert partition_count_coefficient(p) == 1


class TestCompositions:
    def test_two_one_into_two(self):
        assert compositions((2, 1), 2) == [
            ((0, 1), (2, 0)),
            ((2, 0), (0, 1)),
            ((1, 0), (1, 1)),
            ((1, 1), (1, 0)),
            ((2, 1), (0, 0)),
            ((0, 0), (2, 1)),
        ]

    def test_single_part(self):
        assert compositions((3, 1), 1) == [((3, 1),)]

    def test_one_one_into_three(self):
        assert len(compositions((1, 1), 3)) == 9

    @pytest.mark.parametrize("index", [(1,), (2,), (4,), (1, 1), (2, 1), (2, 2), (1, 1, 1), (3, 1)])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_against_brute_force(self, index, n):
        got = compositions(index, n)
        assert len(got) == len(set(got))
        assert sorted(got) == sorted(brute_compositions(index, n))
        assert len(got) == prod(comb(c + n - 1, n - 1) for c in index)

    def test_without_dedup_lists_repeats(self):
        assert len(compositions((2,), 2, distinct_permutations=False)) == 4

    @pytest.mark.parametrize("bad", [0, -1])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            compositions((1, 1), bad)
