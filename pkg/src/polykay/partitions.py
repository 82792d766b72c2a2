"""Integer partitions, multi-index partitions and multi-index compositions.

A multi-index is a tuple of non-negative integers.  A partition of a
multi-index ``i`` is a multiset of non-zero columns (multi-indices of the
same length) whose component-wise sum is ``i``.  Partitions are built with
an adding-appending rule that works one row (component) at a time, using
the integer partitions of each component.  This avoids enumerating the
set partitions of ``|i|`` elements and collapsing them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

__all__ = [
    "MultiIndex",
    "Partition",
    "as_multi_index",
    "compositions",
    "integer_partitions",
    "multi_index_factorial",
    "multi_index_partitions",
    "partition_count_coefficient",
]

MultiIndex = tuple[int, ...]


def as_multi_index(value: int | Iterable[int]) -> MultiIndex:
    """Coerce an integer or an iterable of integers to a multi-index tuple.

    Raises
    ------
    ValueError
        If a component is negative or not an integer, or the index is empty.
    """
    if isinstance(value, int):
        items = (value,)
    else:
        items = tuple(value)
    if not items:
        raise ValueError("a multi-index needs at least one component")
    out = []
    for c in items:
        if isinstance(c, bool) or int(c) != c:
            raise ValueError(f"multi-index components must be integers, got {c!r}")
        if c < 0:
            raise ValueError(f"multi-index components must be non-negative, got {c}")
        out.append(int(c))
    return tuple(out)


def multi_index_factorial(index: Sequence[int]) -> int:
    return prod(factorial(c) for c in index)


@dataclass(frozen=True)
class Partition:
    """A partition of a multi-index.

    ``blocks`` holds ``(column, multiplicity)`` pairs with distinct columns in
    strictly increasing lexicographic order.
    """

    blocks: tuple[tuple[MultiIndex, int], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a partition needs at least one column")
        dim = len(self.blocks[0][0])
        prev = None
        for column, mult in self.blocks:
            if len(column) != dim:
                raise ValueError("all columns of a partition must share one dimension")
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            if not any(column) or min(column) < 0:
                raise ValueError(f"invalid column {column}")
            if prev is not None and not prev < column:
                raise ValueError("columns must be distinct and lexicographically increasing")
            prev = column

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]]) -> "Partition":
        """Build a partition from columns given in any order, with repeats."""
        counts = Counter(tuple(int(x) for x in c) for c in columns)
        return cls(tuple(sorted(counts.items())))

    @property
    def dimension(self) -> int:
        return len(self.blocks[0][0])

    @property
    def columns(self) -> tuple[MultiIndex, ...]:
        """Columns expanded by multiplicity, in increasing lexicographic order."""
        return tuple(c for c, r in self.blocks for _ in range(r))

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.blocks)

    @property
    def length(self) -> int:
        return sum(r for _, r in self.blocks)

    def __len__(self) -> int:
        return self.length

    @property
    def total(self) -> MultiIndex:
        """The multi-index this partition is a partition of (its row sums)."""
        dim = self.dimension
        return tuple(sum(c[t] * r for c, r in self.blocks) for t in range(dim))

    @property
    def factorial(self) -> int:
        """Product of ``column!`` over all columns, counted with multiplicity."""
        return prod(multi_index_factorial(c) ** r for c, r in self.blocks)

    @property
    def multiplicity_factorial(self) -> int:
        return prod(factorial(r) for _, r in self.blocks)

    def __add__(self, other: "Partition") -> "Partition":
        """Merge the columns of two partitions into one partition."""
        if not isinstance(other, Partition):
            return NotImplemented
        return Partition.from_columns(self.columns + other.columns)

    def compact(self) -> str:
        return "".join("( " + " ".join(map(str, c)) + " )" for c in self.columns)

    def __str__(self) -> str:
        return self.compact()


def partition_count_coefficient(partition: Partition) -> int:
    """Number of set partitions collapsing onto ``partition``.

    Equals ``i! / (Lambda! m(Lambda)!)`` where ``i`` is the multi-index
    partitioned by ``partition``.
    """
    numerator = multi_index_factorial(partition.total)
    denominator = partition.factorial * partition.multiplicity_factorial
    count, rest = divmod(numerator, denominator)
    assert rest == 0
    return count


@lru_cache(maxsize=None)
def _integer_partitions_desc(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    # weakly decreasing part lists, in lexicographically increasing order
    if n == 0:
        return ((),)
    out = []
    for head in range(1, min(n, largest) + 1):
        for tail in _integer_partitions_desc(n - head, head):
            out.append((head,) + tail)
    return tuple(out)


def integer_partitions(n: int) -> list[tuple[int, ...]]:
    """All partitions of the positive integer ``n``.

    Each partition is a weakly increasing tuple of parts.  Partitions are
    listed in increasing order: lexicographically on their weakly decreasing
    rearrangement, so ``(1, 1, 1, 1)`` comes first and ``(n,)`` last.

    >>> integer_partitions(4)
    [(1, 1, 1, 1), (1, 1, 2), (2, 2), (1, 3), (4,)]
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"integer_partitions needs a positive integer, got {n!r}")
    n = int(n)
    return [tuple(reversed(p)) for p in _integer_partitions_desc(n, n)]


def _extend_row(columns: list[MultiIndex], row: int, parts: tuple[int, ...]) -> Iterator[list[MultiIndex]]:
    """Distribute ``parts`` (weakly increasing) into row ``row`` of ``columns``.

    Each part is either added to an existing column whose entry in ``row`` is
    still zero, or appended as a new column.  An addition is only made to the
    first of a group of equal columns, and only if no later column already
    holds a value greater than or equal to the part; together these rules
    make every resulting partition appear once.
    """
    if not parts:
        yield columns
        return
    value, rest = parts[0], parts[1:]
    dim = len(columns[0]) if columns else None
    for pos, col in enumerate(columns):
        if col[row] != 0:
            continue
        if columns.index(col) != pos:
            continue
        if any(later[row] >= value for later in columns[pos + 1:]):
            continue
        added = columns.copy()
        added[pos] = col[:row] + (value,) + col[row + 1:]
        yield from _extend_row(added, row, rest)
    if dim is not None:
        fresh = tuple(value if t == row else 0 for t in range(dim))
        yield from _extend_row(columns + [fresh], row, rest)


@lru_cache(maxsize=None)
def _partitions_cached(index: MultiIndex) -> tuple[Partition, ...]:
    dim = len(index)
    states: list[list[MultiIndex]] = [[]]
    for row, component in enumerate(index):
        if component == 0:
            continue
        grown = []
        for parts in integer_partitions(component):
            for columns in states:
                if not columns:
                    grown.append([tuple(p if t == row else 0 for t in range(dim)) for p in parts])
                else:
                    grown.extend(_extend_row(columns, row, parts))
        states = grown
    found = [Partition.from_columns(cols) for cols in states]
    found.sort(key=lambda p: (-p.length, tuple(x for c in p.columns for x in c)))
    return tuple(found)


def multi_index_partitions(index: int | Iterable[int]) -> list[tuple[Partition, int]]:
    """All partitions of a multi-index with their set-partition counts.

    Returns ``(partition, count)`` pairs, longest partitions first and then
    lexicographically on the flattened columns.

    >>> [(p.compact(), c) for p, c in multi_index_partitions((2, 1))]
    [('( 0 1 )( 1 0 )( 1 0 )', 1), ('( 0 1 )( 2 0 )', 1), ('( 1 0 )( 1 1 )', 2), ('( 2 1 )', 1)]
    """
    index = as_multi_index(index)
    if not any(index):
        raise ValueError("cannot partition the zero multi-index")
    return [(p, partition_count_coefficient(p)) for p in _partitions_cached(index)]


def _distinct_permutations(items: list) -> Iterator[tuple]:
    # same order as itertools.permutations with later repeats dropped
    if not items:
        yield ()
        return
    seen = []
    for pos, item in enumerate(items):
        if item in seen:
            continue
        seen.append(item)
        rest = items[:pos] + items[pos + 1:]
        for tail in _distinct_permutations(rest):
            yield (item,) + tail


def compositions(index: int | Iterable[int], n: int, distinct_permutations: bool = True) -> list[tuple[MultiIndex, ...]]:
    """Ordered ``n``-tuples of multi-indices (zeros allowed) summing to ``index``.

    Built from the partitions of ``index`` of length at most ``n``, each
    padded with zero columns up to ``n`` and then permuted.  With
    ``distinct_permutations`` false, permutations that swap equal columns
    are listed repeatedly.
    """
    index = as_multi_index(index)
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"the number of parts must be a positive integer, got {n!r}")
    if not any(index):
        raise ValueError("cannot compose the zero multi-index")
    zero = (0,) * len(index)
    out = []
    for partition, _ in multi_index_partitions(index):
        if partition.length > n:
            continue
        columns = list(partition.columns) + [zero] * (n - partition.length)
        if distinct_permutations:
            out.extend(_distinct_permutations(columns))
        else:
            out.extend(permutations(columns))
    return out
