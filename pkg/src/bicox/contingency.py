"""Contingency-table model of the two-sided complex for symmetric groups.

A face (I, w, J) of the complex of S_n is drawn as balls in boxes: a ball in
column i, row w(i) (rows counted bottom to top), horizontal bars in the row
gaps indexed by S-I and vertical bars in the column gaps indexed by S-J.
Counting balls per box gives a nonnegative integer array with total n and
positive row and column sums, i.e. a two-way contingency table, and this is
a poset isomorphism onto refinement order: adding a bar splits a row or a
column, removing one merges two adjacent ones.

Tables store their rows bottom to top to match the picture; display and
serialization emit the top row first.  A short k-way generalization is
included, enough to count maximal tables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .complexes import Face, TwoSidedComplex
from .coxeter import GroupTable
from .errors import CapacityError, InternalCheckError
from .cosets import is_minimal_rep


@dataclass(frozen=True)
class ContingencyTable:
    """Nonnegative integer array, positive margins; rows bottom to top."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise ValueError("table must have at least one row and column")
        cols = len(self.cells[0])
        for row in self.cells:
            if len(row) != cols:
                raise ValueError("ragged rows")
            if any(x < 0 for x in row):
                raise ValueError("negative entry")
            if sum(row) < 1:
                raise ValueError("zero row sum")
        for j in range(cols):
            if sum(row[j] for row in self.cells) < 1:
                raise ValueError("zero column sum")

    @classmethod
    def from_display(cls, rows_top_first) -> "ContingencyTable":
        return cls(tuple(tuple(r) for r in reversed(list(rows_top_first))))

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.cells)

    @property
    def order_rank(self) -> int:
        """Rank in refinement order: the number of bars."""
        return (self.rows - 1) + (self.cols - 1)

    def display(self) -> list[list[int]]:
        """Rows as printed, top row first."""
        return [list(row) for row in reversed(self.cells)]

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.cells]

    def col_sums(self) -> list[int]:
        return [sum(row[j] for row in self.cells) for j in range(self.cols)]

    def transpose(self) -> "ContingencyTable":
        return ContingencyTable(
            tuple(
                tuple(self.cells[i][j] for i in range(self.rows))
                for j in range(self.cols)
            )
        )


def _blocks(bar_mask: int, n: int) -> list[range]:
    """Consecutive 1-based blocks of [n] cut at the barred gaps."""
    blocks = []
    start = 1
    for s in range(n - 1):
        if bar_mask >> s & 1:
            blocks.append(range(start, s + 2))
            start = s + 2
    blocks.append(range(start, n + 1))
    return blocks


class SymmetricGroupFaces:
    """Bridges a type-A group table and the contingency-table picture.

    The group must be irreducible of type A; its elements are handled in
    one-line notation through the canonical generator numbering of the
    component (generator k is the adjacent transposition of k+1, k+2).
    """

    def __init__(self, table: GroupTable):
        if not table.system.is_irreducible("A"):
            raise ValueError(
                f"contingency model needs an irreducible type-A group, got "
                f"{table.system.canonical_name}"
            )
        self.table = table
        self.n = table.rank + 1  # letters being permuted
        component = table.system.components[0]
        self._position = {v: k for k, v in enumerate(component.vertices)}
        self._one_line: list[tuple[int, ...]] | None = None
        self._index: dict[tuple[int, ...], int] | None = None

    def _fill(self) -> None:
        if self._one_line is not None:
            return
        perms = [tuple(range(1, self.n + 1))] * self.table.order
        for w in range(1, self.table.order):
            mask = int(self.table.des_left[w])
            s = (mask & -mask).bit_length() - 1
            shorter = perms[int(self.table.left_mult[w, s])]
            a = self._position[s] + 1
            swap = {a: a + 1, a + 1: a}
            perms[w] = tuple(swap.get(x, x) for x in shorter)
        self._one_line = perms
        self._index = {p: w for w, p in enumerate(perms)}

    def one_line(self, w: int) -> tuple[int, ...]:
        self._fill()
        return self._one_line[w]

    def id_of(self, perm) -> int:
        self._fill()
        return self._index[tuple(perm)]

    def _canonical_mask(self, mask: int) -> int:
        out = 0
        for s in range(self.table.rank):
            if mask >> s & 1:
                out |= 1 << self._position[s]
        return out

    def _global_mask(self, mask: int) -> int:
        out = 0
        for v, k in self._position.items():
            if mask >> k & 1:
                out |= 1 << v
        return out

    def face_to_table(self, face: Face) -> ContingencyTable:
        """Count balls per box: rows cut by S-I, columns cut by S-J."""
        full = self.table.full_mask
        perm = self.one_line(face.w)
        row_blocks = _blocks(self._canonical_mask(full ^ face.left), self.n)
        col_blocks = _blocks(self._canonical_mask(full ^ face.right), self.n)
        row_of = {}
        for r, block in enumerate(row_blocks):
            for value in block:
                row_of[value] = r
        cells = [[0] * len(col_blocks) for _ in row_blocks]
        for c, block in enumerate(col_blocks):
            for i in block:
                cells[row_of[perm[i - 1]]][c] += 1
        return ContingencyTable(tuple(tuple(row) for row in cells))

    def table_to_face(self, table: ContingencyTable) -> Face:
        """Sort the balls of each box left-to-right and bottom-to-top."""
        if table.total != self.n:
            raise ValueError(f"table total {table.total}, expected {self.n}")
        row_bars = 0
        height = 0
        for total in table.row_sums()[:-1]:
            height += total
            row_bars |= 1 << (height - 1)
        col_bars = 0
        width = 0
        for total in table.col_sums()[:-1]:
            width += total
            col_bars |= 1 << (width - 1)
        row_blocks = _blocks(row_bars, self.n)
        # each box receives a run of consecutive values from its row block
        box_values = [[None] * table.cols for _ in range(table.rows)]
        for r, block in enumerate(row_blocks):
            nxt = block.start
            for c in range(table.cols):
                count = table.cells[r][c]
                box_values[r][c] = range(nxt, nxt + count)
                nxt += count
        perm = []
        for c in range(table.cols):
            for r in range(table.rows):
                perm.extend(box_values[r][c])
        u = self.id_of(perm)
        full = self.table.full_mask
        face = Face(
            full ^ self._global_mask(row_bars), u, full ^ self._global_mask(col_bars)
        )
        if not is_minimal_rep(self.table, face.left, face.w, face.right):
            raise InternalCheckError("sorted representative is not minimal")
        return face


# ---------------------------------------------------------------------------
# Refinement order on tables


def lower_covers(table: ContingencyTable) -> list[ContingencyTable]:
    """Merge each adjacent row pair and each adjacent column pair."""
    out = []
    cells = table.cells
    for k in range(table.rows - 1):
        merged = tuple(a + b for a, b in zip(cells[k], cells[k + 1]))
        out.append(ContingencyTable(cells[:k] + (merged,) + cells[k + 2 :]))
    transposed = table.transpose()
    for k in range(table.cols - 1):
        cells_t = transposed.cells
        merged = tuple(a + b for a, b in zip(cells_t[k], cells_t[k + 1]))
        out.append(
            ContingencyTable(cells_t[:k] + (merged,) + cells_t[k + 2 :]).transpose()
        )
    return out


def _row_splits(vector: tuple[int, ...]):
    for low in itertools.product(*(range(x + 1) for x in vector)):
        if not any(low):
            continue
        high = tuple(a - b for a, b in zip(vector, low))
        if not any(high):
            continue
        yield low, high


def upper_covers(table: ContingencyTable) -> list[ContingencyTable]:
    """Split one row (or column) into two in every possible way."""
    seen = set()
    out = []
    cells = table.cells
    for k in range(table.rows):
        for low, high in _row_splits(cells[k]):
            cover = ContingencyTable(cells[:k] + (low, high) + cells[k + 1 :])
            if cover not in seen:
                seen.add(cover)
                out.append(cover)
    transposed = table.transpose()
    for k in range(table.cols):
        for low, high in _row_splits(transposed.cells[k]):
            cover = ContingencyTable(
                transposed.cells[:k] + (low, high) + transposed.cells[k + 1 :]
            ).transpose()
            if cover not in seen:
                seen.add(cover)
                out.append(cover)
    return out


def _grouping(coarse_sums: list[int], fine_sums: list[int]) -> list[int] | None:
    """Consecutive group sizes of fine parts matching coarse parts, if any."""
    sizes = []
    k = 0
    for target in coarse_sums:
        acc = 0
        size = 0
        while acc < target:
            if k >= len(fine_sums):
                return None
            acc += fine_sums[k]
            k += 1
            size += 1
        if acc != target:
            return None
        sizes.append(size)
    return sizes if k == len(fine_sums) else None


def refinement_leq(coarse: ContingencyTable, fine: ContingencyTable) -> bool:
    """Whether ``fine`` refines ``coarse``: consecutive row and column
    blocks of ``fine`` aggregate cell-by-cell to ``coarse``."""
    if coarse.total != fine.total:
        raise ValueError("tables must have equal totals")
    row_sizes = _grouping(coarse.row_sums(), fine.row_sums())
    col_sizes = _grouping(coarse.col_sums(), fine.col_sums())
    if row_sizes is None or col_sizes is None:
        return False
    merged = []
    k = 0
    for size in row_sizes:
        block = fine.cells[k : k + size]
        k += size
        merged.append([sum(col) for col in zip(*block)])
    aggregated = []
    for row in merged:
        out_row = []
        j = 0
        for size in col_sizes:
            out_row.append(sum(row[j : j + size]))
            j += size
        aggregated.append(tuple(out_row))
    return tuple(aggregated) == coarse.cells


def ordered_set_partition(table: ContingencyTable) -> tuple[frozenset[int], ...]:
    """Blocks of an n-row table (each row sum 1), one per column: the rows
    with a nonzero entry, counted bottom to top."""
    if any(total != 1 for total in table.row_sums()):
        raise ValueError("ordered set partitions need every row sum equal to 1")
    blocks = []
    for j in range(table.cols):
        blocks.append(
            frozenset(r + 1 for r in range(table.rows) if table.cells[r][j])
        )
    return tuple(blocks)


# ---------------------------------------------------------------------------
# Independent enumeration and the order isomorphism


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_tables(n: int) -> list[ContingencyTable]:
    """All contingency tables with total n, by direct enumeration."""
    out = []
    for r in range(1, n + 1):
        for row_sums in _compositions(n, r):
            for c in range(1, n + 1):
                choices = [
                    list(
                        low
                        for low in itertools.product(
                            *(range(total + 1) for _ in range(c))
                        )
                        if sum(low) == total
                    )
                    for total in row_sums
                ]
                for rows in itertools.product(*choices):
                    if all(
                        sum(row[j] for row in rows) >= 1 for j in range(c)
                    ):
                        out.append(ContingencyTable(tuple(rows)))
    return out


def verify_refinement_isomorphism(table: GroupTable) -> bool:
    """Whether faces map bijectively and order-isomorphically onto tables.

    Checks round trips, surjectivity against :func:`enumerate_tables`, and
    that the cover relations computed on each side (interval covers in the
    complex; splits and merges on tables) produce the same edges.
    """
    model = SymmetricGroupFaces(table)
    cx = TwoSidedComplex.build(table)
    mapping = {face: model.face_to_table(face) for face in cx.faces}
    if len(set(mapping.values())) != len(cx.faces):
        return False
    for face, tab in mapping.items():
        if model.table_to_face(tab) != face:
            return False
        if tab.order_rank != cx.face_rank(face):  # both count the bars
            return False
    if set(mapping.values()) != set(enumerate_tables(model.n)):
        return False
    complex_edges = set()
    for face in cx.faces:
        for below in cx.down_covers(face):
            complex_edges.add((mapping[below], mapping[face]))
    split_edges = set()
    merge_edges = set()
    for tab in mapping.values():
        for above in upper_covers(tab):
            split_edges.add((tab, above))
        for below in lower_covers(tab):
            merge_edges.add((below, tab))
    return complex_edges == split_edges == merge_edges


# ---------------------------------------------------------------------------
# k-way tables


@dataclass(frozen=True)
class KWayTable:
    """Flat k-dimensional array of nonnegative ints with positive marginals."""

    shape: tuple[int, ...]
    cells: tuple[int, ...]

    def __post_init__(self):
        if len(self.shape) < 2:
            raise ValueError("need at least two axes")
        if math.prod(self.shape) != len(self.cells):
            raise ValueError("cell count does not match shape")
        if any(x < 0 for x in self.cells):
            raise ValueError("negative entry")
        for axis in range(len(self.shape)):
            for index in range(self.shape[axis]):
                if self.marginal(axis, index) < 1:
                    raise ValueError(f"zero marginal on axis {axis} slice {index}")

    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for size in reversed(self.shape):
            out.append(acc)
            acc *= size
        return tuple(reversed(out))

    def marginal(self, axis: int, index: int) -> int:
        strides = self.strides()
        total = 0
        for flat, value in enumerate(self.cells):
            if (flat // strides[axis]) % self.shape[axis] == index:
                total += value
        return total

    @property
    def total(self) -> int:
        return sum(self.cells)


def kway_maximal_count(k: int, n: int) -> int:
    """The number of maximal k-way tables of n objects (unit marginals).

    Maximal tables have shape n^k with entries 0/1; enumerated by brute
    force over the placements of n ones.
    """
    if k < 2 or n < 1 or n**k > 64 or n > 4:
        raise CapacityError(f"k-way maximal enumeration limited to small (k, n), got ({k}, {n})")
    cells = list(itertools.product(range(n), repeat=k))
    count = 0
    for chosen in itertools.combinations(range(len(cells)), n):
        coords = [cells[i] for i in chosen]
        if all(
            len({c[axis] for c in coords}) == n for axis in range(k)
        ):
            count += 1
    return count
