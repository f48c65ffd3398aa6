"""Exact GF(2) matrix arithmetic with bitset rows.

Rows are stored as Python ints, bit ``j`` of ``data[i]`` being the entry in
row ``i``, column ``j``.  Nullity is the quantity everything downstream cares
about: it is evaluated once per vertex subset inside the bracket state sum,
so elimination works on machine words rather than element arrays.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def rank_of_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a collection of bitset rows.

    Maintains a triangular basis: every stored pivot row has a lowest set
    bit that no other pivot row shares, so reducing a new row against the
    basis is a handful of XORs.
    """
    pivots: list[int] = []
    lows: list[int] = []
    for row in rows:
        for i in range(len(pivots)):
            if row & lows[i]:
                row ^= pivots[i]
        if row:
            pivots.append(row)
            lows.append(row & -row)
    return len(pivots)


class Gf2Matrix:
    """Immutable matrix over GF(2).

    Dimensions may be zero; the 0x0 matrix has rank 0 and nullity 0.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[int] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        data = tuple(data) if data else tuple(0 for _ in range(rows))
        if len(data) != rows:
            raise ValueError(f"expected {rows} rows, got {len(data)}")
        mask = (1 << cols) - 1
        for r in data:
            if r & ~mask:
                raise ValueError("row has bits beyond the column count")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        """Build from nested 0/1 iterables (one inner sequence per row)."""
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        data = []
        for r in rows:
            word = 0
            for j, x in enumerate(r):
                if x not in (0, 1):
                    raise ValueError(f"entry {x!r} is not a GF(2) value")
                word |= x << j
            data.append(word)
        return cls(n, m, data)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError("matrix index out of range")
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def rank(self) -> int:
        return rank_of_rows(self.data)

    def delete_rowcols(self, indices: Iterable[int]) -> "Gf2Matrix":
        """Remove row i and column i for every i in ``indices``.

        Only meaningful for square matrices; surviving rows and columns keep
        their relative order.
        """
        if self.rows != self.cols:
            raise ValueError("simultaneous row/column deletion needs a square matrix")
        drop = set(indices)
        for i in drop:
            if not 0 <= i < self.rows:
                raise IndexError(f"index {i} out of range")
        keep = [i for i in range(self.rows) if i not in drop]
        data = []
        for i in keep:
            word = 0
            for new_j, j in enumerate(keep):
                word |= ((self.data[i] >> j) & 1) << new_j
            data.append(word)
        return Gf2Matrix(len(keep), len(keep), data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(
            "".join(str((r >> j) & 1) for j in range(self.cols)) for r in self.data
        )
        return f"Gf2Matrix({self.rows}x{self.cols}: {body})"


def nullity(m: Gf2Matrix) -> int:
    """Column count minus GF(2) rank; kernel dimension for square matrices."""
    return m.cols - m.rank()
