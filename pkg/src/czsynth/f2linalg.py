"""Dense GF(2) linear algebra on bit-packed rows.

Rows are Python ints used as bit vectors (bit j = column j), which keeps
row operations at word speed without any external dependency.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Set, Tuple


class BitMatrix:
    """A rows x cols matrix over GF(2), one int per row.

    Bits at positions >= cols are kept at zero so that whole-row XOR and
    equality behave like vector operations.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[Sequence[int]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        mask = (1 << cols) - 1
        if data is None:
            self.data = [0] * rows
        else:
            if len(data) != rows:
                raise ValueError(f"expected {rows} rows, got {len(data)}")
            self.data = [r & mask for r in data]

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: Optional[int] = None) -> "BitMatrix":
        rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        data = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
            word = 0
            for j, bit in enumerate(row):
                if bit & 1:
                    word |= 1 << j
            data.append(word)
        return cls(rows, cols, data)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    def get(self, i: int, j: int) -> int:
        self._check(i, j)
        return (self.data[i] >> j) & 1

    def set(self, i: int, j: int, bit: int) -> None:
        self._check(i, j)
        if bit & 1:
            self.data[i] |= 1 << j
        else:
            self.data[i] &= ~(1 << j)

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i},{j}) out of range for {self.rows}x{self.cols}")

    def row_list(self, i: int) -> List[int]:
        word = self.data[i]
        return [(word >> j) & 1 for j in range(self.cols)]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, list(self.data))

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, word in enumerate(self.data):
            while word:
                low = word & -word
                out[low.bit_length() - 1] |= 1 << i
                word ^= low
        return BitMatrix(self.cols, self.rows, out)

    def mul_vec(self, x: int) -> int:
        """Return m @ x over GF(2); x is a cols-bit mask, result a rows-bit mask."""
        x &= (1 << self.cols) - 1
        out = 0
        for i, word in enumerate(self.data):
            if (word & x).bit_count() & 1:
                out |= 1 << i
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        body = ",".join(format(w, f"0{max(self.cols, 1)}b")[::-1] for w in self.data)
        return f"BitMatrix({self.rows}x{self.cols}:[{body}])"


def rank(m: BitMatrix) -> int:
    """GF(2) row rank by Gaussian elimination on a scratch copy."""
    work = list(m.data)
    r = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = None
        for i in range(r, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] & bit):
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def find_dependent_row(m: BitMatrix) -> Optional[Tuple[int, Set[int]]]:
    """First row (top to bottom) expressible as a GF(2) sum of earlier rows.

    Returns (v, T) with v not in T and row v == xor of rows in T, or None when
    the rows are independent.  T is empty for a zero row.  Rows are folded into
    a growing basis; each basis vector remembers which original rows it sums,
    so T falls out of the elimination record.
    """
    basis = {}  # lowest set bit -> (row value, combination mask over original rows)
    for v in range(m.rows):
        value = m.data[v]
        combo = 0
        while value:
            pivot = value & -value
            if pivot not in basis:
                break
            bval, bcombo = basis[pivot]
            value ^= bval
            combo ^= bcombo
        if value == 0:
            return v, {i for i in range(v) if (combo >> i) & 1}
        basis[value & -value] = (value, combo | (1 << v))
    return None


def solve(m: BitMatrix, b: int) -> Optional[int]:
    """Some x with m @ x == b over GF(2), or None when inconsistent.

    b and the returned x are bit masks (rows and cols bits respectively).
    Free variables are set to zero, so the answer is deterministic.
    """
    b &= (1 << max(m.rows, 1)) - 1
    work = list(m.data)
    rhs = [(b >> i) & 1 for i in range(m.rows)]
    pivot_cols: List[int] = []
    r = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = None
        for i in range(r, m.rows):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        rhs[r], rhs[pivot] = rhs[pivot], rhs[r]
        for i in range(m.rows):
            if i != r and (work[i] & bit):
                work[i] ^= work[r]
                rhs[i] ^= rhs[r]
        pivot_cols.append(col)
        r += 1
        if r == m.rows:
            break
    for i in range(r, m.rows):
        if rhs[i]:
            return None
    x = 0
    for i, col in enumerate(pivot_cols):
        if rhs[i]:
            x |= 1 << col
    return x


def vec_from_bits(bits: Sequence[int]) -> int:
    word = 0
    for j, bit in enumerate(bits):
        if bit & 1:
            word |= 1 << j
    return word


def bits_from_vec(word: int, length: int) -> List[int]:
    return [(word >> j) & 1 for j in range(length)]
