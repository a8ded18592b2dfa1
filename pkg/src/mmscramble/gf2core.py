"""Bit-packed vectors and matrices over GF(2).

Rows are stored as little-endian ``uint64`` words: bit ``c`` of a row lives in
word ``c // 64`` at position ``c % 64``.  Bits past the logical length are
always zero.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

WORD = 64
_ONE = np.uint64(1)


def _nwords(nbits: int) -> int:
    return (nbits + WORD - 1) // WORD


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into ``uint64`` words along the last axis."""
    bits = np.asarray(bits, dtype=bool)
    rows, cols = bits.shape
    nw = _nwords(cols)
    padded = np.zeros((rows, nw * WORD), dtype=bool)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64, copy=False).reshape(rows, nw)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols), dtype=bool)
    as_bytes = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little", count=cols)
    return bits.astype(bool)


class BitVec:
    """A fixed-length GF(2) vector."""

    __slots__ = ("len", "words")

    def __init__(self, length: int, words: np.ndarray | None = None):
        self.len = int(length)
        if words is None:
            words = np.zeros(_nwords(self.len), dtype=np.uint64)
        self.words = np.asarray(words, dtype=np.uint64)
        if self.words.shape != (_nwords(self.len),):
            raise ValueError("word buffer does not match length")

    @classmethod
    def from_bits(cls, bits: Sequence[int] | np.ndarray) -> BitVec:
        arr = np.asarray(bits, dtype=bool).reshape(1, -1)
        return cls(arr.shape[1], _pack(arr)[0])

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVec:
        arr = np.zeros(length, dtype=bool)
        idx = list(indices)
        if idx and (min(idx) < 0 or max(idx) >= length):
            raise IndexError("bit index out of range")
        arr[idx] = True
        return cls.from_bits(arr)

    def __len__(self) -> int:
        return self.len

    def to_bits(self) -> np.ndarray:
        return _unpack(self.words.reshape(1, -1), self.len)[0]

    def indices(self) -> list[int]:
        return np.flatnonzero(self.to_bits()).tolist()

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.len:
            raise IndexError(i)
        return int((self.words[i // WORD] >> np.uint64(i % WORD)) & _ONE)

    def __xor__(self, other: BitVec) -> BitVec:
        if self.len != other.len:
            raise ValueError(f"length mismatch: {self.len} vs {other.len}")
        return BitVec(self.len, self.words ^ other.words)

    __add__ = __xor__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVec):
            return NotImplemented
        return self.len == other.len and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.len, self.words.tobytes()))

    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def any(self) -> bool:
        return bool(self.words.any())

    def __repr__(self) -> str:
        return "BitVec(" + "".join("1" if b else "0" for b in self.to_bits()) + ")"


class BitMatrix:
    """A dense GF(2) matrix with bit-packed rows.

    Instances are treated as immutable: every operation returns a new matrix.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        if data is None:
            data = np.zeros((self.rows, _nwords(self.cols)), dtype=np.uint64)
        self.data = np.asarray(data, dtype=np.uint64)
        if self.data.shape != (self.rows, _nwords(self.cols)):
            raise ValueError("word buffer does not match shape")

    # construction -----------------------------------------------------

    @classmethod
    def from_dense(cls, arr: Sequence[Sequence[int]] | np.ndarray) -> BitMatrix:
        a = np.asarray(arr, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls(a.shape[0], a.shape[1], _pack(a))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_rows(cls, vecs: Sequence[BitVec], cols: int | None = None) -> BitMatrix:
        if not vecs:
            return cls(0, cols or 0)
        width = vecs[0].len
        if any(v.len != width for v in vecs):
            raise ValueError("rows have different lengths")
        return cls(len(vecs), width, np.stack([v.words for v in vecs]))

    @classmethod
    def from_columns(cls, vecs: Sequence[BitVec], rows: int | None = None) -> BitMatrix:
        if not vecs:
            return cls(rows or 0, 0)
        return cls.from_rows(vecs).transpose()

    def to_dense(self) -> np.ndarray:
        return _unpack(self.data, self.cols).astype(np.uint8)

    def copy(self) -> BitMatrix:
        return BitMatrix(self.rows, self.cols, self.data.copy())

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        r, c = key
        return int((self.data[r, c // WORD] >> np.uint64(c % WORD)) & _ONE)

    def row(self, i: int) -> BitVec:
        return BitVec(self.cols, self.data[i].copy())

    def column(self, j: int) -> BitVec:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        bits = (self.data[:, j // WORD] >> np.uint64(j % WORD)) & _ONE
        return BitVec.from_bits(bits.astype(bool))

    def select_rows(self, idx: Sequence[int] | np.ndarray) -> BitMatrix:
        idx = np.asarray(idx, dtype=np.intp)
        return BitMatrix(len(idx), self.cols, self.data[idx])

    def select_columns(self, idx: Sequence[int] | np.ndarray) -> BitMatrix:
        idx = np.asarray(idx, dtype=np.intp)
        return BitMatrix.from_dense(self.to_dense()[:, idx])

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def column_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0, dtype=np.int64)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __xor__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return BitMatrix(self.rows, self.cols, self.data ^ other.data)

    __add__ = __xor__

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return matmul(self, other)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def hstack(mats: Sequence[BitMatrix]) -> BitMatrix:
    """Concatenate matrices side by side (the augmented matrix ``[a b ...]``)."""
    rows = {m.rows for m in mats}
    if len(rows) != 1:
        raise ValueError(f"row counts differ: {sorted(rows)}")
    return BitMatrix.from_dense(np.hstack([m.to_dense() for m in mats]))


def vstack(mats: Sequence[BitMatrix]) -> BitMatrix:
    cols = {m.cols for m in mats}
    if len(cols) != 1:
        raise ValueError(f"column counts differ: {sorted(cols)}")
    return BitMatrix(sum(m.rows for m in mats), cols.pop(), np.vstack([m.data for m in mats]))


# linear algebra -------------------------------------------------------


def _eliminate(data: np.ndarray, cols: int, pivot_cols: int, full: bool) -> tuple[np.ndarray, list[int]]:
    """Gaussian elimination on a private copy of packed rows.

    Only the first ``pivot_cols`` columns are used as pivots.  With ``full``
    the result is reduced (entries above pivots cleared too).
    """
    m = data.copy()
    nrows = m.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(min(cols, pivot_cols)):
        if r == nrows:
            break
        w = c // WORD
        mask = _ONE << np.uint64(c % WORD)
        below = np.flatnonzero(m[r:, w] & mask)
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        if full:
            hits = np.flatnonzero(m[:, w] & mask)
            hits = hits[hits != r]
        else:
            hits = r + 1 + np.flatnonzero(m[r + 1:, w] & mask)
        if hits.size:
            m[hits] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m: BitMatrix) -> int:
    """Row rank of ``m`` over GF(2)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminating along the shorter side is cheaper; rank is transpose-invariant
    if m.cols > 4 * m.rows and m.rows > 0:
        m = m.transpose()
    _, pivots = _eliminate(m.data, m.cols, m.cols, full=False)
    return len(pivots)


def rref(m: BitMatrix, pivot_cols: int | None = None) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form and its (strictly increasing) pivot columns.

    ``pivot_cols`` restricts pivoting to the leading columns, which is what an
    augmented system ``[a | b]`` needs.
    """
    limit = m.cols if pivot_cols is None else pivot_cols
    red, pivots = _eliminate(m.data, m.cols, limit, full=True)
    return BitMatrix(m.rows, m.cols, red), pivots


def colspace_contains(a: BitMatrix, b: BitMatrix) -> bool:
    """True iff every column of ``b`` lies in the column span of ``a``."""
    if a.rows != b.rows:
        raise ValueError(f"row counts differ: {a.rows} vs {b.rows}")
    if b.cols == 0:
        return True
    return rank(hstack([a, b])) == rank(a)


def solve(a: BitMatrix, b: BitMatrix) -> list[BitVec | None]:
    """For each column ``y`` of ``b`` find some ``x`` with ``a @ x == y``.

    Returns one entry per column of ``b``; ``None`` where no solution exists.
    """
    if a.rows != b.rows:
        raise ValueError(f"row counts differ: {a.rows} vs {b.rows}")
    aug = hstack([a, b])
    red, pivots = rref(aug, pivot_cols=a.cols)
    dense = red.to_dense()
    npiv = len(pivots)
    out: list[BitVec | None] = []
    for j in range(b.cols):
        col = dense[:, a.cols + j]
        if col[npiv:].any():
            out.append(None)
            continue
        x = np.zeros(a.cols, dtype=bool)
        x[pivots] = col[:npiv].astype(bool)
        out.append(BitVec.from_bits(x))
    return out


# products ----------------------------------------------------------------

_SPARSE_ROW_LIMIT = 48


def _row_supports(dense: np.ndarray) -> np.ndarray | None:
    """Padded per-row support indices, or None if rows are too heavy."""
    weights = dense.sum(axis=1, dtype=np.intp)
    width = int(weights.max()) if dense.shape[0] else 0
    if width > _SPARSE_ROW_LIMIT:
        return None
    pad = dense.shape[1]
    idx = np.full((dense.shape[0], max(width, 1)), pad, dtype=np.intp)
    rows, cols = np.nonzero(dense)
    # position of each nonzero within its row
    starts = np.concatenate((np.zeros(1, dtype=np.intp), np.cumsum(weights)[:-1]))
    pos = np.arange(rows.size) - starts[rows]
    idx[rows, pos] = cols
    return idx


def gather_xor(supports: np.ndarray, data: np.ndarray) -> np.ndarray:
    """``out[i] = XOR_k data[supports[i, k]]``; index ``len(data)`` is a zero row."""
    padded = np.vstack([data, np.zeros((1, data.shape[1]), dtype=np.uint64)])
    return np.bitwise_xor.reduce(padded[supports], axis=1)


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """GF(2) matrix product ``a @ b``."""
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions differ: {a.shape} @ {b.shape}")
    if a.rows == 0 or b.cols == 0:
        return BitMatrix(a.rows, b.cols)
    if a.cols == 0:
        return BitMatrix(a.rows, b.cols)
    da = a.to_dense()
    supports = _row_supports(da)
    if supports is not None:
        return BitMatrix(a.rows, b.cols, gather_xor(supports, b.data))
    # dense fallback: integer sums stay exact in float64 far past any size used here
    dtype = np.float32 if a.cols < (1 << 24) else np.float64
    prod = da.astype(dtype) @ b.to_dense().astype(dtype)
    return BitMatrix.from_dense(np.remainder(prod, 2).astype(np.uint8))


def matvec(a: BitMatrix, v: BitVec) -> BitVec:
    if a.cols != v.len:
        raise ValueError(f"dimension mismatch: {a.shape} @ {v.len}")
    col = BitMatrix(1, v.len, v.words.reshape(1, -1)).transpose()
    return matmul(a, col).column(0)
