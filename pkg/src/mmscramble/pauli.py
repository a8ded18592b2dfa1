"""Phaseless Pauli strings in the binary (X-block, Z-block) representation."""

from __future__ import annotations

import numpy as np

from .gf2core import BitMatrix, BitVec

_CHARS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _CHARS.items()}


class PauliVec:
    """An n-qubit Pauli string with its phase discarded.

    ``bits[q]`` is the X bit and ``bits[n + q]`` the Z bit of qubit ``q``.
    Multiplication is XOR of the bit vectors.
    """

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: BitVec | None = None):
        self.n = int(n)
        self.bits = BitVec(2 * self.n) if bits is None else bits
        if self.bits.len != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} bits, got {self.bits.len}")

    @classmethod
    def identity(cls, n: int) -> PauliVec:
        return cls(n)

    @classmethod
    def from_xz(cls, x: np.ndarray, z: np.ndarray) -> PauliVec:
        x = np.asarray(x, dtype=bool)
        z = np.asarray(z, dtype=bool)
        if x.shape != z.shape:
            raise ValueError("x and z blocks differ in length")
        return cls(len(x), BitVec.from_bits(np.concatenate([x, z])))

    @property
    def x(self) -> np.ndarray:
        return self.bits.to_bits()[: self.n]

    @property
    def z(self) -> np.ndarray:
        return self.bits.to_bits()[self.n :]

    def support(self) -> list[int]:
        b = self.bits.to_bits()
        return np.flatnonzero(b[: self.n] | b[self.n :]).tolist()

    def __mul__(self, other: PauliVec) -> PauliVec:
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        return PauliVec(self.n, self.bits ^ other.bits)

    __xor__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliVec):
            return NotImplemented
        return self.n == other.n and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __str__(self) -> str:
        return format_pauli(self)

    def __repr__(self) -> str:
        return f"PauliVec({format_pauli(self)!r})"


def single(n: int, q: int, kind: str) -> PauliVec:
    """The Pauli ``kind`` (X, Y or Z) on qubit ``q`` of an n-qubit register."""
    if not 0 <= q < n:
        raise IndexError(f"qubit {q} out of range for n={n}")
    kind = kind.upper()
    if kind not in ("X", "Y", "Z"):
        raise ValueError(f"unknown Pauli kind {kind!r}")
    xb, zb = _BITS[kind]
    idx = ([q] if xb else []) + ([n + q] if zb else [])
    return PauliVec(n, BitVec.from_indices(2 * n, idx))


def size(p: PauliVec) -> int:
    """Number of qubits acted on non-trivially."""
    b = p.bits.to_bits()
    return int(np.count_nonzero(b[: p.n] | b[p.n :]))


def parse(s: str) -> PauliVec:
    s = s.strip().upper()
    bad = set(s) - set("IXYZ")
    if bad:
        raise ValueError(f"invalid Pauli characters: {''.join(sorted(bad))}")
    x = np.array([_BITS[c][0] for c in s], dtype=bool)
    z = np.array([_BITS[c][1] for c in s], dtype=bool)
    return PauliVec.from_xz(x, z)


def format_pauli(p: PauliVec) -> str:
    b = p.bits.to_bits().astype(int)
    return "".join(_CHARS[(b[q], b[p.n + q])] for q in range(p.n))


def symplectic_product(p1: PauliVec, p2: PauliVec) -> int:
    """1 if the two Paulis anticommute, else 0."""
    if p1.n != p2.n:
        raise ValueError("qubit counts differ")
    a, b = p1.bits.to_bits(), p2.bits.to_bits()
    n = p1.n
    return int((np.count_nonzero(a[:n] & b[n:]) + np.count_nonzero(a[n:] & b[:n])) % 2)


def column_sizes(cols: BitMatrix) -> np.ndarray:
    """Operator size of every column of a ``2n x k`` matrix of Paulis."""
    if cols.rows % 2:
        raise ValueError("row count must be even")
    n = cols.rows // 2
    occupied = BitMatrix(n, cols.cols, cols.data[:n] | cols.data[n:])
    return occupied.column_weights()


def symplectic_gram(cols: BitMatrix) -> np.ndarray:
    """Pairwise symplectic products of the columns of ``cols``."""
    n = cols.rows // 2
    d = cols.to_dense().astype(np.int64)
    x, z = d[:n], d[n:]
    return (x.T @ z + z.T @ x) % 2


def to_columns(paulis: list[PauliVec]) -> BitMatrix:
    return BitMatrix.from_columns([p.bits for p in paulis])


def from_column(cols: BitMatrix, j: int) -> PauliVec:
    return PauliVec(cols.rows // 2, cols.column(j))
