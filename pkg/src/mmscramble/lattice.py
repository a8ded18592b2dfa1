"""Qubit indexing on N x N arrays and the row/column shuffle.

Lattice labels are 1-based ``(layer, i, j)`` as in the model's matrix
notation; linear qubit indices are 0-based.  A double layout stores every
bottom-layer (B) qubit first, row-major, followed by the top layer (T) in its
own ``(i, j)`` labels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cliffordmap import CliffordMap
from .gf2core import BitMatrix

LAYER_NAMES = {"single": ("Q",), "double": ("B", "T")}


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class LayerLayout:
    kind: str
    N: int

    def __post_init__(self):
        if self.kind not in LAYER_NAMES:
            raise LatticeError(f"unknown layout kind {self.kind!r}")
        if self.N < 1:
            raise LatticeError("N must be positive")

    @classmethod
    def single(cls, N: int) -> LayerLayout:
        return cls("single", N)

    @classmethod
    def double(cls, N: int) -> LayerLayout:
        return cls("double", N)

    @property
    def layers(self) -> int:
        return len(LAYER_NAMES[self.kind])

    @property
    def total(self) -> int:
        return self.layers * self.N * self.N

    def layer_name(self, layer: int) -> str:
        return LAYER_NAMES[self.kind][layer]

    def index(self, layer: int, i: int, j: int) -> int:
        N = self.N
        if not (0 <= layer < self.layers and 1 <= i <= N and 1 <= j <= N):
            raise LatticeError(f"label ({layer}, {i}, {j}) outside {self.kind} layout with N={N}")
        return layer * N * N + (i - 1) * N + (j - 1)

    def label(self, q: int) -> tuple[int, int, int]:
        if not 0 <= q < self.total:
            raise LatticeError(f"qubit {q} out of range")
        layer, rem = divmod(q, self.N * self.N)
        i, j = divmod(rem, self.N)
        return layer, i + 1, j + 1

    def format_label(self, q: int) -> str:
        layer, i, j = self.label(q)
        return f"{self.layer_name(layer)}:{i},{j}"

    def parse_label(self, text: str) -> int:
        """Inverse of :meth:`format_label`; a bare ``i,j`` means layer 0."""
        text = text.strip()
        layer = 0
        if ":" in text:
            name, text = text.split(":", 1)
            names = LAYER_NAMES[self.kind]
            if name not in names:
                raise LatticeError(f"unknown layer {name!r} for {self.kind} layout")
            layer = names.index(name)
        i, j = (int(v) for v in text.split(","))
        return self.index(layer, i, j)


def sigma(i: int, N: int) -> int:
    """The shuffle sending odd rows/columns to the front and even ones to the back."""
    if N % 2:
        raise LatticeError(f"shuffle needs even N, got {N}")
    if not 1 <= i <= N:
        raise LatticeError(f"index {i} outside 1..{N}")
    return (i + 1) // 2 if i % 2 else (i + N) // 2


def sigma_table(N: int) -> list[int]:
    return [sigma(i, N) for i in range(1, N + 1)]


def qubit_permutation(layout: LayerLayout) -> np.ndarray:
    """``perm[q]`` is where the content of qubit ``q`` goes after one shuffle."""
    N = layout.N
    s = np.array(sigma_table(N)) - 1
    perm = np.empty(layout.total, dtype=np.intp)
    for layer in range(layout.layers):
        base = layer * N * N
        i, j = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
        perm[base + (i * N + j).ravel()] = base + (s[i] * N + s[j]).ravel()
    return perm


def build_perm_map(layout: LayerLayout) -> CliffordMap:
    """Clifford map of the shuffle: X and Z blocks are permuted identically."""
    perm = qubit_permutation(layout)
    n = layout.total
    dense = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    src = np.arange(n)
    dense[perm, src] = 1
    dense[n + perm, n + src] = 1
    return CliffordMap(n, BitMatrix.from_dense(dense))


def bit_rotation_check(N: int) -> bool:
    """Check that the shuffle is a right rotation of the bits of ``i - 1``."""
    if N < 1 or N & (N - 1):
        raise LatticeError(f"N must be a power of two, got {N}")
    k = N.bit_length() - 1
    if k == 0:
        return True
    for x in range(1, N + 1):
        y = x - 1
        rotated = (y >> 1) | ((y & 1) << (k - 1))
        if sigma(x, N) != rotated + 1:
            return False
    return True
