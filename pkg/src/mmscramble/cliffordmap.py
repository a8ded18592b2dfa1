"""Clifford gates as symplectic GF(2) matrices.

A map acts on column vectors in the (X-block, Z-block) layout of
:class:`~mmscramble.pauli.PauliVec`.  Gate products are written the way they
are printed, left to right, and the rightmost gate acts on operators first;
for column vectors that is simply the matrix product in printed order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf2core import BitMatrix, matmul, matvec
from .pauli import PauliVec

GATE_ARITY = {"H": 1, "S": 1, "CNOT": 2}

W = "S q4; CNOT q4 q1; CNOT q1 q2; CNOT q2 q3; CNOT q3 q4; H q1"
W_NEW = (
    "CNOT q3 q2; S q3; CNOT q2 q4; CNOT q1 q3; H q3; "
    "CNOT q4 q1; CNOT q1 q2; CNOT q2 q3; CNOT q3 q4; H q1"
)
PRESETS = {"W": W, "W_new": W_NEW, "identity": ""}


class CliffordError(ValueError):
    pass


@dataclass(frozen=True)
class CliffordMap:
    n: int
    m: BitMatrix

    def __post_init__(self):
        if self.m.shape != (2 * self.n, 2 * self.n):
            raise CliffordError(f"expected a {2 * self.n}x{2 * self.n} matrix, got {self.m.shape}")

    @classmethod
    def identity(cls, n: int) -> CliffordMap:
        return cls(n, BitMatrix.identity(2 * n))

    def apply(self, p: PauliVec) -> PauliVec:
        if p.n != self.n:
            raise CliffordError(f"map on {self.n} qubits applied to {p.n}-qubit Pauli")
        return PauliVec(self.n, matvec(self.m, p.bits))

    def apply_columns(self, cols: BitMatrix) -> BitMatrix:
        if cols.rows != 2 * self.n:
            raise CliffordError(f"expected {2 * self.n} rows, got {cols.rows}")
        return matmul(self.m, cols)

    def __call__(self, p: PauliVec) -> PauliVec:
        return self.apply(p)


@dataclass(frozen=True)
class GateSpec:
    """Ordered gate list; slots are 0-based (``q1`` is slot 0)."""

    gates: tuple[tuple[str, tuple[int, ...]], ...]

    @classmethod
    def parse(cls, text: str) -> GateSpec:
        text = PRESETS.get(text.strip(), text)
        gates = []
        for chunk in re.split(r"[;\n]", text):
            tokens = chunk.replace(",", " ").split()
            if not tokens:
                continue
            name = tokens[0].upper()
            if name not in GATE_ARITY:
                raise CliffordError(f"unknown gate {tokens[0]!r}")
            slots = []
            for tok in tokens[1:]:
                m = re.fullmatch(r"[qQ]?(\d+)", tok)
                if not m or int(m.group(1)) < 1:
                    raise CliffordError(f"bad qubit slot {tok!r}")
                slots.append(int(m.group(1)) - 1)
            if len(slots) != GATE_ARITY[name]:
                raise CliffordError(f"{name} takes {GATE_ARITY[name]} slot(s), got {len(slots)}")
            gates.append((name, tuple(slots)))
        return cls(tuple(gates))

    def __str__(self) -> str:
        return "; ".join(f"{g} " + " ".join(f"q{s + 1}" for s in slots) for g, slots in self.gates)

    def num_slots(self) -> int:
        return max((max(s) + 1 for _, s in self.gates), default=0)


def _elementary_dense(name: str, slots: Sequence[int], k: int) -> np.ndarray:
    m = np.eye(2 * k, dtype=np.uint8)
    if name == "H":
        (q,) = slots
        m[[q, k + q]] = m[[k + q, q]]
    elif name == "S":
        (q,) = slots
        m[k + q, q] = 1
    elif name == "CNOT":
        c, t = slots
        if c == t:
            raise CliffordError("CNOT control and target coincide")
        m[t, c] = 1  # X_c -> X_c X_t
        m[k + c, k + t] = 1  # Z_t -> Z_c Z_t
    else:
        raise CliffordError(f"unknown gate {name!r}")
    return m


def elementary(name: str, slots: Sequence[int] = None, k: int | None = None) -> CliffordMap:
    """H, S or CNOT on ``k`` qubits (default: just the gate's own qubits)."""
    name = name.upper()
    if name not in GATE_ARITY:
        raise CliffordError(f"unknown gate {name!r}")
    if slots is None:
        slots = tuple(range(GATE_ARITY[name]))
    if len(slots) != GATE_ARITY[name]:
        raise CliffordError(f"{name} takes {GATE_ARITY[name]} slot(s)")
    if len(set(slots)) != len(slots):
        raise CliffordError("duplicate gate slots")
    k = max(slots) + 1 if k is None else k
    if max(slots) >= k or min(slots) < 0:
        raise CliffordError("slot out of range")
    return CliffordMap(k, BitMatrix.from_dense(_elementary_dense(name, slots, k)))


def compile_spec(spec: GateSpec | str, k: int = 4) -> CliffordMap:
    """Symplectic map of a gate product; the rightmost gate acts first."""
    if isinstance(spec, str):
        spec = GateSpec.parse(spec)
    if spec.num_slots() > k:
        raise CliffordError(f"spec uses slot q{spec.num_slots()} but only {k} qubits")
    acc = np.eye(2 * k, dtype=np.int64)
    for name, slots in spec.gates:
        acc = (acc @ _elementary_dense(name, slots, k)) % 2
    return CliffordMap(k, BitMatrix.from_dense(acc))


def _embed_dense(local: np.ndarray, k: int, positions: np.ndarray, n: int, out: np.ndarray) -> None:
    # positions: (num_subsets, k); writes local blocks into ``out`` in place
    glob = np.concatenate([positions, positions + n], axis=1)  # (num, 2k)
    rows = glob[:, :, None]
    cols = glob[:, None, :]
    out[rows, cols] = local[None, :, :]


def embed(g: CliffordMap, positions: Sequence[int], n: int) -> CliffordMap:
    """Act as ``g`` on ``positions`` (slot i -> positions[i]) and trivially elsewhere."""
    pos = np.asarray(positions, dtype=np.intp)
    if len(pos) != g.n:
        raise CliffordError(f"need {g.n} positions, got {len(pos)}")
    if len(set(pos.tolist())) != len(pos):
        raise CliffordError("repeated position")
    if pos.size and (pos.min() < 0 or pos.max() >= n):
        raise CliffordError("position out of range")
    return embed_all(g, [pos], n)


def embed_all(g: CliffordMap, subsets: Sequence[Sequence[int]], n: int) -> CliffordMap:
    """Product of ``g`` embedded on each of several pairwise disjoint subsets."""
    out = np.eye(2 * n, dtype=np.uint8)
    if len(subsets):
        pos = np.asarray(subsets, dtype=np.intp).reshape(len(subsets), g.n)
        flat = pos.ravel()
        if len(np.unique(flat)) != flat.size:
            raise CliffordError("subsets overlap")
        if flat.min() < 0 or flat.max() >= n:
            raise CliffordError("position out of range")
        _embed_dense(g.m.to_dense(), g.n, pos, n, out)
    return CliffordMap(n, BitMatrix.from_dense(out))


def compose(a: CliffordMap, b: CliffordMap) -> CliffordMap:
    """Apply ``b`` first, then ``a``."""
    if a.n != b.n:
        raise CliffordError(f"size mismatch: {a.n} vs {b.n}")
    return CliffordMap(a.n, matmul(a.m, b.m))


def omega(n: int) -> BitMatrix:
    z = np.zeros((n, n), dtype=np.uint8)
    i = np.eye(n, dtype=np.uint8)
    return BitMatrix.from_dense(np.block([[z, i], [i, z]]))


def is_symplectic(g: CliffordMap | BitMatrix) -> bool:
    m = g.m if isinstance(g, CliffordMap) else g
    if m.rows != m.cols or m.rows % 2:
        return False
    n = m.rows // 2
    d = m.to_dense().astype(np.float32)
    swapped = np.vstack([d[n:], d[:n]])  # omega @ m
    lhs = np.remainder(d.T @ swapped, 2).astype(np.uint8)
    return bool(np.array_equal(lhs, omega(n).to_dense()))


def inverse(g: CliffordMap) -> CliffordMap:
    """Inverse of a symplectic map: Omega m^T Omega."""
    n = g.n
    t = g.m.to_dense().T
    inv = np.block([[t[n:, n:], t[n:, :n]], [t[:n, n:], t[:n, :n]]])
    return CliffordMap(n, BitMatrix.from_dense(inv))
