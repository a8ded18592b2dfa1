"""One Floquet step (shuffle, then the 4-qubit gate on every subset) and its powers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cliffordmap import CliffordMap, GateSpec, compile_spec, compose, embed_all
from .connectivity import Partition, build_partition
from .gf2core import BitMatrix, _row_supports, gather_xor
from .lattice import LayerLayout, build_perm_map, qubit_permutation
from .pauli import PauliVec


@dataclass(frozen=True)
class FloquetCircuit:
    layout: LayerLayout
    partition: Partition
    gate_spec: GateSpec
    gate: CliffordMap
    step: CliffordMap
    perm: np.ndarray = field(repr=False, compare=False)
    _supports: np.ndarray = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.layout.total

    # fast path ---------------------------------------------------------

    def advance(self, cols: BitMatrix) -> BitMatrix:
        """Apply one step to a ``2n x k`` matrix of Pauli columns."""
        if cols.rows != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} rows, got {cols.rows}")
        return BitMatrix(cols.rows, cols.cols, gather_xor(self._supports, cols.data))

    def trajectory(self, cols: BitMatrix, t: int):
        """Yield the evolved columns at times 0, 1, ..., t."""
        cur = cols
        yield cur
        for _ in range(t):
            cur = self.advance(cur)
            yield cur

    # debug path: gate by gate ------------------------------------------

    def advance_gatewise(self, p: PauliVec) -> PauliVec:
        n = self.n
        bits = p.bits.to_bits()
        x, z = np.zeros(n, dtype=bool), np.zeros(n, dtype=bool)
        x[self.perm] = bits[:n]
        z[self.perm] = bits[n:]
        g = self.gate.m.to_dense().astype(np.int64)
        for sub in self.partition.subsets:
            sub = list(sub)
            local = np.concatenate([x[sub], z[sub]]).astype(np.int64)
            out = (g @ local) % 2
            x[sub] = out[:4].astype(bool)
            z[sub] = out[4:].astype(bool)
        return PauliVec.from_xz(x, z)


def build(layout: LayerLayout, partition: Partition, gate_spec: GateSpec | str = "W") -> FloquetCircuit:
    if partition.layout != layout:
        raise ValueError("partition was built for a different layout")
    spec = GateSpec.parse(gate_spec) if isinstance(gate_spec, str) else gate_spec
    gate = compile_spec(spec, 4)
    n = layout.total
    gates = embed_all(gate, partition.subsets, n)
    step = compose(gates, build_perm_map(layout))
    supports = _row_supports(step.m.to_dense())
    assert supports is not None
    return FloquetCircuit(layout, partition, spec, gate, step, qubit_permutation(layout), supports)


def make_circuit(kind: str, N: int, rule: int, gate_spec: GateSpec | str = "W") -> FloquetCircuit:
    layout = LayerLayout(kind, N)
    return build(layout, build_partition(layout, rule), gate_spec)


def evolve_pauli(c: FloquetCircuit, p: PauliVec, t: int, record: bool = False):
    """Evolve ``p`` by ``t`` steps; with ``record`` also return every intermediate Pauli."""
    if p.n != c.n:
        raise ValueError(f"Pauli on {p.n} qubits, circuit has {c.n}")
    col = BitMatrix(1, 2 * c.n, p.bits.words.reshape(1, -1)).transpose()
    traj = []
    for cur in c.trajectory(col, t):
        if record:
            traj.append(PauliVec(c.n, cur.column(0)))
    out = PauliVec(c.n, cur.column(0))
    return (out, traj) if record else out


def evolve_matrix(c: FloquetCircuit, cols: BitMatrix, t: int) -> BitMatrix:
    if cols.rows != 2 * c.n:
        raise ValueError(f"expected {2 * c.n} rows, got {cols.rows}")
    cur = cols
    for cur in c.trajectory(cols, t):
        pass
    return cur


def step_order(c: FloquetCircuit, limit: int = 100000) -> int:
    """Smallest k > 0 with step^k = identity (small systems only)."""
    ident = BitMatrix.identity(2 * c.n)
    cur = ident
    for k in range(1, limit + 1):
        cur = c.advance(cur)
        if cur == ident:
            return k
    raise RuntimeError(f"order exceeds {limit}")
