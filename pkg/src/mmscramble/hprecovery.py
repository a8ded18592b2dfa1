"""Erasure recovery for the scrambling code ``|phi>_A |0...0>_{A^c}``.

The logical X/Z of every qubit in ``A`` are recoverable after erasing ``B``
when, restricted to the rows of ``B``, the evolved logicals lie in the column
span of the evolved stabilizers.  Dressing each logical by that stabilizer
combination clears it off ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .diagnostics import RegionA, build_region
from .floquet import FloquetCircuit
from .gf2core import BitMatrix, BitVec, colspace_contains, matvec, rank, solve
from .lattice import LayerLayout


@dataclass(frozen=True)
class CodeMatrices:
    n: int
    logical_qubits: tuple[int, ...]
    S: BitMatrix  # 2n x (n - q): Z on every qubit outside A
    L: BitMatrix  # 2n x 2q: X then Z for each qubit of A

    @property
    def q(self) -> int:
        return len(self.logical_qubits)


@dataclass(frozen=True)
class ErasurePattern:
    qubits: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.qubits)


def _qubits(A) -> tuple[int, ...]:
    return tuple(A.qubits) if isinstance(A, (RegionA, ErasurePattern)) else tuple(A)


def build_code(layout: LayerLayout | int, A: RegionA | Sequence[int]) -> CodeMatrices:
    n = layout.total if isinstance(layout, LayerLayout) else int(layout)
    inside = sorted(set(_qubits(A)))
    if not inside:
        raise ValueError("logical region is empty")
    if len(inside) >= n:
        raise ValueError("logical region covers every qubit; no stabilizers left")
    if inside[0] < 0 or inside[-1] >= n:
        raise ValueError("logical qubit out of range")
    outside = sorted(set(range(n)) - set(inside))
    S = np.zeros((2 * n, len(outside)), dtype=np.uint8)
    S[n + np.array(outside), np.arange(len(outside))] = 1
    L = np.zeros((2 * n, 2 * len(inside)), dtype=np.uint8)
    for k, q in enumerate(inside):
        L[q, 2 * k] = 1
        L[n + q, 2 * k + 1] = 1
    return CodeMatrices(n, tuple(inside), BitMatrix.from_dense(S), BitMatrix.from_dense(L))


def _evolve(c: FloquetCircuit, m: BitMatrix, t: int) -> BitMatrix:
    cur = m
    for cur in c.trajectory(m, t):
        pass
    return cur


def _erased_rows(n: int, erased) -> np.ndarray:
    b = np.asarray(sorted(set(_qubits(erased))), dtype=np.intp)
    if b.size == 0:
        raise ValueError("erased set is empty")
    return np.concatenate([b, b + n])


def restricted_check(S_t: BitMatrix, L_t: BitMatrix, rows: np.ndarray) -> bool:
    return colspace_contains(S_t.select_rows(rows), L_t.select_rows(rows))


def recovery_check(c: FloquetCircuit, code: CodeMatrices, erased, t: int) -> bool:
    if t < 0:
        raise ValueError("t must be non-negative")
    rows = _erased_rows(code.n, erased)
    return restricted_check(_evolve(c, code.S, t), _evolve(c, code.L, t), rows)


@dataclass
class RecoveryResult:
    """Dressed logicals; ``combos[k]`` is None where logical ``k`` cannot be cleared."""

    combos: list[BitVec | None]
    dressed: list[BitVec | None]
    S_t: BitMatrix = field(repr=False)
    L_t: BitMatrix = field(repr=False)

    @property
    def unrecoverable(self) -> list[int]:
        return [k for k, c in enumerate(self.combos) if c is None]

    @property
    def ok(self) -> bool:
        return not self.unrecoverable


def recovery_logical(c: FloquetCircuit, code: CodeMatrices, erased, t: int) -> RecoveryResult:
    """Stabilizer combinations that move each evolved logical off the erased qubits."""
    rows = _erased_rows(code.n, erased)
    S_t = _evolve(c, code.S, t)
    L_t = _evolve(c, code.L, t)
    combos = solve(S_t.select_rows(rows), L_t.select_rows(rows))
    dressed = []
    for k, x in enumerate(combos):
        if x is None:
            dressed.append(None)
        else:
            dressed.append(L_t.column(k) ^ matvec(S_t, x))
    return RecoveryResult(combos, dressed, S_t, L_t)


# scans -----------------------------------------------------------------------


@dataclass
class ScanTable:
    """``entries[(ref, r, t)] = recovered`` with A = B = the region of size r."""

    refs: list[int]
    r_values: list[int]
    times: list[int]
    entries: dict[tuple[int, int, int], bool]
    metadata: dict = field(default_factory=dict)

    def row(self, ref: int, r: int) -> list[bool]:
        return [self.entries[(ref, r, t)] for t in self.times]

    def to_json(self) -> dict:
        return self.metadata | {
            "entries": [
                {"ref": ref, "r": r, "t": t, "recovered": self.entries[(ref, r, t)]}
                for ref in self.refs
                for r in self.r_values
                for t in self.times
            ]
        }


def recovery_scan(c: FloquetCircuit, refs: Iterable[int], r_values: Iterable[int], times: Iterable[int]) -> ScanTable:
    """Recovery condition for every (reference, r, t) with the erased set equal to A."""
    refs, r_values, times = list(refs), list(r_values), sorted(set(times))
    n = c.n
    regions = {(ref, r): build_region(c, ref, r).qubits for ref in refs for r in r_values}
    entries: dict[tuple[int, int, int], bool] = {}
    want = set(times)
    # every code column is some column of U^t: X_k -> column k, Z_k -> column n + k
    for t, U in enumerate(c.trajectory(BitMatrix.identity(2 * n), max(times, default=0))):
        if t not in want:
            continue
        dense = U.to_dense()
        for (ref, r), A in regions.items():
            a = np.asarray(A, dtype=np.intp)
            outside = np.setdiff1d(np.arange(n), a)
            rows = np.concatenate([a, a + n])
            S_r = BitMatrix.from_dense(dense[np.ix_(rows, n + outside)])
            L_r = BitMatrix.from_dense(dense[np.ix_(rows, np.concatenate([a, a + n]))])
            entries[(ref, r, t)] = colspace_contains(S_r, L_r)
    meta = {
        "N": c.layout.N,
        "rule": c.partition.rule,
        "layout": c.layout.kind,
        "gate": str(c.gate_spec),
    }
    return ScanTable(refs, r_values, times, entries, meta)


def has_dip(row: Sequence[bool]) -> bool:
    """True if the row goes recovered -> not recovered -> recovered."""
    seen_true = seen_drop = False
    for v in row:
        if v and seen_drop:
            return True
        if v:
            seen_true = True
        elif seen_true:
            seen_drop = True
    return False


@dataclass
class NonmonotonicityReport:
    flags: dict[tuple[int, int], bool]
    general_recovery_time: int | None


def nonmonotonicity_scan(table: ScanTable, boundary: int | None = None) -> NonmonotonicityReport:
    """Flag dips per (reference, r); find the time after which every r <= boundary stays recovered."""
    flags = {(ref, r): has_dip(table.row(ref, r)) for ref in table.refs for r in table.r_values}
    rs = [r for r in table.r_values if boundary is None or r <= boundary]
    grt = None
    for k in range(len(table.times) - 1, -1, -1):
        if all(table.entries[(ref, r, t)] for ref in table.refs for r in rs for t in table.times[k:]):
            grt = table.times[k]
        else:
            break
    return NonmonotonicityReport(flags, grt)


def recovery_boundary(component_size: int) -> int:
    """Largest q = r for which 2r <= n - q can hold: floor(n / 3)."""
    return component_size // 3
