"""Brute-force state-vector checks for tiny systems.

Exponential in the qubit count; used by the test-suite only.  Qubit 0 is the
most significant tensor factor.
"""

from __future__ import annotations

import itertools
from functools import reduce
from typing import Sequence

import numpy as np

from .cliffordmap import GateSpec
from .floquet import FloquetCircuit
from .pauli import PauliVec, format_pauli, parse

MAX_DENSE_QUBITS = 12
PHASE_TOL = 1e-9

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULI = {"I": _I, "X": _X, "Y": _Y, "Z": _Z}
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j])


class OracleError(RuntimeError):
    pass


def _kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, mats, np.eye(1, dtype=complex))


def dense_pauli(p: PauliVec | str) -> np.ndarray:
    s = p if isinstance(p, str) else format_pauli(p)
    return _kron_all([_PAULI[c] for c in s])


def _single_qubit_op(u: np.ndarray, q: int, k: int) -> np.ndarray:
    return _kron_all([u if i == q else _I for i in range(k)])


def _cnot(c: int, t: int, k: int) -> np.ndarray:
    dim = 2**k
    out = np.zeros((dim, dim), dtype=complex)
    for b in range(dim):
        bits = [(b >> (k - 1 - i)) & 1 for i in range(k)]
        if bits[c]:
            bits[t] ^= 1
        out[int("".join(map(str, bits)), 2), b] = 1
    return out


def dense_unitary(spec: GateSpec | str, k: int) -> np.ndarray:
    """Unitary of the printed gate product (the rightmost factor acts first)."""
    if isinstance(spec, str):
        spec = GateSpec.parse(spec)
    if k > MAX_DENSE_QUBITS:
        raise OracleError(f"{k} qubits exceeds the dense cap of {MAX_DENSE_QUBITS}")
    u = np.eye(2**k, dtype=complex)
    for name, slots in spec.gates:
        if name == "H":
            g = _single_qubit_op(_H, slots[0], k)
        elif name == "S":
            g = _single_qubit_op(_S, slots[0], k)
        else:
            g = _cnot(slots[0], slots[1], k)
        u = u @ g
    return u


def identify_pauli(m: np.ndarray, k: int) -> PauliVec:
    """The Pauli string proportional to ``m``; raises if there is none."""
    dim = 2**k
    for letters in itertools.product("IXYZ", repeat=k):
        s = "".join(letters)
        coeff = np.trace(dense_pauli(s).conj().T @ m) / dim
        if abs(abs(coeff) - 1) < PHASE_TOL:
            if np.allclose(m, coeff * dense_pauli(s), atol=PHASE_TOL):
                return parse(s)
    raise OracleError("operator is not proportional to a Pauli string")


def dense_conjugate(spec: GateSpec | str, p: PauliVec) -> PauliVec:
    """``U P U^dagger`` for a gate spec on ``p.n <= 4`` qubits, up to phase."""
    if p.n > 4:
        raise OracleError("dense conjugation is limited to 4 qubits")
    u = dense_unitary(spec, p.n)
    return identify_pauli(u @ dense_pauli(p) @ u.conj().T, p.n)


# state vectors -------------------------------------------------------------------


def _apply_local(psi: np.ndarray, u: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    k = len(qubits)
    ut = u.reshape((2,) * (2 * k))
    psi = np.tensordot(ut, psi, axes=(list(range(k, 2 * k)), list(qubits)))
    # tensordot puts the gate outputs first; move them back into place
    return np.moveaxis(psi, list(range(k)), list(qubits))


def dense_step(c: FloquetCircuit, psi: np.ndarray) -> np.ndarray:
    """One Floquet step on a state tensor of shape ``(2,) * n``."""
    n = c.n
    inv = np.empty(n, dtype=np.intp)
    inv[c.perm] = np.arange(n)
    psi = np.transpose(psi, inv)
    w = dense_unitary(c.gate_spec, 4)
    for sub in c.partition.subsets:
        psi = _apply_local(psi, w, sub)
    return psi


def von_neumann_bits(psi: np.ndarray, region: Sequence[int]) -> float:
    n = psi.ndim
    region = sorted(set(region))
    rest = [q for q in range(n) if q not in region]
    if not region or not rest:
        return 0.0
    mat = np.transpose(psi, region + rest).reshape(2 ** len(region), -1)
    s = np.linalg.svd(mat, compute_uv=False)
    p = s**2
    p = p[p > 1e-14]
    return float(-(p * np.log2(p)).sum())


def dense_entropy(c: FloquetCircuit, A: Sequence[int], t: int) -> float:
    """Entropy (bits) of region ``A`` after evolving ``|0...0>`` for ``t`` steps."""
    if c.n > MAX_DENSE_QUBITS:
        raise OracleError(f"{c.n} qubits exceeds the dense cap of {MAX_DENSE_QUBITS}")
    psi = np.zeros((2,) * c.n, dtype=complex)
    psi[(0,) * c.n] = 1
    for _ in range(t):
        psi = dense_step(c, psi)
    return von_neumann_bits(psi, A)


def dense_entropy_series(c: FloquetCircuit, regions: Sequence[Sequence[int]], t_max: int) -> list[list[float]]:
    if c.n > MAX_DENSE_QUBITS:
        raise OracleError(f"{c.n} qubits exceeds the dense cap of {MAX_DENSE_QUBITS}")
    psi = np.zeros((2,) * c.n, dtype=complex)
    psi[(0,) * c.n] = 1
    out = [[] for _ in regions]
    for t in range(t_max + 1):
        if t:
            psi = dense_step(c, psi)
        for k, a in enumerate(regions):
            out[k].append(von_neumann_bits(psi, a))
    return out
