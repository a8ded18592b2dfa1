"""Scrambling diagnostics: operator size, scrambling time, Lyapunov fits, entropy."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .connectivity import infect_step
from .floquet import FloquetCircuit
from .gf2core import BitMatrix, rank
from .pauli import PauliVec, column_sizes, single


@dataclass
class SizeSeries:
    times: list[int]
    sizes: list[int]
    metadata: dict = field(default_factory=dict)

    def to_csv_rows(self) -> list[tuple[int, int]]:
        return list(zip(self.times, self.sizes))


def circuit_metadata(c: FloquetCircuit) -> dict:
    return {
        "layout": c.layout.kind,
        "N": c.layout.N,
        "rule": c.partition.rule,
        "gate": str(c.gate_spec),
    }


def opsize_series(c: FloquetCircuit, init: PauliVec | tuple[int, str], t_max: int) -> SizeSeries:
    """Operator size of a Pauli evolved for ``t_max`` steps.

    ``init`` is either a Pauli or ``(qubit, "X" | "Z")``.
    """
    if not isinstance(init, PauliVec):
        q, kind = init
        init = single(c.n, q, kind)
        label = f"{kind}{q}"
    else:
        label = "custom"
    col = BitMatrix(1, 2 * c.n, init.bits.words.reshape(1, -1)).transpose()
    sizes = [int(column_sizes(cur)[0]) for cur in c.trajectory(col, t_max)]
    meta = circuit_metadata(c) | {"init": label}
    return SizeSeries(list(range(t_max + 1)), sizes, meta)


def all_single_sizes(c: FloquetCircuit, t_max: int):
    """Sizes of every single-qubit X and Z, evolved together.

    Yields arrays of length ``2n`` (X on qubit q at index q, Z at ``n + q``)
    for t = 0..t_max.
    """
    for cur in c.trajectory(BitMatrix.identity(2 * c.n), t_max):
        yield column_sizes(cur)


def scrambling_time(s: SizeSeries | Sequence[int], threshold: float) -> int | None:
    """First time the size reaches ``threshold``; ``None`` if it never does."""
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    sizes = s.sizes if isinstance(s, SizeSeries) else s
    for t, n in enumerate(sizes):
        if n >= threshold:
            return t
    return None


def mean_scrambling_time(c: FloquetCircuit, threshold: float | None = None, t_max: int = 200) -> tuple[float, float]:
    """Mean and standard error of the scrambling time over all single-qubit X and Z.

    The default threshold is half the number of qubits.
    """
    if threshold is None:
        threshold = c.n / 2
    first = np.full(2 * c.n, -1, dtype=np.int64)
    for t, sizes in enumerate(all_single_sizes(c, t_max)):
        first[(first < 0) & (sizes >= threshold)] = t
        if (first >= 0).all():
            break
    if (first < 0).any():
        raise RuntimeError(f"{int((first < 0).sum())} operators never reached size {threshold}")
    err = first.std(ddof=1) / math.sqrt(first.size) if first.size > 1 else 0.0
    return float(first.mean()), float(err)


@dataclass
class LyapunovFit:
    lam: float
    intercept: float
    stderr: float
    slope: float
    slope_stderr: float


def lyapunov_fit(points: Iterable[tuple[int, float]]) -> LyapunovFit:
    """Fit mean scrambling time against ln(N^2 / 2); the exponent is 1/slope."""
    pts = sorted(points)
    if len({N for N, _ in pts}) < 3:
        raise ValueError("need at least three distinct N")
    x = np.array([math.log(N * N / 2) for N, _ in pts])
    y = np.array([ts for _, ts in pts], dtype=float)
    fit = stats.linregress(x, y)
    if fit.slope == 0:
        raise ValueError("zero slope: scrambling time does not depend on N")
    lam = 1.0 / fit.slope
    return LyapunovFit(lam, float(fit.intercept), float(fit.stderr / fit.slope**2), float(fit.slope), float(fit.stderr))


# regions and entropy ---------------------------------------------------------


@dataclass(frozen=True)
class RegionA:
    """Subsystem grown from ``reference`` by the infection closure.

    ``t_f`` is the last horizon whose whole closure lies inside ``qubits``.
    """

    reference: int
    t_f: int
    qubits: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.qubits)


def closure_unions(c: FloquetCircuit, reference: int, limit: int = 10_000):
    """Yield A(0), A(1), ...: unions of the infected sets up to each time."""
    subsets = c.partition.as_array()
    cur = np.zeros(c.n, dtype=bool)
    cur[reference] = True
    union = cur.copy()
    yield union.copy()
    for _ in range(limit):
        cur = infect_step(cur, c.perm, subsets)
        union |= cur
        yield union.copy()


def build_region(c: FloquetCircuit, reference: int, target_size: int) -> RegionA:
    """Grow A(t) until it holds ``target_size`` qubits, filling the last
    partial step in ascending qubit order."""
    if target_size < 1:
        raise ValueError("target size must be at least 1")
    if target_size > c.n:
        raise ValueError(f"target size {target_size} exceeds {c.n} qubits")
    prev = None
    stall = 0
    for t, union in enumerate(closure_unions(c, reference)):
        size = int(union.sum())
        if size == target_size:
            return RegionA(reference, t, tuple(np.flatnonzero(union).tolist()))
        if size > target_size:
            base = np.flatnonzero(prev).tolist()
            fresh = np.flatnonzero(union & ~prev).tolist()
            chosen = sorted(base + fresh[: target_size - len(base)])
            return RegionA(reference, t - 1, tuple(chosen))
        if prev is not None and size == int(prev.sum()):
            stall += 1
            if stall > c.n:
                break
        else:
            stall = 0
        prev = union
    raise ValueError(f"the closure of qubit {reference} never reaches {target_size} qubits")


def _region_rows(c: FloquetCircuit, qubits: Sequence[int]) -> np.ndarray:
    q = np.asarray(qubits, dtype=np.intp)
    return np.concatenate([q, q + c.n])


def z_stabilizers(n: int) -> BitMatrix:
    """Columns Z_0 .. Z_{n-1}: the stabilizers of |0...0>."""
    dense = np.zeros((2 * n, n), dtype=np.uint8)
    dense[n + np.arange(n), np.arange(n)] = 1
    return BitMatrix.from_dense(dense)


def entropy_from_stabilizers(stabs: BitMatrix, n: int, qubits: Sequence[int]) -> int:
    """rank of the region's X and Z rows minus the region size."""
    q = np.asarray(qubits, dtype=np.intp)
    rows = np.concatenate([q, q + n])
    return rank(stabs.select_rows(rows)) - len(q)


def entropy(c: FloquetCircuit, A: RegionA | Sequence[int], t: int) -> int:
    qubits = A.qubits if isinstance(A, RegionA) else A
    stabs = z_stabilizers(c.n)
    for stabs in c.trajectory(stabs, t):
        pass
    return entropy_from_stabilizers(stabs, c.n, qubits)


def entropy_series(c: FloquetCircuit, A: RegionA | Sequence[int], t_max: int) -> list[int]:
    qubits = A.qubits if isinstance(A, RegionA) else A
    return [entropy_from_stabilizers(s, c.n, qubits) for s in c.trajectory(z_stabilizers(c.n), t_max)]


def entropy_series_many(c: FloquetCircuit, regions: Sequence[Sequence[int]], t_max: int) -> list[list[int]]:
    """Entropy series for several regions sharing one evolution."""
    out = [[] for _ in regions]
    for s in c.trajectory(z_stabilizers(c.n), t_max):
        for k, qubits in enumerate(regions):
            out[k].append(entropy_from_stabilizers(s, c.n, qubits))
    return out


PLATEAU_RUN = 5


def saturation_time(series: Sequence[int], run: int = PLATEAU_RUN) -> int | None:
    """First time the series equals its final value.

    ``None`` unless the last ``run`` samples are constant (no plateau yet).
    """
    if len(series) < run:
        return None
    final = series[-1]
    if any(v != final for v in series[-run:]):
        return None
    return next(t for t, v in enumerate(series) if v == final)


def late_window(total: int, length: int = 50) -> range:
    """Steps used for late-time averages: start comfortably past the scrambling bound."""
    start = math.ceil(3 * math.log(total, 4) + 5)
    return range(start, start + length)


def late_mean_size(c: FloquetCircuit, length: int = 50) -> float:
    """Mean operator size over the late window, averaged over all single-qubit X and Z."""
    window = late_window(c.n, length)
    acc = [sizes.mean() for t, sizes in enumerate(all_single_sizes(c, window.stop - 1)) if t in window]
    return float(np.mean(acc))
