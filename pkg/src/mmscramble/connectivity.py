"""Four-qubit interaction partitions and the large-q infection cartoon."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import LatticeError, LayerLayout, qubit_permutation

Cell = tuple[int, int]


@dataclass(frozen=True)
class Partition:
    """Ordered 4-tuples of linear qubit indices; tuple order fixes gate slots q1..q4."""

    layout: LayerLayout
    subsets: tuple[tuple[int, int, int, int], ...]
    rule: int | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.subsets)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.subsets, dtype=np.intp).reshape(len(self.subsets), 4)

    def owner(self) -> np.ndarray:
        """``owner[q]`` = index of the subset containing qubit ``q`` (-1 if none)."""
        own = np.full(self.layout.total, -1, dtype=np.intp)
        arr = self.as_array()
        own[arr.ravel()] = np.repeat(np.arange(len(arr)), 4)
        return own

    def dump(self) -> str:
        lay = self.layout
        return "\n".join(",".join(f"({lay.format_label(q)})" for q in sub) for sub in self.subsets)


def _flip(i: int) -> int:
    # i + (-1)^(i+1): partner row/column inside the 2x2 block
    return i + 1 if i % 2 else i - 1


def offdiag_cycle(i: int, j: int) -> tuple[Cell, Cell, Cell, Cell]:
    """The cyclic 2x2-block orbit started at ``(i, j)``."""
    return ((i, j), (j, _flip(i)), (_flip(i), _flip(j)), (_flip(j), i))


def diagonal_cycles(b: int) -> list[tuple[Cell, Cell, Cell, Cell]]:
    """The four cycles inside the b-th 4x4 diagonal block (b is 1-based)."""
    a, c, d, e = 4 * b - 3, 4 * b - 2, 4 * b - 1, 4 * b
    return [
        ((a, a), (a, e), (e, e), (e, a)),
        ((c, c), (c, d), (d, d), (d, c)),
        ((a, d), (d, e), (e, c), (c, a)),
        ((a, c), (c, e), (e, d), (d, a)),
    ]


def _block_cycles(i: int, j: int) -> list[tuple[Cell, Cell, Cell, Cell]]:
    """Cycles covering the 2x2 block at odd (i, j), i <= j, and its mirror."""
    if i == j:
        return [offdiag_cycle(i, i)]
    return [offdiag_cycle(i, j), offdiag_cycle(i, j + 1)]


def rule1_cycles(N: int) -> list[tuple[Cell, Cell, Cell, Cell]]:
    if N % 4:
        raise LatticeError(f"rule 1 needs N divisible by 4, got {N}")
    cycles = []
    for b in range(1, N // 4 + 1):
        cycles.extend(diagonal_cycles(b))
    for i in range(1, N, 2):
        for j in range(i + 2, N, 2):
            if (i - 1) // 4 != (j - 1) // 4:
                cycles.extend(_block_cycles(i, j))
    return cycles


def rule2_cycles(N: int) -> list[tuple[Cell, Cell, Cell, Cell]]:
    if N % 2:
        raise LatticeError(f"rule 2 needs even N, got {N}")
    cycles = []
    for i in range(1, N, 2):
        for j in range(i, N, 2):
            cycles.extend(_block_cycles(i, j))
    return cycles


def _cycles(rule: int, N: int):
    if rule == 1:
        return rule1_cycles(N)
    if rule == 2:
        return rule2_cycles(N)
    raise LatticeError(f"unknown rule {rule!r}")


def rule1(N: int) -> Partition:
    lay = LayerLayout.single(N)
    subs = tuple(tuple(lay.index(0, i, j) for i, j in cyc) for cyc in rule1_cycles(N))
    return Partition(lay, subs, rule=1)


def rule2(N: int) -> Partition:
    lay = LayerLayout.single(N)
    subs = tuple(tuple(lay.index(0, i, j) for i, j in cyc) for cyc in rule2_cycles(N))
    return Partition(lay, subs, rule=2)


def double(rule: int, N: int) -> Partition:
    """Two-layer partition: every cycle yields a BTBT and a TBTB subset."""
    lay = LayerLayout.double(N)
    subs = []
    for cyc in _cycles(rule, N):
        for start in (0, 1):
            layers = (start, 1 - start, start, 1 - start)
            subs.append(tuple(lay.index(l, i, j) for l, (i, j) in zip(layers, cyc)))
    return Partition(lay, tuple(subs), rule=rule)


def build_partition(layout: LayerLayout, rule: int) -> Partition:
    if rule not in (1, 2):
        raise LatticeError(f"unknown rule {rule!r}")
    if layout.kind == "double":
        return double(rule, layout.N)
    return rule1(layout.N) if rule == 1 else rule2(layout.N)


def validate(p: Partition) -> bool:
    """Disjoint cover of every qubit by 4-element subsets."""
    total = p.layout.total
    seen = np.zeros(total, dtype=np.int64)
    for sub in p.subsets:
        if len(sub) != 4 or len(set(sub)) != 4:
            return False
        if min(sub) < 0 or max(sub) >= total:
            return False
        seen[list(sub)] += 1
    return bool(np.all(seen == 1))


# infection -----------------------------------------------------------------


def infect_step(infected: np.ndarray, perm: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Relabel by the shuffle, then spread to every subset touching an infected qubit."""
    moved = np.zeros_like(infected)
    moved[perm[infected]] = True
    hit = moved[subsets].any(axis=1)
    moved[subsets[hit].ravel()] = True
    return moved


@dataclass
class InfectionResult:
    sizes: list[int]
    sets: list[np.ndarray]  # boolean masks per step, sets[0] = seeds

    @property
    def final(self) -> np.ndarray:
        return self.sets[-1]

    def final_indices(self) -> list[int]:
        return np.flatnonzero(self.final).tolist()


def infection_closure(p: Partition, seeds, t_max: int, perm: np.ndarray | None = None) -> InfectionResult:
    """Infected-set sizes for ``t = 0..t_max``, stopping early at a fixpoint."""
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    if perm is None:
        perm = qubit_permutation(p.layout)
    subsets = p.as_array()
    cur = np.zeros(p.layout.total, dtype=bool)
    cur[seeds] = True
    sets = [cur]
    for _ in range(t_max):
        nxt = infect_step(cur, perm, subsets)
        if np.array_equal(nxt, cur):
            break
        sets.append(nxt)
        cur = nxt
    return InfectionResult([int(s.sum()) for s in sets], sets)


def infection_series(p: Partition, seeds, t_max: int, perm: np.ndarray | None = None) -> list[int]:
    """Like :func:`infection_closure` but always ``t_max + 1`` entries (padded at fixpoint)."""
    res = infection_closure(p, seeds, t_max, perm)
    return res.sizes + [res.sizes[-1]] * (t_max + 1 - len(res.sizes))


def components(p: Partition, perm: np.ndarray | None = None) -> list[list[int]]:
    """Minimal qubit classes closed under the shuffle and subset co-membership."""
    if perm is None:
        perm = qubit_permutation(p.layout)
    subsets = p.as_array()
    total = p.layout.total
    label = np.full(total, -1, dtype=np.intp)
    classes = []
    for seed in range(total):
        if label[seed] >= 0:
            continue
        cls = np.zeros(total, dtype=bool)
        cls[seed] = True
        while True:
            grown = cls.copy()
            grown[perm[cls]] = True
            grown[subsets[grown[subsets].any(axis=1)].ravel()] = True
            if np.array_equal(grown, cls):
                break
            cls = grown
        label[cls] = len(classes)
        classes.append(np.flatnonzero(cls).tolist())
    return classes
