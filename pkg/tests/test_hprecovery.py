import dataclasses
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmscramble.cliffordmap import inverse
from mmscramble.diagnostics import build_region
from mmscramble.floquet import evolve_matrix, make_circuit
from mmscramble.gf2core import BitMatrix, _row_supports, colspace_contains, hstack, rank
from mmscramble.hprecovery import (
    ErasurePattern,
    ScanTable,
    build_code,
    has_dip,
    nonmonotonicity_scan,
    recovery_boundary,
    recovery_check,
    recovery_logical,
    recovery_scan,
    restricted_check,
)
from mmscramble.pauli import symplectic_gram


def expected_gram(code):
    k = code.S.cols + code.L.cols
    g = np.zeros((k, k), dtype=np.uint8)
    for j in range(code.q):
        a, b = code.S.cols + 2 * j, code.S.cols + 2 * j + 1
        g[a, b] = g[b, a] = 1
    return g


def test_build_code_counts():
    code = build_code(4, [2])
    assert code.S.shape == (8, 3) and code.L.shape == (8, 2) and code.q == 1
    np.testing.assert_array_equal(symplectic_gram(hstack([code.S, code.L])), expected_gram(code))
    code = build_code(16, [0, 3, 9])
    assert rank(hstack([code.S, code.L])) == 16 + 3
    with pytest.raises(ValueError):
        build_code(4, [])
    with pytest.raises(ValueError):
        build_code(4, range(4))


def test_t0_never_recovers(circuit_cache):
    c = circuit_cache("single", 4, 1)
    for A in ([0], [1, 5], [3, 7, 12]):
        assert not recovery_check(c, build_code(c.n, A), A, 0)
    with pytest.raises(ValueError):
        recovery_check(c, build_code(c.n, [0]), [], 3)


@pytest.mark.parametrize("t", [0, 3, 10])
def test_commutation_preserved(t, circuit_cache):
    c = circuit_cache("single", 8, 2)
    code = build_code(c.n, build_region(c, 11, 9).qubits)
    M = evolve_matrix(c, hstack([code.S, code.L]), t)
    np.testing.assert_array_equal(symplectic_gram(M), expected_gram(code))


def test_recovery_logical_n4_rule1(circuit_cache):
    # N=4 under rule 1 splits into small components; single-qubit regions still recover
    c = circuit_cache("single", 4, 1)
    A = (7,)
    code = build_code(c.n, A)
    res = recovery_logical(c, code, A, 10)
    assert res.ok and len(res.dressed) == 2 * code.q
    for ref in range(c.n):
        A = (ref,)
        code = build_code(c.n, A)
        rows = [ref, ref + c.n]
        for t in (9, 10, 11, 12):
            res = recovery_logical(c, code, A, t)
            assert res.ok == recovery_check(c, code, A, t)
            for d, s in zip(res.dressed, res.combos):
                if d is None:
                    continue
                assert not d.to_bits()[rows].any()
                assert len(s) == code.S.cols
            if res.ok:
                D = BitMatrix.from_columns(res.dressed, 2 * c.n)
                np.testing.assert_array_equal(symplectic_gram(D), symplectic_gram(res.L_t))


def test_recovery_logical_larger_region(circuit_cache):
    c = circuit_cache("single", 8, 2)
    A = build_region(c, 20, 6).qubits
    code = build_code(c.n, A)
    res = recovery_logical(c, code, A, 10)
    assert res.ok
    rows = list(A) + [q + c.n for q in A]
    for d in res.dressed:
        assert not d.to_bits()[rows].any()
    D = BitMatrix.from_columns(res.dressed, 2 * c.n)
    np.testing.assert_array_equal(symplectic_gram(D), symplectic_gram(res.L_t))


def test_recovery_logical_flags_failures(circuit_cache):
    c = circuit_cache("single", 4, 1)
    A = [0, 1]
    res = recovery_logical(c, build_code(c.n, A), A, 0)
    assert res.unrecoverable == [0, 1, 2, 3] and not res.ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 63), st.integers(1, 21), st.integers(0, 12))
def test_maximal_rank_sufficiency(ref, r, t):
    c = make_circuit("single", 8, 2)
    A = build_region(c, ref, r).qubits
    code = build_code(c.n, A)
    S_t = evolve_matrix(c, code.S, t)
    rows = np.concatenate([np.array(A), np.array(A) + c.n])
    if 2 * r <= c.n - r and rank(S_t.select_rows(rows)) == 2 * r:
        assert recovery_check(c, code, A, t)
    if 2 * r > c.n - r:
        assert not recovery_check(c, code, A, t)


def test_time_reversal_sanity(circuit_cache):
    c = circuit_cache("single", 4, 2)
    inv = inverse(c.step)
    back = dataclasses.replace(c, step=inv, _supports=_row_supports(inv.m.to_dense()))
    A = [1, 4, 9]
    code = build_code(c.n, A)
    rows = np.array(A + [q + c.n for q in A])
    for t in range(1, 8):
        S_t, L_t = evolve_matrix(c, code.S, t), evolve_matrix(c, code.L, t)
        assert recovery_check(c, code, A, t) == restricted_check(S_t, L_t, rows)
        S0, L0 = evolve_matrix(back, S_t, t), evolve_matrix(back, L_t, t)
        assert S0 == code.S and L0 == code.L
        assert restricted_check(S0, L0, rows) == recovery_check(c, code, A, 0)


def test_erasure_pattern_independent_of_A(circuit_cache):
    c = circuit_cache("single", 8, 2)
    code = build_code(c.n, [0])
    B = ErasurePattern((5, 17, 40))
    assert B.r == 3
    assert isinstance(recovery_check(c, code, B, 10), bool)


def test_has_dip():
    assert not has_dip([False, False, True, True])
    assert has_dip([False, True, False, True])
    assert not has_dip([True, True, False])
    assert not has_dip([])


def test_nonmonotonicity_scan_hand_table():
    times = [1, 2, 3, 4]
    rows = {(0, 1): [False, True, False, True], (0, 2): [False, False, True, True], (0, 9): [False] * 4}
    entries = {(ref, r, t): v for (ref, r), row in rows.items() for t, v in zip(times, row)}
    table = ScanTable([0], [1, 2, 9], times, entries)
    rep = nonmonotonicity_scan(table, boundary=2)
    assert rep.flags == {(0, 1): True, (0, 2): False, (0, 9): False}
    assert rep.general_recovery_time == 4
    assert nonmonotonicity_scan(table).general_recovery_time is None


def test_scan_matches_recovery_check(circuit_cache):
    c = circuit_cache("double", 4, 2)
    table = recovery_scan(c, [0, 21], [1, 3, 5], range(1, 7))
    for (ref, r, t), v in table.entries.items():
        A = build_region(c, ref, r).qubits
        assert v == recovery_check(c, build_code(c.n, A), A, t)
    js = table.to_json()
    assert js["N"] == 4 and js["layout"] == "double" and len(js["entries"]) == 2 * 3 * 6


def test_boundary():
    assert recovery_boundary(64) == 21
    assert recovery_boundary(288) == 96
