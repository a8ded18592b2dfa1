import itertools

import numpy as np
import pytest

from mmscramble.diagnostics import entropy_series
from mmscramble.floquet import make_circuit
from mmscramble.oracle import (
    OracleError,
    dense_conjugate,
    dense_entropy,
    dense_entropy_series,
    dense_unitary,
    identify_pauli,
)
from mmscramble.pauli import parse


def test_conjugate_examples():
    assert dense_conjugate("W", parse("XIII")) == parse("ZIIZ")
    assert dense_conjugate("W", parse("ZZZZ")) == parse("YYII")
    for s in ("XYZI", "IIIZ", "YYYY"):
        assert dense_conjugate("", parse(s)) == parse(s)


def test_unitary_and_errors():
    u = dense_unitary("W", 4)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(16), atol=1e-12)
    with pytest.raises(OracleError):
        identify_pauli(np.diag([1, np.exp(0.25j * np.pi)]), 1)
    with pytest.raises(OracleError):
        dense_conjugate("W", parse("XIIII"))
    with pytest.raises(OracleError):
        dense_entropy(make_circuit("single", 4, 1), [0], 1)


def test_dense_entropy_trivial():
    c = make_circuit("single", 2, 2)
    assert dense_entropy(c, [0, 1], 0) == 0
    assert dense_entropy(c, range(4), 5) == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize("gate", ["W", "W_new"])
def test_rank_entropy_matches_dense_n2(gate):
    c = make_circuit("single", 2, 2, gate)
    regions = [A for k in range(1, 4) for A in itertools.combinations(range(4), k)]
    dense = dense_entropy_series(c, regions, 20)
    for A, d in zip(regions, dense):
        d = np.array(d)
        assert np.allclose(d, np.round(d), atol=1e-9)
        assert np.round(d).astype(int).tolist() == entropy_series(c, A, 20)


def test_rank_entropy_matches_dense_double_n2():
    c = make_circuit("double", 2, 2)
    regions = [A for k in (1, 2, 3, 4) for A in itertools.combinations(range(8), k)][::9]
    dense = dense_entropy_series(c, regions, 8)
    for A, d in zip(regions, dense):
        assert np.round(d).astype(int).tolist() == entropy_series(c, A, 8)
        assert np.allclose(d, np.round(d), atol=1e-9)
