import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmscramble.oracle import dense_pauli
from mmscramble.pauli import (
    PauliVec,
    column_sizes,
    format_pauli,
    parse,
    single,
    size,
    symplectic_gram,
    symplectic_product,
    to_columns,
)

pauli_strings = st.integers(1, 8).flatmap(lambda n: st.text("IXYZ", min_size=n, max_size=n))


def test_single_examples():
    p = single(2, 0, "X")
    assert p.x.tolist() == [1, 0] and p.z.tolist() == [0, 0]
    p = single(2, 0, "Y")
    assert p.x.tolist() == [1, 0] and p.z.tolist() == [1, 0]
    assert single(3, 2, "Z").bits.indices() == [5]
    with pytest.raises(IndexError):
        single(3, 3, "X")
    with pytest.raises(ValueError):
        single(3, 0, "W")


def test_size_examples():
    assert size(PauliVec.identity(4)) == 0
    assert size(parse("XIII")) == 1
    assert size(parse("ZXXX")) == 4


def test_parse_format_examples():
    assert parse("XIII").bits.indices() == [0]
    assert parse("ZZZZ").bits.indices() == [4, 5, 6, 7]
    p = parse("YYII")
    assert np.flatnonzero(p.x).tolist() == [0, 1] and np.flatnonzero(p.z).tolist() == [0, 1]
    assert format_pauli(p) == "YYII"
    with pytest.raises(ValueError):
        parse("XQ")


@given(pauli_strings)
def test_roundtrip(s):
    assert format_pauli(parse(s)) == s


@given(pauli_strings, st.randoms())
def test_size_properties(s, rnd):
    p = parse(s)
    assert size(p * p) == 0
    order = list(range(len(s)))
    rnd.shuffle(order)
    assert size(parse("".join(s[i] for i in order))) == size(p)
    assert size(p) == sum(c != "I" for c in s)


def test_commutation_matches_dense():
    strings = ["".join(t) for t in itertools.product("IXYZ", repeat=2)]
    for a, b in itertools.product(strings, repeat=2):
        pa, pb = parse(a), parse(b)
        ma, mb = dense_pauli(a), dense_pauli(b)
        anti = not np.allclose(ma @ mb, mb @ ma)
        assert symplectic_product(pa, pb) == int(anti)
        assert symplectic_product(pa, pb) == symplectic_product(pb, pa)


def test_column_helpers():
    ps = [parse("XIZ"), parse("ZII"), parse("IYI")]
    cols = to_columns(ps)
    assert column_sizes(cols).tolist() == [2, 1, 1]
    g = symplectic_gram(cols)
    assert g.tolist() == [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
