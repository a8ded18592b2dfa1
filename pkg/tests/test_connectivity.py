import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmscramble.connectivity import (
    Partition,
    components,
    double,
    infection_closure,
    infection_series,
    offdiag_cycle,
    rule1,
    rule2,
    validate,
)
from mmscramble.lattice import LayerLayout


def labels(p, sub):
    return tuple(p.layout.format_label(q) for q in sub)


def find(p, label):
    q = p.layout.parse_label(label)
    return next(s for s in p.subsets if q in s)


def test_rule1_examples():
    p = rule1(4)
    assert labels(p, p.subsets[0]) == ("Q:1,1", "Q:1,4", "Q:4,4", "Q:4,1")
    assert len(p) == 4 and validate(p)
    p = rule1(8)
    assert labels(p, find(p, "Q:1,5")) == ("Q:1,5", "Q:5,2", "Q:2,6", "Q:6,1")


def test_rule2_examples():
    p = rule2(2)
    assert [labels(p, s) for s in p.subsets] == [("Q:1,1", "Q:1,2", "Q:2,2", "Q:2,1")]
    p = rule2(6)
    assert labels(p, find(p, "Q:1,5")) == ("Q:1,5", "Q:5,2", "Q:2,6", "Q:6,1")
    assert len(p) == 9 and validate(p)


def test_double_examples():
    p = double(1, 4)
    assert len(p) == 8
    got = {labels(p, s) for s in p.subsets}
    assert ("T:1,1", "B:1,4", "T:4,4", "B:4,1") in got
    assert ("B:1,1", "T:1,4", "B:4,4", "T:4,1") in got
    p = double(2, 8)
    assert labels(p, find(p, "B:1,5")) == ("B:1,5", "T:5,2", "B:2,6", "T:6,1")


@pytest.mark.parametrize("N", [4, 8, 12, 16, 20])
def test_partition_counts(N):
    assert len(rule1(N)) == N * N // 4 and validate(rule1(N))
    assert len(rule2(N)) == N * N // 4 and validate(rule2(N))
    for r in (1, 2):
        d = double(r, N)
        assert len(d) == N * N // 2 and validate(d)


def test_validate_rejects_duplicates():
    lay = LayerLayout.single(2)
    assert not validate(Partition(lay, ((0, 1, 2, 2),)))
    assert not validate(Partition(lay, ((0, 1, 2, 7),)))
    lay = LayerLayout.single(4)
    good = rule1(4).subsets
    assert not validate(Partition(lay, good[:-1]))
    bad = (good[0],) + ((good[1][0], good[1][1], good[1][2], good[0][0]),) + good[2:]
    assert not validate(Partition(lay, bad))


def test_rule_constraints():
    with pytest.raises(ValueError):
        rule1(6)
    with pytest.raises(ValueError):
        rule2(5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10).map(lambda h: 2 * h), st.data())
def test_rule2_subset_identities(N, data):
    # A[i,j] = A[j, f(i)] = A[f(i), f(j)] = A[f(j), i] as sets
    i = data.draw(st.integers(1, N))
    j = data.draw(st.integers(1, N))
    f = lambda k: k + (-1) ** (k + 1)
    base = set(offdiag_cycle(i, j))
    for a, b in ((j, f(i)), (f(i), f(j)), (f(j), i)):
        assert set(offdiag_cycle(a, b)) == base
    p = rule2(N)
    q = p.layout.index(0, i, j)
    sub = next(s for s in p.subsets if q in s)
    assert {p.layout.label(x)[1:] for x in sub} == base


def test_infection_examples():
    p = rule2(8)
    assert infection_series(p, [0], 5) == [1, 4, 16, 64, 64, 64]
    d = double(2, 8)
    for seed in (0, 5, 64, 100):
        res = infection_closure(d, [seed], 50)
        assert res.sizes[-1] == 64


@pytest.mark.parametrize("kind,N,rule", [("single", 8, 1), ("single", 12, 2), ("double", 8, 1), ("double", 6, 2)])
def test_infection_bounded_and_monotone(kind, N, rule):
    from mmscramble.connectivity import build_partition

    p = build_partition(LayerLayout(kind, N), rule)
    for seed in range(0, p.layout.total, 7):
        sizes = infection_series(p, [seed], 12)
        assert all(b >= a for a, b in zip(sizes, sizes[1:]))
        assert all(n <= 4**t for t, n in enumerate(sizes))


def test_components_examples():
    assert sorted(map(len, components(double(2, 8)))) == [64, 64]
    assert list(map(len, components(double(2, 12)))) == [288]
    assert list(map(len, components(rule1(8)))) == [64]


@pytest.mark.parametrize("N,expected", [(4, [16, 16]), (8, [64, 64]), (16, [256, 256]), (6, [72]), (12, [288])])
def test_double_rule2_decoupling(N, expected):
    comps = components(double(2, N))
    assert sorted(map(len, comps)) == expected
    # components are disjoint and cover all qubits
    allq = sorted(q for c in comps for q in c)
    assert allq == list(range(2 * N * N))


def test_dump_format():
    text = rule2(2).dump()
    assert text == "(Q:1,1),(Q:1,2),(Q:2,2),(Q:2,1)"
