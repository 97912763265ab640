import pytest

from symtopo.errors import DomainError
from symtopo.roots import (
    RootKind,
    RootSign,
    all_roots,
    long_roots,
    positive_roots,
    short_roots,
    strictly_positive_roots,
)


def comps(roots):
    return {r.components for r in roots}


def test_examples_rank_one_and_two():
    assert comps(long_roots(1)) == {(2,), (-2,)}
    assert short_roots(1) == []
    assert comps(long_roots(2)) == {(2, 0), (-2, 0), (0, 2), (0, -2)}
    assert comps(short_roots(2)) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert comps(positive_roots(2)) == {(2, 0), (0, 2), (1, 1), (1, -1)}
    assert len(all_roots(2)) == 8
    assert len(all_roots(3)) == 18


@pytest.mark.parametrize("n", range(1, 9))
def test_cardinalities(n):
    assert len(long_roots(n)) == 2 * n
    assert len(short_roots(n)) == 2 * n * (n - 1)
    assert len(all_roots(n)) == 2 * n * n
    assert len(positive_roots(n)) == n * n
    assert len(strictly_positive_roots(n)) == n * (n + 1) // 2


@pytest.mark.parametrize("n", range(1, 7))
def test_structure(n):
    longs, shorts, roots = comps(long_roots(n)), comps(short_roots(n)), all_roots(n)
    assert not longs & shorts
    assert comps(roots) == longs | shorts
    assert [r.components for r in roots] == sorted(r.components for r in roots)
    for r in roots:
        nz = [c for c in r.components if c]
        assert all(-2 <= c <= 2 for c in r.components)
        assert sum(abs(c) for c in r.components) == 2
        if r.kind is RootKind.LONG:
            assert len(nz) == 1 and abs(nz[0]) == 2
        else:
            assert len(nz) == 2 and all(abs(c) == 1 for c in nz)
        neg = -r
        assert neg.components in comps(roots)
        assert neg.kind is r.kind
        assert neg.sign is not r.sign
    signs = [r.sign for r in roots]
    assert signs.count(RootSign.POSITIVE) == signs.count(RootSign.NEGATIVE)


def test_rank_must_be_positive():
    with pytest.raises(DomainError):
        all_roots(0)
