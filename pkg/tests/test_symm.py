import pytest
from hypothesis import given
from hypothesis import strategies as st

from enkoszul.symm import (
    REVERSED,
    STRAIGHT,
    all_perms,
    block_substitute,
    check_perm,
    compose,
    identity,
    inverse,
    perm_table,
    restrict_pair,
    sign,
)


def perms(r):
    return st.permutations(list(range(1, r + 1))).map(tuple)


arity = st.integers(1, 6)


@given(arity.flatmap(lambda r: st.tuples(perms(r), perms(r), perms(r))))
def test_group_laws(ppp):
    p, q, s = ppp
    r = len(p)
    assert compose(compose(p, q), s) == compose(p, compose(q, s))
    assert compose(p, identity(r)) == p == compose(identity(r), p)
    assert compose(p, inverse(p)) == identity(r)
    assert sign(compose(p, q)) == sign(p) * sign(q)


def test_sign_small():
    assert sign((1, 2, 3)) == 1
    assert sign((2, 1, 3)) == -1
    assert sign((2, 3, 1)) == 1
    assert [sign(p) for p in all_perms(3)].count(-1) == 3


def test_block_substitute_example():
    assert block_substitute((2, 1), (1, 2), 1) == (3, 1, 2)
    assert block_substitute((2, 1), (2, 1), 2) == (3, 2, 1)
    assert block_substitute((1,), (3, 1, 2), 1) == (3, 1, 2)
    with pytest.raises(ValueError):
        block_substitute((1, 2), (1,), 3)


@given(st.integers(1, 4).flatmap(lambda r: st.tuples(perms(r), perms(r), perms(r))),
       st.integers(1, 4).flatmap(lambda s: perms(s)))
def test_block_substitute_is_a_composition(ppp, v):
    # substituting into slot i, then the identity, is associative with compose
    u = ppp[0]
    for i in range(1, len(u) + 1):
        w = block_substitute(u, v, i)
        assert sorted(w) == list(range(1, len(u) + len(v)))
        # identities substitute to identities
        assert block_substitute(identity(len(u)), identity(len(v)), i) == identity(len(w))


def test_restrict_pair():
    assert restrict_pair((1, 2, 3), 1, 3) == STRAIGHT
    assert restrict_pair((3, 2, 1), 1, 3) == REVERSED
    with pytest.raises(ValueError):
        restrict_pair((1, 2), 2, 1)


def test_check_perm():
    assert check_perm([2, 1]) == (2, 1)
    for bad in ([], [1, 1], [0, 1], [1, 3]):
        with pytest.raises(ValueError):
            check_perm(bad)


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_perm_table(r):
    T = perm_table(r)
    assert T.perms == sorted(T.perms)
    assert T.perms[0] == identity(r)
    for a in range(T.order):
        assert T.mul[a][T.inv[a]] == 0
        assert T.sign[a] == sign(T.perms[a])
        # the mask lists reversed pairs, so its popcount is the length
        inversions = sum(1 for x in range(r) for y in range(x + 1, r) if T.perms[a][x] > T.perms[a][y])
        assert bin(T.mask[a]).count("1") == inversions
    assert len(set(T.mask)) == T.order
