import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from enkoszul import oracle
from enkoszul.barratt_eccles import (
    INF,
    BasisCache,
    BEChain,
    basis,
    complexity,
    differential,
    filtration_level,
    in_filtration,
    orbit_basis,
    partial_composite,
    shuffles,
    translate,
)
from enkoszul.symm import all_perms, inverse

# [DERIVED] simplex counts of E_n(r)_k listed by brute force in the oracle
FROZEN_COUNTS = {
    (1, 3, 0): 6, (1, 3, 1): 0, (1, 4, 0): 24, (1, 4, 2): 0,
    (2, 2, 0): 2, (2, 2, 1): 2, (2, 2, 2): 0,
    (2, 3, 0): 6, (2, 3, 1): 30, (2, 3, 2): 36, (2, 3, 3): 12,
    (2, 4, 1): 552, (2, 4, 2): 2496, (2, 4, 3): 4704,
    (3, 2, 2): 2, (3, 2, 3): 0,
    (3, 3, 1): 30, (3, 3, 2): 150, (3, 3, 3): 360,
    (3, 4, 2): 12696, (3, 4, 3): 133200,
    (INF, 2, 3): 2, (INF, 3, 3): 750, (INF, 4, 2): 12696, (INF, 4, 3): 292008,
}


@pytest.mark.parametrize("key", sorted(FROZEN_COUNTS, key=str))
def test_counts(key):
    n, r, k = key
    assert len(basis(n, r, k)) == FROZEN_COUNTS[key]
    assert len(orbit_basis(n, r, k)) * math.factorial(r) == FROZEN_COUNTS[key]


@pytest.mark.parametrize("n,r,k", [(2, 3, 2), (3, 3, 2), (2, 4, 1), (INF, 3, 2)])
def test_basis_matches_oracle(n, r, k):
    assert basis(n, r, k) == sorted(oracle.simplices(None if n == INF else n, r, k))


def test_orbit_representatives_start_at_identity():
    for code in orbit_basis(3, 4, 3):
        assert code[0] == 0
    reps = orbit_basis(2, 4, 3)
    assert reps == sorted(reps)


def test_complexity():
    s = ((1, 2), (2, 1), (1, 2))
    assert complexity(s, 1, 2) == 3
    assert filtration_level(s) == 3
    assert in_filtration(s, 3) and not in_filtration(s, 2)
    assert filtration_level(((1, 2, 3),)) == 1


def test_simplex_rejects_degenerate():
    with pytest.raises(ValueError):
        BEChain.simplex((1, 2), (1, 2))
    with pytest.raises(ValueError):
        BEChain.simplex((1, 2), (1, 2, 3))


def test_shuffle_count():
    for p in range(4):
        for q in range(4):
            assert len(shuffles(p, q)) == math.comb(p + q, p)


def simplex_strategy(r_max=3, k_max=3):
    def build(r):
        return st.lists(st.sampled_from(all_perms(r)), min_size=1, max_size=k_max + 1).filter(
            lambda w: all(a != b for a, b in zip(w, w[1:])))
    return st.integers(1, r_max).flatmap(build)


@given(simplex_strategy(4, 4))
def test_d_squared(word):
    x = BEChain.from_words({tuple(word): 1})
    assert not differential(differential(x))


@given(simplex_strategy(), simplex_strategy(), st.data())
def test_composite_matches_oracle_and_leibniz(u, v, data):
    a = BEChain.from_words({tuple(u): 1})
    b = BEChain.from_words({tuple(v): 1})
    i = data.draw(st.integers(1, a.arity))
    ab = partial_composite(a, b, i)
    assert ab.words() == oracle.composite({tuple(u): 1}, {tuple(v): 1}, i)
    rhs = partial_composite(differential(a), b, i) + (-1) ** a.dim * partial_composite(a, differential(b), i)
    assert differential(ab) == rhs


@given(simplex_strategy(), simplex_strategy(), st.data())
def test_equivariance(u, v, data):
    a = BEChain.from_words({tuple(u): 1})
    b = BEChain.from_words({tuple(v): 1})
    sigma = data.draw(st.sampled_from(all_perms(a.arity)))
    i = data.draw(st.integers(1, a.arity))
    j = inverse(sigma)[i - 1]
    tau = oracle._relabel(sigma, b.arity, j)
    assert partial_composite(translate(sigma, a), b, i) == translate(tau, partial_composite(a, b, j))


def test_axioms_exhaustive_small():
    def main_composite(a, b, i):
        return partial_composite(BEChain.from_words(a), BEChain.from_words(b), i).words()

    def main_differential(x):
        return differential(BEChain.from_words(x)).words() if x else {}

    rep = oracle.axioms_exhaustive(2, 2, main_composite, main_differential)
    assert rep.passed, rep.witness
    assert rep.checked > 900


def test_disk_cache_round_trip(tmp_path):
    cache = BasisCache(str(tmp_path))
    first = cache.reps(2, 3)
    again = BasisCache(str(tmp_path)).reps(2, 3)
    assert again == first
    assert (tmp_path / "E2" / "r3" / "manifest").exists()
    head = (tmp_path / "E2" / "r3" / "k1").read_text().splitlines()[0]
    assert head.startswith("enkoszul-basis v1 n=2 r=3 k=1 count=5")


def test_large_arity_is_bounded():
    cache = BasisCache()
    assert not cache.complete(2, 6) and cache.complete(1, 6) and cache.complete(3, 5)
    # only the dimensions asked for are listed
    data = cache.reps(2, 6, 1)
    assert max(data) == 1 and len(data[1]) == 719
    with pytest.raises(ValueError):
        cache.reps(INF, 3)
