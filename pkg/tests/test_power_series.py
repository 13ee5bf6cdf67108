import io
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from enkoszul import oracle
from enkoszul.barratt_eccles import BEChain, orbit_basis, translate
from enkoszul.checks import prelie_defect, random_homogeneous
from enkoszul.power_series import (
    DegreeRule,
    TruncatedSeries,
    coinvariant_reduce,
    mc_residual,
    prelie_compose,
    rep_of,
    series_differential,
    shifted_degree,
)
from enkoszul.symm import all_perms, perm_table, sign


def test_degree_rule():
    rule = DegreeRule(2)
    assert rule.total(3, 5) == -1
    assert rule.shifted(3, 5) == 1
    assert rule.topological(3, 5) == 1
    assert rule.chain_degree(3, -1) == 5
    # omega has total degree -1-m
    for r in range(2, 7):
        assert rule.total(r, rule.omega_chain_degree(r)) == -1 - 2


def test_rep_of_sign():
    T = perm_table(3)
    code = orbit_basis(3, 3, 2)[4]
    for g in range(T.order):
        moved = tuple(T.mul[g][a] for a in code)
        assert rep_of(T, moved, 1) == (T.sign[g], code)
        assert rep_of(T, moved, 2) == (1, code)


@given(st.integers(2, 4), st.integers(0, 2), st.integers(1, 4), st.data())
def test_coinvariants_match_orbit_norm(r, k, m, data):
    reps = orbit_basis(3, r, k)
    code = data.draw(st.sampled_from(reps))
    g = data.draw(st.sampled_from(all_perms(r)))
    x = translate(g, BEChain(r, k, {code: 1}))
    assert coinvariant_reduce(x, m).words() == oracle.orbit_sum_reduce(x.words(), m)
    assert coinvariant_reduce(x, m).terms == {code: sign(g) ** m}


def test_series_arithmetic():
    a = TruncatedSeries(2, 2, 4, {2: {(0, 1): 3}})
    b = TruncatedSeries(2, 2, 4, {2: {(0, 1): -3}, 3: {(0,): 1}})
    assert (a + b).terms == {3: {(0,): 1}}
    assert (a - a).is_zero()
    assert (2 * a).terms == {2: {(0, 1): 6}}
    assert a.mod(2).terms == {2: {(0, 1): 1}}
    assert TruncatedSeries(2, 2, 2, {3: {(0,): 1}}).is_zero()
    with pytest.raises(ValueError):
        a + TruncatedSeries(2, 1, 4)
    with pytest.raises(ValueError):
        TruncatedSeries(2, 0, 4)


def test_generator_is_a_left_unit():
    rng = random.Random(3)
    x = TruncatedSeries.generator(2, 2, 5)
    for _ in range(30):
        b = random_homogeneous(rng, 2, 2, 5)
        assert prelie_compose(x, b) == b


def test_serialisation_round_trip():
    a = TruncatedSeries(3, 1, 4, {2: {(0, 1): 1}, 3: {(0, 2, 5): -2, (0, 1): 4}})
    d = a.to_dict()
    assert set(d) == {"n", "m", "R", "orders"}
    assert TruncatedSeries.from_dict(d) == a
    buf = io.StringIO()
    a.write_json(buf)
    assert json.loads(buf.getvalue()) == json.loads(json.dumps(d))
    bad = {"n": 2, "m": 1, "R": 2, "orders": [{"r": 2, "terms": [{"simplex": [[2, 1], [1, 2]], "coeff": 1}]}]}
    with pytest.raises(ValueError):
        TruncatedSeries.from_dict(bad)


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2, 3]))
def test_prelie_identity(seed, m):
    rng = random.Random(seed)
    a, b, c = (random_homogeneous(rng, 2, m, 5, rng.randint(1, 3)) for _ in range(3))
    assert prelie_defect(a, b, c).is_zero()


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2, 3]))
def test_differential_is_a_derivation(seed, m):
    rng = random.Random(seed)
    a = random_homogeneous(rng, 3, m, 5, rng.randint(1, 3))
    b = random_homogeneous(rng, 3, m, 5, rng.randint(1, 3))
    d = series_differential
    lhs = d(prelie_compose(a, b))
    rhs = (-1) ** (shifted_degree(b) % 2) * prelie_compose(d(a), b) + prelie_compose(a, d(b))
    assert lhs == rhs
    assert d(d(a)).is_zero()


def test_order_filter():
    rng = random.Random(5)
    a = random_homogeneous(rng, 2, 2, 5, 2) + random_homogeneous(rng, 2, 2, 5, 3)
    full = prelie_compose(a, a)
    assert prelie_compose(a, a, order=4).terms == {4: full.terms[4]}


def test_residual_of_zero_and_generator():
    z = TruncatedSeries.zero(2, 2, 4)
    assert mc_residual(z).is_zero()
    assert shifted_degree(TruncatedSeries(2, 2, 4, {2: {(0, 1): 1}})) == -1
