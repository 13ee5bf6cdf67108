import pytest

from enkoszul import oracle


def test_smith_diagonal():
    assert oracle.smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert oracle.smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert oracle.smith_diagonal([[2, 0], [0, 3]], p=2) == [1]
    assert oracle.smith_diagonal([[0, 0]]) == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_spheres(n):
    h = oracle.total_homology(n, 2, list(range(n)))
    assert h[0] == (1, []) and h[n - 1] == (1, [])
    assert all(h[k] == (0, []) for k in range(1, n - 1))


def test_e1_two_points():
    assert oracle.total_homology(1, 2, [0]) == {0: (2, [])}


def test_level_and_complexity():
    w = ((1, 2, 3), (2, 1, 3), (1, 2, 3))
    assert oracle.complexity(w, 1, 2) == 3
    assert oracle.complexity(w, 1, 3) == 1
    assert oracle.level(w) == 3


def test_composite_arity_one():
    # the unit composes trivially on both sides
    a = {((2, 1), (1, 2)): 1}
    assert oracle.composite({((1,),): 1}, a, 1) == a
    assert oracle.composite(a, {((1,),): 1}, 2) == a


def test_orbit_sum_needs_a_free_orbit():
    assert oracle.orbit_sum_reduce({((2, 1), (1, 2)): 1}, 1) == {((1, 2), (2, 1)): -1}
    assert oracle.orbit_sum_reduce({((2, 1), (1, 2)): 1}, 2) == {((1, 2), (2, 1)): 1}


def test_axioms_self_consistent():
    rep = oracle.axioms_exhaustive(2, 1)
    assert rep.passed and rep.checked > 50
