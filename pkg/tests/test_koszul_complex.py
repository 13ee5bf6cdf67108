import csv
import io
import json
import random

import pytest

from enkoszul import koszul_complex as kc
from enkoszul import oracle
from enkoszul.barratt_eccles import INF
from enkoszul.chains import F2, ZZ, SparseMatrix
from enkoszul.koszul_complex import (
    SpecError,
    SquareZeroError,
    TwistedComplexSpec,
    build,
    cohomological_complex,
    dualize,
    homology_report,
    product_is_zero,
)
from enkoszul.mc_solver import OmegaCertificate, solve_omega
from enkoszul.power_series import TruncatedSeries


def test_spec_validation():
    c2 = solve_omega(2, 4)
    with pytest.raises(SpecError):
        TwistedComplexSpec(1, 2, 4).validate()
    with pytest.raises(SpecError):
        TwistedComplexSpec(INF, 2, 4).validate()
    with pytest.raises(SpecError):
        TwistedComplexSpec(2, 1, 4, ZZ, c2).validate()
    with pytest.raises(SpecError):
        TwistedComplexSpec(2, 2, 4, F2, c2).validate()
    with pytest.raises(SpecError):
        TwistedComplexSpec(2, 2, 5, ZZ, c2).validate()
    with pytest.raises(SpecError):
        TwistedComplexSpec(2, 2, 4, ZZ, c2, (3, 1)).validate()
    with pytest.raises(SpecError):
        TwistedComplexSpec(2, 2, 6).all_degrees()


@pytest.mark.parametrize("n,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_square_zero_small(n, m):
    for ring in (ZZ, F2):
        cert = solve_omega(m, 3, ring=ring)
        C = build(TwistedComplexSpec(n, m, 3, ring, cert))
        assert C.check()
        D = cohomological_complex(TwistedComplexSpec(n, m, 3, ring, cert))
        assert D.check()


def test_tampered_omega_breaks_square_zero():
    cert = solve_omega(2, 4)
    terms = {r: dict(d) for r, d in cert.omega.terms.items()}
    code = sorted(terms[3])[0]
    terms[3][code] += 1
    bad = OmegaCertificate(2, 2, 4, "Z", 0, TruncatedSeries(2, 2, 4, terms))
    with pytest.raises(SquareZeroError):
        build(TwistedComplexSpec(2, 2, 4, ZZ, bad))


def test_bidegrees_and_dual():
    cert = solve_omega(1, 3)
    C = build(TwistedComplexSpec(2, 1, 3, ZZ, cert))
    D = dualize(C)
    assert D.dualized and D.check()
    for q in D.degrees:
        for r, c in D.bidegrees(q):
            assert r * 1 - c == q


@pytest.mark.parametrize("n,m,R", [(2, 1, 3), (2, 2, 3), (3, 1, 3)])
def test_untwisted_splits_into_slices(n, m, R):
    # over a field the dual of the untwisted complex is the sum of the duals of
    # the coinvariant slices, whose homology the oracle computes independently
    rep = homology_report(TwistedComplexSpec(n, m, R, F2, None))
    want = {}
    for r in range(1, R + 1):
        top = (n - 1) * r * (r - 1) // 2
        for c, (rk, _) in oracle.slice_homology(n, r, m, list(range(top + 1)), p=2).items():
            want[r * m - c] = want.get(r * m - c, 0) + rk
    got = {row.q: row.rank for row in rep.rows}
    assert {q: v for q, v in got.items() if v} == {q: v for q, v in want.items() if v}


# [DERIVED] main-path reports, kept as regression values
@pytest.mark.parametrize("ring,m,expected", [
    (ZZ, 1, {1: (1, []), 2: (0, [3])}),
    (F2, 1, {1: (1, [])}),
    (ZZ, 2, {6: (0, [3]), 8: (1, [])}),
    (F2, 2, {8: (1, [])}),
])
def test_report_values(ring, m, expected):
    rep = homology_report(TwistedComplexSpec(2, m, 4, ring, solve_omega(m, 4, ring=ring)))
    got = {r.q: (r.rank, r.torsion) for r in rep.rows if r.rank or r.torsion}
    assert got == expected


def test_report_formats():
    rep = homology_report(TwistedComplexSpec(2, 1, 4, ZZ, solve_omega(1, 4), (0, 3)))
    data = json.loads(rep.to_json())
    assert data["format"] == "enkoszul-homology-report"
    assert data["window"] == [0, 3]
    assert [r["q"] for r in data["rows"]] == [0, 1, 2, 3]
    row = data["rows"][1]
    assert set(row) == {"q", "total_degree", "bidegrees", "rank", "torsion", "stable", "populated"}
    assert row["total_degree"] == -1 and row["rank"] == 1 and row["stable"] is True
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["q", "total_degree", "rank", "torsion", "stable"]
    assert rows[3] == ["2", "-2", "0", "3", "false"]


def test_scipy_product_agrees(monkeypatch):
    rng = random.Random(1)
    for _ in range(20):
        n, k, l = rng.randint(1, 30), rng.randint(1, 30), rng.randint(1, 30)
        A = SparseMatrix(n, [{i: rng.randint(-3, 3) for i in rng.sample(range(n), min(n, 3))} for _ in range(k)])
        B = SparseMatrix(k, [{i: rng.randint(-3, 3) for i in rng.sample(range(k), min(k, 3))} for _ in range(l)])
        want = (A @ B).is_zero(ZZ), (A @ B).is_zero(F2)
        monkeypatch.setattr(kc, "SCIPY_THRESHOLD", 0)
        got = product_is_zero(A, B, ZZ), product_is_zero(A, B, F2)
        monkeypatch.setattr(kc, "SCIPY_THRESHOLD", 20000)
        assert got == want
    zero = SparseMatrix(2, [{0: 2, 1: 4}])
    monkeypatch.setattr(kc, "SCIPY_THRESHOLD", 0)
    assert product_is_zero(SparseMatrix(1, [{0: 1}, {0: 1}]), zero, F2)
