"""
Order-by-order construction of the Maurer-Cartan element omega_m.

omega_m lives in the free complete E_m-algebra on x of degree -m, has total
degree -1-m (so its order r part sits in chain degree m(r-1) - 1), vanishes
in order 1, and satisfies d(omega) + omega o omega = 0.  Its order 2 part
is a generator of the top homology of the twisted coinvariants of E_m(2);
each higher order is a lift of the obstruction built from lower orders.

Lifts are exact sparse eliminations on the twisted coinvariant slice, except
for m = 2 from order GEODESIC_FROM on, where the slice is far too large to
list and ``geodesic.lift`` works block by block instead.  Every lift is
checked against the boundary before it is accepted.
"""

import io
import json
import random
from dataclasses import dataclass, field

from . import __version__
from .barratt_eccles import INF, orbit_basis
from .chains import ZZ, Elimination, NoSolution, Ring, SparseMatrix, smith_normal_form, diagonal
from .geodesic import Geodesics
from .power_series import (
    DegreeRule,
    TruncatedSeries,
    mc_residual,
    prelie_compose,
    rep_faces,
    series_differential,
)
from .symm import perm_table

GEODESIC_FROM = 6


class ObstructionNotCycle(AssertionError):
    """An obstruction failed to be a cycle; some sign or filtration is wrong."""


class SolverError(ArithmeticError):
    pass


def coinvariant_boundary(n, r, k, m, cache=None):
    """
    Matrix of the differential E_n(r)_k -> E_n(r)_{k-1} on twisted
    coinvariants, in the orbit-representative bases.
    """
    src = orbit_basis(n, r, k, cache)
    dst = orbit_basis(n, r, k - 1, cache) if k > 0 else []
    index = {code: j for j, code in enumerate(dst)}
    T = perm_table(r)
    cols = []
    for code in src:
        col = {}
        for s, f in rep_faces(T, code, m):
            i = index[f]
            v = col.get(i, 0) + s
            if v:
                col[i] = v
            else:
                del col[i]
        cols.append(col)
    return SparseMatrix(len(dst), cols)


def slice_complex(n, r, m, cache=None, degrees=None):
    """The twisted coinvariant slice E_n(r)_{Sigma_r} as a ChainComplexSlice."""
    from .barratt_eccles import default_cache
    from .chains import ChainComplexSlice
    cache = cache or default_cache()
    if degrees is None:
        degrees = sorted(cache.reps(n, r))
    basis = {k: orbit_basis(n, r, k, cache) for k in degrees}
    bd = {k: coinvariant_boundary(n, r, k, m, cache) for k in degrees if k - 1 in basis}
    return ChainComplexSlice(basis, bd)


def initial_cycle(m, ring=ZZ, cache=None):
    """
    Generator of H_{m-1} of the twisted coinvariants of E_m(2), as an order 2
    series term {code: coeff}.  The generator is read off the Smith form of
    the cycle lattice and normalised to a positive leading coefficient.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    k = m - 1
    reps = orbit_basis(m, 2, k, cache)
    if not reps:
        raise SolverError("E_%d(2) has no simplices in degree %d" % (m, k))
    D = coinvariant_boundary(m, 2, k, m, cache).to_dense() if k > 0 else []
    # cycles: kernel of D
    if D and any(any(row) for row in D):
        U, S, V = smith_normal_form(D, ring)
        rk = len(diagonal(S))
        cycles = [[V[i][t] for i in range(len(reps))] for t in range(rk, len(reps))]
    else:
        cycles = [[int(i == t) for i in range(len(reps))] for t in range(len(reps))]
    above = orbit_basis(m, 2, k + 1, cache)
    if above:
        raise SolverError("unexpected simplices above the top degree of E_%d(2)" % m)
    if len(cycles) != 1:
        raise SolverError("H_%d of the E_%d(2) slice has rank %d, expected 1" % (k, m, len(cycles)))
    vec = cycles[0]
    lead = next(v for v in vec if v)
    if lead < 0:
        vec = [-v for v in vec]
    return {reps[i]: ring.reduce(v) for i, v in enumerate(vec) if ring.reduce(v)}


@dataclass
class OrderCheck:
    r: int
    chain_degree: int
    expected_degree: int
    slice_size: tuple      # (columns, rows) of the lift, None when not listed
    residual_zero: bool
    nterms: int
    method: str = "elimination"


@dataclass
class OmegaCertificate:
    m: int
    n: int
    R: int
    ring: str
    seed: int
    omega: TruncatedSeries
    checks: list = field(default_factory=list)
    version: str = __version__

    def header(self):
        return {
            "format": "enkoszul-omega-certificate",
            "version": self.version,
            "m": self.m,
            "n": "inf" if self.n == INF else self.n,
            "R": self.R,
            "ring": self.ring,
            "seed": self.seed,
            "checks": [
                {"r": c.r, "chain_degree": c.chain_degree, "expected_degree": c.expected_degree,
                 "slice_size": list(c.slice_size) if c.slice_size is not None else None,
                 "residual_zero": c.residual_zero, "nterms": c.nterms, "method": c.method}
                for c in self.checks
            ],
        }

    def to_dict(self):
        out = self.header()
        out["omega"] = self.omega.to_dict()
        return out

    def write(self, f):
        """
        Stream the JSON form: sorted keys, one top-level key per line and one
        series term per line, so large certificates never sit in memory as
        text.  Output is a deterministic function of the certificate.
        """
        head = self.header()
        head["omega"] = None
        keys = sorted(head)
        f.write("{\n")
        for i, key in enumerate(keys):
            f.write(json.dumps(key) + ":")
            if key == "omega":
                self.omega.write_json(f)
            else:
                f.write(json.dumps(head[key], sort_keys=True, separators=(",", ":")))
            f.write(",\n" if i + 1 < len(keys) else "\n")
        f.write("}\n")

    def to_json(self):
        buf = io.StringIO()
        self.write(buf)
        return buf.getvalue()

    @classmethod
    def from_dict(cls, data):
        checks = [OrderCheck(c["r"], c["chain_degree"], c["expected_degree"],
                             tuple(c["slice_size"]) if c.get("slice_size") is not None else None,
                             c["residual_zero"], c["nterms"], c.get("method", "elimination"))
                  for c in data.get("checks", [])]
        n = INF if data["n"] == "inf" else int(data["n"])
        return cls(int(data["m"]), n, int(data["R"]), data["ring"], int(data["seed"]),
                   TruncatedSeries.from_dict(data["omega"]), checks, data.get("version", "?"))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def save(self, path):
        with open(path, "w") as f:
            self.write(f)

    @classmethod
    def load(cls, path):
        with open(path) as f:
            return cls.from_json(f.read())

    @property
    def ring_obj(self):
        return Ring.parse(self.ring)


def _seed_perturbation(elim, rng, ring, count=3):
    free = elim.free_cols()
    if not free:
        return None
    picks = sorted(rng.sample(free, min(count, len(free))))
    vec = {}
    for j in picks:
        if ring.p:
            vec[j] = rng.randrange(1, ring.p)
        else:
            vec[j] = rng.choice((-1, 1))
    return vec


def _lift_slice(r, k, obstruction, m, ring, rng, cache, log):
    src = orbit_basis(m, r, k, cache)
    dst = orbit_basis(m, r, k - 1, cache)
    index = {code: i for i, code in enumerate(dst)}
    b = [0] * len(dst)
    for code, c in obstruction.items():
        b[index[code]] = ring.reduce(-c)
    M = coinvariant_boundary(m, r, k, m, cache)
    if log:
        log("order %d: lifting in a %d x %d slice" % (r, len(dst), len(src)))
    elim = Elimination(M, ring, rhs=b)
    perturb = _seed_perturbation(elim, rng, ring) if rng else None
    try:
        x = elim.solve(perturb)
    except NoSolution as exc:
        raise NoSolution("order %d obstruction is not a boundary: %s" % (r, exc)) from None
    if M.apply(x, ring) != b:
        raise SolverError("lift at order %d failed verification" % r)
    return {src[j]: v for j, v in enumerate(x) if v}, (len(src), len(dst))


def _lift_geodesic(r, obstruction, m, ring, rng, log):
    G = Geodesics(r, ring, log=log)
    target = {code: ring.reduce(-c) for code, c in obstruction.items() if ring.reduce(c)}
    if log:
        log("order %d: geodesic lift of %d terms" % (r, len(target)))
    y = G.solve(target, m)
    if rng:
        # seeds move the lift by the boundary of a few random cofaces
        for code in rng.sample(sorted(y), min(3, len(y))):
            cof = G.inner_cofaces(code)
            if cof:
                u = rng.choice(cof)
                c = rng.randrange(1, ring.p) if ring.p else rng.choice((-1, 1))
                for s, f in rep_faces(G.T, u, m):
                    w = ring.reduce(y.get(f, 0) + s * c)
                    if w:
                        y[f] = w
                    else:
                        y.pop(f, None)
    got = series_differential(TruncatedSeries(m, m, r, {r: y})).mod(ring.p).terms.get(r, {})
    if got != target:
        raise SolverError("geodesic lift at order %d failed verification" % r)
    return y


def solve_omega(m, R, seed=0, ring=ZZ, cache=None, log=None):
    """
    Build omega_m through order R.  Seed 0 gives the canonical lift at every
    order; other seeds add a seeded kernel element to each lift.
    """
    if m < 1:
        raise ValueError("m = %d is not supported: omega_m needs an E_m operad with m >= 1" % m)
    if R < 2:
        raise ValueError("R must be >= 2")
    rule = DegreeRule(m, m)
    p = ring.p
    rng = random.Random(seed)
    omega = TruncatedSeries(m, m, R, {2: initial_cycle(m, ring, cache)})
    checks = []
    checks.append(OrderCheck(2, m - 1, m - 1, (len(orbit_basis(m, 2, m - 1, cache)), 0),
                             not series_differential(omega).mod(p).terms.get(2), len(omega.terms[2])))
    for r in range(3, R + 1):
        k = rule.omega_chain_degree(r)
        cur = TruncatedSeries(m, m, r, omega.truncate(r - 1).terms)
        obstruction = prelie_compose(cur, cur, order=r).mod(p).terms.get(r, {})
        # must be a cycle before lifting
        dO = series_differential(TruncatedSeries(m, m, r, {r: obstruction})).mod(p)
        if not dO.is_zero():
            raise ObstructionNotCycle("order %d obstruction is not a cycle" % r)
        geodesic = m == 2 and r >= GEODESIC_FROM
        if not obstruction:
            size = None if geodesic else (len(orbit_basis(m, r, k, cache)), len(orbit_basis(m, r, k - 1, cache)))
            checks.append(OrderCheck(r, k, k, size, True, 0))
            if log:
                log("order %d: obstruction vanishes" % r)
            continue
        if geodesic:
            terms = _lift_geodesic(r, obstruction, m, ring, rng if seed else None, log)
            check = OrderCheck(r, k, k, None, True, len(terms), "geodesic")
        else:
            terms, size = _lift_slice(r, k, obstruction, m, ring, rng if seed else None, cache, log)
            check = OrderCheck(r, k, k, size, True, len(terms))
        if terms:
            omega = omega + TruncatedSeries(m, m, R, {r: terms})
        checks.append(check)
    cert = OmegaCertificate(m, m, R, str(ring), seed, omega, checks)
    return cert


@dataclass
class MCReport:
    ok: bool
    residual_orders: list
    omega1_zero: bool
    degrees_ok: bool
    generator_ok: bool
    in_filtration: bool
    messages: list = field(default_factory=list)


def verify_mc(cert, cache=None):
    """Recompute d(omega) + omega o omega from scratch and check the side conditions."""
    omega = cert.omega
    ring = Ring.parse(cert.ring)
    p = ring.p
    rule = DegreeRule(omega.m)
    msgs = []
    res = mc_residual(omega).mod(p)
    bad = sorted(r for r, d in res.terms.items() if any(d.values()))
    if bad:
        msgs.append("nonzero residual at orders %s" % bad)
    omega1 = not omega.terms.get(1)
    if not omega1:
        msgs.append("omega(1) != 0")
    degrees_ok = True
    for r, d in omega.terms.items():
        for code in d:
            if len(code) - 1 != rule.omega_chain_degree(r):
                degrees_ok = False
                msgs.append("order %d term of chain degree %d, expected %d"
                            % (r, len(code) - 1, rule.omega_chain_degree(r)))
                break
    gen_ok = False
    try:
        gen = initial_cycle(omega.m, ring, cache)
        o2 = {k: ring.reduce(v) for k, v in omega.terms.get(2, {}).items() if ring.reduce(v)}
        # order 2 is a cycle in the one-dimensional top degree, so it must be +- the generator
        gen_ok = o2 == gen or o2 == {k: ring.reduce(-v) for k, v in gen.items()}
    except SolverError as exc:
        msgs.append(str(exc))
    if not gen_ok:
        msgs.append("order 2 term is not a generator of the top homology")
    filt = omega.in_filtration(omega.m)
    if not filt:
        msgs.append("omega leaves E_%d" % omega.m)
    ok = not bad and omega1 and degrees_ok and gen_ok and filt
    return MCReport(ok, bad, omega1, degrees_ok, gen_ok, filt, msgs)


def embed(cert_or_series, n):
    """View omega_m inside the free complete E_n-algebra, n >= m."""
    omega = cert_or_series.omega if isinstance(cert_or_series, OmegaCertificate) else cert_or_series
    if n != INF and n < omega.m:
        raise ValueError("cannot embed omega_%d into E_%s with n < m" % (omega.m, n))
    return omega.with_n(n)
