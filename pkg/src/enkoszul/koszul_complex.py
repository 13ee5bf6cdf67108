"""
The twisted complex (E_n(x), d + del_m) truncated at order R, and its dual.

Grading.  A basis element is an orbit representative of order r and chain
degree c.  Its total degree is D = c - r m and its topological degree is
q = -D = r m - c.  The algebra differential lowers D by one, so it raises q;
the dual complex is a chain complex in q, and that is where homology is
reported.

Truncation.  del_m raises the order by at least one because omega(1) = 0, so
dropping orders above R gives the quotient complex E/E^{(>R)}, an honest
complex.  Its dual is a subcomplex of the continuous dual.  A degree is
flagged stable when the answers at R - 1 and R agree; this is a heuristic.
"""

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import __version__
from .barratt_eccles import INF, default_cache, orbit_basis
from .chains import (
    ZZ,
    ChainComplexSlice,
    Ring,
    SparseMatrix,
    homology,
)
from .mc_solver import OmegaCertificate, embed
from .power_series import DegreeRule, TruncatedSeries, compose_terms, rep_faces
from .symm import perm_table

# products with more stored entries than this go through scipy
SCIPY_THRESHOLD = 20000


class SquareZeroError(AssertionError):
    """(d + del)^2 != 0 on a built truncation."""


class SpecError(ValueError):
    pass


@dataclass
class TwistedComplexSpec:
    n: int
    m: int
    R: int
    ring: Ring = ZZ
    cert: OmegaCertificate = None     # None means untwisted
    window: tuple = None              # (q_lo, q_hi), inclusive
    cohomological: bool = False       # use ad_m instead of del_m

    def validate(self):
        if self.n == INF:
            raise SpecError("the twisted complex needs a finite n")
        if not (self.n >= self.m >= 1):
            raise SpecError("need n >= m >= 1, got n=%s m=%s" % (self.n, self.m))
        if self.R < 2:
            raise SpecError("R must be >= 2")
        if self.cert is not None:
            if self.cert.m != self.m:
                raise SpecError("certificate is for m=%d, not m=%d" % (self.cert.m, self.m))
            if Ring.parse(self.cert.ring) != self.ring:
                raise SpecError("certificate ring %s does not match %s" % (self.cert.ring, self.ring))
            if self.cert.R < self.R:
                raise SpecError("certificate only reaches order %d < R = %d" % (self.cert.R, self.R))
        if self.window is not None and self.window[0] > self.window[1]:
            raise SpecError("empty window %r" % (self.window,))

    def omega(self):
        if self.cert is None:
            return None
        w = embed(self.cert, self.n)
        return TruncatedSeries(self.n, self.m, self.R, w.truncate(self.R).terms)

    def with_R(self, R):
        return TwistedComplexSpec(self.n, self.m, R, self.ring, self.cert, self.window, self.cohomological)

    def all_degrees(self, cache=None):
        """Topological degrees populated at this truncation."""
        cache = cache or default_cache()
        big = [r for r in range(1, self.R + 1) if not cache.complete(self.n, r)]
        if big:
            raise SpecError("E_%d(%d) is too large to list in every degree; give a window"
                            % (self.n, big[0]))
        qs = set()
        for r in range(1, self.R + 1):
            for c in orbit_basis_dims(self.n, r, cache):
                qs.add(r * self.m - c)
        return sorted(qs)


def orbit_basis_dims(n, r, cache=None):
    cache = cache or default_cache()
    return sorted(k for k, v in cache.reps(n, r).items() if v)


@dataclass
class GradedBlockComplex:
    """
    Algebra-side truncated complex.  ``slice`` is graded by total degree D;
    ``labels[D]`` lists the (order, representative) pairs of the basis.
    """
    spec: TwistedComplexSpec
    slice: ChainComplexSlice
    labels: dict
    dualized: bool = False

    @property
    def degrees(self):
        return self.slice.degrees

    def bidegrees(self, D):
        """(order, chain degree) blocks present in total degree D."""
        deg = -D if self.dualized else D
        m = self.spec.m
        return sorted({(r, deg + r * m) for r, _ in self.labels.get(D, [])})

    def check(self):
        square_zero(self.slice, self.spec.ring)
        return True


def _index(labels):
    return {lab: i for i, lab in enumerate(labels)}


def build(spec, cache=None, check=True):
    """
    Assemble the truncated twisted complex over the window (grown by one
    degree on each side so homology in the window is defined).
    """
    spec.validate()
    n, m, R = spec.n, spec.m, spec.R
    ring = spec.ring
    p = ring.p
    rule = DegreeRule(m, n)
    omega = spec.omega()
    if spec.window is not None:
        lo, hi = spec.window
        qs = list(range(lo - 1, hi + 2))
    else:
        qs = spec.all_degrees(cache)
    labels = {}
    for q in qs:
        lab = []
        for r in range(1, R + 1):
            c = r * m - q
            if c < 0:
                continue
            lab.extend((r, code) for code in orbit_basis(n, r, c, cache))
        labels[-q] = lab
    index = {D: _index(lab) for D, lab in labels.items()}
    bd = {}
    omega_terms = sorted(omega.terms.items()) if omega is not None else []
    for D in sorted(labels):
        if D - 1 not in labels:
            continue
        tgt = index[D - 1]
        cols = []
        for r, code in labels[D]:
            col = {}
            T = perm_table(r)
            for s, f in rep_faces(T, code, m):
                i = tgt[(r, f)]
                col[i] = col.get(i, 0) + s
            c = len(code) - 1
            for t, terms in omega_terms:
                out = r + t - 1
                if out > R:
                    break
                for wcode, wc in terms.items():
                    for key, v in compose_terms(r, code, t, wcode, m).items():
                        i = tgt[(out, key)]
                        col[i] = col.get(i, 0) + v * wc
            if spec.cohomological and omega_terms:
                # ad(xi) = xi o w - (-1)^|xi| w o xi
                sgn = 1 if rule.shifted(r, c) & 1 else -1
                for t, terms in omega_terms:
                    out = r + t - 1
                    if out > R:
                        break
                    for wcode, wc in terms.items():
                        for key, v in compose_terms(t, wcode, r, code, m).items():
                            i = tgt[(out, key)]
                            col[i] = col.get(i, 0) + sgn * v * wc
            if p:
                col = {i: v % p for i, v in col.items() if v % p}
            elif 0 in col.values():
                col = {i: v for i, v in col.items() if v}
            cols.append(col)
        bd[D] = SparseMatrix(len(labels[D - 1]), cols)
    C = GradedBlockComplex(spec, ChainComplexSlice({D: list(v) for D, v in labels.items()}, bd), labels)
    if check:
        C.check()
    return C


def cohomological_complex(spec, cache=None, check=True):
    """Same blocks, with ad_m as the twisting term."""
    s = TwistedComplexSpec(spec.n, spec.m, spec.R, spec.ring, spec.cert, spec.window, True)
    return build(s, cache, check)


def dualize(C):
    labels = {-D: v for D, v in C.labels.items()}
    return GradedBlockComplex(C.spec, C.slice.dual(), labels, not C.dualized)


# ---------------------------------------------------------------------------
# square-zero

def _to_scipy(M):
    lengths = np.fromiter((len(col) for col in M.cols), dtype=np.int64, count=M.ncols)
    rows, vals = [], []
    for col in M.cols:
        rows.extend(col)
        vals.extend(col.values())
    vals = np.array(vals, dtype=object if not vals else None)
    if vals.dtype == object or (vals.size and np.abs(vals).max() >= 2 ** 31):
        return None
    cols = np.repeat(np.arange(M.ncols, dtype=np.int64), lengths)
    return sp.csr_matrix((vals.astype(np.int64), (np.array(rows, dtype=np.int64), cols)),
                         shape=(M.nrows, M.ncols))


def product_is_zero(A, B, ring=ZZ):
    """A @ B == 0 exactly (mod p over F_p)."""
    if A.nnz() + B.nnz() < SCIPY_THRESHOLD:
        return (A @ B).is_zero(ring)
    a, b = _to_scipy(A), _to_scipy(B)
    if a is None or b is None:
        return (A @ B).is_zero(ring)
    # bound every entry of |A| |B| first so the int64 product cannot wrap
    bound = (abs(a).astype(np.float64) @ abs(b).astype(np.float64))
    if bound.nnz and bound.max() >= 2 ** 52:
        return (A @ B).is_zero(ring)
    P = (a @ b).tocoo()
    data = P.data % ring.p if ring.p else P.data
    return not np.any(data)


def square_zero(C, ring=ZZ):
    for D in C.degrees:
        if D in C.boundary and D - 1 in C.boundary:
            if not product_is_zero(C.boundary[D - 1], C.boundary[D], ring):
                raise SquareZeroError("(d + del)^2 != 0 from total degree %d" % D)
    return True


# ---------------------------------------------------------------------------
# homology reports

@dataclass
class ReportRow:
    q: int
    total_degree: int
    bidegrees: list
    rank: int
    torsion: list
    stable: bool
    populated: bool = True


@dataclass
class TwistedReport:
    n: int
    m: int
    R: int
    ring: str
    seed: object
    untwisted: bool
    window: tuple
    rows: list = field(default_factory=list)
    version: str = __version__

    def signature(self, stable_only=False):
        return {r.q: (r.rank, tuple(r.torsion)) for r in self.rows if r.stable or not stable_only}

    def to_dict(self):
        return {
            "format": "enkoszul-homology-report",
            "version": self.version,
            "n": self.n, "m": self.m, "R": self.R, "ring": self.ring,
            "seed": self.seed, "untwisted": self.untwisted,
            "window": list(self.window) if self.window else None,
            "rows": [
                {"q": r.q, "total_degree": r.total_degree,
                 "bidegrees": [list(b) for b in r.bidegrees],
                 "rank": r.rank, "torsion": list(r.torsion), "stable": r.stable,
                 "populated": r.populated}
                for r in self.rows
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "total_degree", "rank", "torsion", "stable"])
        for r in self.rows:
            w.writerow([r.q, r.total_degree, r.rank, " ".join(map(str, r.torsion)),
                        "true" if r.stable else "false"])
        return buf.getvalue()


def _dual_homology(spec, cache):
    C = dualize(build(spec, cache))
    lo, hi = spec.window
    out = {}
    for q in range(lo, hi + 1):
        rk, tor = homology(C.slice, q, spec.ring)
        out[q] = (rk, tor, C.bidegrees(q))
    return out


def homology_report(spec, cache=None):
    """Homology of the dual complex per topological degree q in the window."""
    spec.validate()
    if spec.window is None:
        qs = spec.all_degrees(cache)
        spec = TwistedComplexSpec(spec.n, spec.m, spec.R, spec.ring, spec.cert,
                                  (min(qs), max(qs)), spec.cohomological)
    now = _dual_homology(spec, cache)
    prev = _dual_homology(spec.with_R(spec.R - 1), cache) if spec.R > 2 else {}
    rows = []
    for q in sorted(now):
        rk, tor, bideg = now[q]
        p = prev.get(q)
        stable = p is not None and (p[0], p[1]) == (rk, tor)
        rows.append(ReportRow(q, -q, bideg, rk, tor, stable, bool(bideg)))
    seed = spec.cert.seed if spec.cert is not None else None
    return TwistedReport(spec.n, spec.m, spec.R, str(spec.ring), seed, spec.cert is None,
                         spec.window, rows)
