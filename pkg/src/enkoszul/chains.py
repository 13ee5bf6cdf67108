"""
Exact linear algebra over the integers and prime fields.

Everything here uses Python integers, so no entry can overflow.  Matrices
that show up in practice are large, sparse and full of +-1 entries, so the
workhorse is ``Elimination``: Markowitz-style elimination on unit pivots,
followed by a dense Smith normal form on whatever core is left over.
"""

import heapq
from dataclasses import dataclass, field

DENSE_LIMIT = 64


class NoSolution(ArithmeticError):
    """The right-hand side is not in the image of the matrix."""


@dataclass(frozen=True)
class Ring:
    p: int = 0          # 0 means the integers

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError("%d is not prime" % self.p)

    @property
    def is_field(self):
        return self.p != 0

    def reduce(self, a):
        return a % self.p if self.p else a

    def inv(self, a):
        if self.p:
            return pow(a, -1, self.p)
        if a in (1, -1):
            return a
        raise ZeroDivisionError("%d is not a unit in Z" % a)

    def is_unit(self, a):
        return (a % self.p != 0) if self.p else a in (1, -1)

    def __str__(self):
        return "F%d" % self.p if self.p else "Z"

    @classmethod
    def parse(cls, text):
        text = str(text).strip().upper()
        if text in ("Z", "ZZ"):
            return ZZ
        if text.startswith("F") or text.startswith("GF"):
            return cls(int(text.lstrip("GF")))
        raise ValueError("unknown ring %r (use Z or Fp)" % text)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


ZZ = Ring(0)
F2 = Ring(2)


# ---------------------------------------------------------------------------
# sparse matrices

class SparseMatrix:
    """Column-major sparse matrix: ``cols[j]`` maps row index to entry."""

    __slots__ = ("nrows", "cols")

    def __init__(self, nrows, cols):
        self.nrows = nrows
        self.cols = cols

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, [{} for _ in range(ncols)])

    @classmethod
    def from_dense(cls, rows, ncols=None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, a in enumerate(row):
                if a:
                    cols[j][i] = a
        return cls(nrows, cols)

    @property
    def ncols(self):
        return len(self.cols)

    @property
    def shape(self):
        return (self.nrows, len(self.cols))

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def to_dense(self):
        out = [[0] * len(self.cols) for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, a in col.items():
                out[i][j] = a
        return out

    def rows(self):
        rows = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, a in col.items():
                rows[i][j] = a
        return rows

    def transpose(self):
        return SparseMatrix(len(self.cols), self.rows())

    def reduced(self, ring):
        if not ring.p:
            return self
        p = ring.p
        cols = []
        for col in self.cols:
            cols.append({i: a % p for i, a in col.items() if a % p})
        return SparseMatrix(self.nrows, cols)

    def apply(self, x, ring=ZZ):
        """Matrix times a dense vector."""
        out = [0] * self.nrows
        for j, col in enumerate(self.cols):
            xj = x[j]
            if xj:
                for i, a in col.items():
                    out[i] += a * xj
        return [ring.reduce(v) for v in out]

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        cols = []
        mine = self.cols
        for col in other.cols:
            acc = {}
            for k, b in col.items():
                for i, a in mine[k].items():
                    v = acc.get(i, 0) + a * b
                    if v:
                        acc[i] = v
                    else:
                        acc.pop(i, None)
            cols.append(acc)
        return SparseMatrix(self.nrows, cols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s + %s" % (self.shape, other.shape))
        cols = []
        for c1, c2 in zip(self.cols, other.cols):
            acc = dict(c1)
            for i, a in c2.items():
                v = acc.get(i, 0) + a
                if v:
                    acc[i] = v
                else:
                    acc.pop(i, None)
            cols.append(acc)
        return SparseMatrix(self.nrows, cols)

    def is_zero(self, ring=ZZ):
        for col in self.cols:
            for a in col.values():
                if ring.reduce(a):
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.shape == other.shape
                and all(a == b for a, b in zip(self.cols, other.cols)))

    def __repr__(self):
        return "SparseMatrix(%d x %d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())


def as_sparse(M):
    if isinstance(M, SparseMatrix):
        return M
    return SparseMatrix.from_dense([list(r) for r in M])


# ---------------------------------------------------------------------------
# dense Smith normal form

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M, ring=ZZ):
    """
    Return (U, D, V) with U*M*V = D, U and V invertible over the ring and D
    diagonal with d1 | d2 | ... .  Pivots are chosen by smallest magnitude,
    then lowest row, then lowest column, so the output is deterministic.
    """
    A = [[ring.reduce(a) for a in row] for row in (M.to_dense() if isinstance(M, SparseMatrix) else M)]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)
    p = ring.p

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row dst += q * row src
        if q:
            A[dst] = [ring.reduce(a + q * b) for a, b in zip(A[dst], A[src])]
            U[dst] = [ring.reduce(a + q * b) for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] = ring.reduce(row[dst] + q * row[src])
            for row in V:
                row[dst] = ring.reduce(row[dst] + q * row[src])

    def smallest(t):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a:
                    key = (_magnitude(a, p), i, j)
                    if best is None or key < best:
                        best = key
        return best

    t = 0
    while t < min(m, n):
        found = smallest(t)
        if found is None:
            break
        _, i, j = found
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            a = A[t][t]
            if p:
                inv = pow(a, -1, p)
                U[t] = [(x * inv) % p for x in U[t]]
                A[t] = [(x * inv) % p for x in A[t]]
                a = 1
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // a if not p else A[i][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // a if not p else A[t][j]
                    add_col(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if not dirty and not p:
                # divisibility: fold a bad row into row t and go again
                for i in range(t + 1, m):
                    if any(A[i][j] % a for j in range(t + 1, n)):
                        add_row(t, i, 1)
                        dirty = True
                        break
            if not dirty:
                break
            found = None
            for i in range(t, m):
                if A[i][t]:
                    key = (_magnitude(A[i][t], p), i, t)
                    found = key if found is None or key < found else found
            for j in range(t, n):
                if A[t][j]:
                    key = (_magnitude(A[t][j], p), t, j)
                    found = key if found is None or key < found else found
            _, i, j = found
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, A, V


def _magnitude(a, p):
    return 1 if p else abs(a)


def diagonal(D):
    out = []
    for k in range(min(len(D), len(D[0]) if D else 0)):
        if D[k][k]:
            out.append(D[k][k])
    return out


def matmul(A, B):
    n = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] if Bt else [0] * n for row in A]


def determinant(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sgn, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sgn = -sgn
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sgn * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# hermite normal form of a lattice (used to canonicalise solutions)

def echelon_lattice(vectors, ring=ZZ):
    """
    Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Returns a list of (pivot, vector) with strictly increasing pivots,
    positive pivot entries (1 over a field), and the entries above each pivot
    in earlier vectors reduced into [0, pivot).
    """
    rows = [[ring.reduce(a) for a in v] for v in vectors if any(ring.reduce(a) for a in v)]
    if not rows:
        return []
    n = len(rows[0])
    out = []
    col = 0
    p = ring.p
    while rows and col < n:
        live = [r for r in rows if r[col]]
        if not live:
            col += 1
            continue
        # gcd reduction in this column
        while len([r for r in rows if r[col]]) > 1:
            live = sorted((r for r in rows if r[col]), key=lambda r: _magnitude(r[col], p))
            piv = live[0]
            for r in live[1:]:
                q = r[col] // piv[col] if not p else r[col] * pow(piv[col], -1, p)
                for k in range(col, n):
                    r[k] = ring.reduce(r[k] - q * piv[k])
        piv = next(r for r in rows if r[col])
        rows.remove(piv)
        if p:
            inv = pow(piv[col], -1, p)
            piv = [(a * inv) % p for a in piv]
        elif piv[col] < 0:
            piv = [-a for a in piv]
        for _, prev in out:
            q = prev[col] // piv[col] if not p else prev[col]
            if q:
                for k in range(col, n):
                    prev[k] = ring.reduce(prev[k] - q * piv[k])
        out.append((col, piv))
        rows = [r for r in rows if any(r)]
        col += 1
    return out


def reduce_mod_lattice(x, hnf, ring=ZZ):
    x = list(x)
    for col, v in hnf:
        q = x[col] // v[col] if not ring.p else x[col]
        if q:
            x = [ring.reduce(a - q * b) for a, b in zip(x, v)]
    return x


# ---------------------------------------------------------------------------
# sparse elimination

class Elimination:
    """
    Gaussian elimination of a sparse matrix using unit pivots only.

    Rows are equations.  Each step picks a column of smallest live count and,
    in it, a unit entry on the shortest row (ties to lower indices), clears
    the column and retires the pivot row.  Over a field every nonzero is a
    unit and the core is empty; over Z the rows and columns left without a
    unit pivot form a core handed to the dense Smith normal form.

    ``rhs`` may be supplied to carry one right-hand side through the row
    operations.
    """

    def __init__(self, M, ring=ZZ, rhs=None):
        M = as_sparse(M)
        self.ring = ring
        self.shape = M.shape
        red = ring.reduce
        rows = [{} for _ in range(M.nrows)]
        for j, col in enumerate(M.cols):
            for i, a in col.items():
                a = red(a)
                if a:
                    rows[i][j] = a
        cols = [set() for _ in range(M.ncols)]
        for i, row in enumerate(rows):
            for j in row:
                cols[j].add(i)
        b = [red(v) for v in rhs] if rhs is not None else None
        self.records = []       # (col, pivot value, row without col, rhs)
        self._eliminate(rows, cols, b)

    def _eliminate(self, rows, cols, b):
        ring = self.ring
        red = ring.reduce
        is_unit = ring.is_unit
        heap = [(len(c), j) for j, c in enumerate(cols) if c]
        heapq.heapify(heap)
        dead_rows = set()
        done_cols = set()
        deferred = set()
        while True:
            while heap:
                cnt, j = heapq.heappop(heap)
                if j in done_cols:
                    continue
                cj = cols[j]
                if len(cj) != cnt:
                    if cj:
                        heapq.heappush(heap, (len(cj), j))
                    continue
                best = None
                for i in cj:
                    if is_unit(rows[i][j]):
                        key = (len(rows[i]), i)
                        if best is None or key < best:
                            best = key
                if best is None:
                    deferred.add(j)
                    continue
                i = best[1]
                prow = rows[i]
                a = prow.pop(j)
                ainv = ring.inv(a)
                bi = b[i] if b is not None else 0
                for k in list(cj):
                    if k == i:
                        continue
                    row = rows[k]
                    f = red(row.pop(j) * ainv)
                    for l, v in prow.items():
                        nv = red(row.get(l, 0) - f * v)
                        if nv:
                            if l not in row:
                                cols[l].add(k)
                            row[l] = nv
                        elif l in row:
                            del row[l]
                            cols[l].discard(k)
                    if b is not None and bi:
                        b[k] = red(b[k] - f * bi)
                for l in prow:
                    cols[l].discard(i)
                    if l not in done_cols:
                        heapq.heappush(heap, (len(cols[l]), l))
                cols[j] = set()
                done_cols.add(j)
                dead_rows.add(i)
                rows[i] = {}
                self.records.append((j, a, prow, bi))
            # fill-in may have created unit entries in deferred columns
            retry = [j for j in sorted(deferred) if cols[j] and
                     any(is_unit(rows[i][j]) for i in cols[j])]
            deferred.difference_update(retry)
            if not retry:
                break
            for j in retry:
                heapq.heappush(heap, (len(cols[j]), j))
        core_rows = sorted(i for i, row in enumerate(rows) if row)
        core_cols = sorted(j for j, c in enumerate(cols) if c)
        self.core_rows = core_rows
        self.core_cols = core_cols
        self.pivot_cols = {rec[0] for rec in self.records}
        ri = {i: k for k, i in enumerate(core_rows)}
        cj = {j: k for k, j in enumerate(core_cols)}
        dense = [[0] * len(core_cols) for _ in core_rows]
        for i in core_rows:
            for j, a in rows[i].items():
                dense[ri[i]][cj[j]] = a
        self.core = dense
        self.core_snf = smith_normal_form(dense, ring) if core_rows and core_cols else None
        # rows outside the core that are empty must have zero rhs
        self.bad_rows = []
        if b is not None:
            for i, row in enumerate(rows):
                if not row and i not in dead_rows and b[i]:
                    self.bad_rows.append(i)
            self.core_rhs = [b[i] for i in core_rows]

    @property
    def rank(self):
        r = len(self.records)
        if self.core_snf is not None:
            r += len(diagonal(self.core_snf[1]))
        return r

    def invariant_factors(self):
        """Nonzero invariant factors, units first."""
        out = [1] * len(self.records)
        if self.core_snf is not None:
            out += diagonal(self.core_snf[1])
        return sorted(out)

    def free_cols(self):
        """Columns that are neither pivots nor part of the dense core."""
        core = set(self.core_cols)
        return [j for j in range(self.shape[1]) if j not in self.pivot_cols and j not in core]

    def _solve_core(self, rhs):
        """Canonical solution of core * y = rhs; y indexed like core_cols."""
        ring = self.ring
        k = len(self.core_cols)
        if not k:
            if any(ring.reduce(v) for v in rhs):
                raise NoSolution("inconsistent core")
            return []
        if self.core_snf is None:
            if any(ring.reduce(v) for v in rhs):
                raise NoSolution("right-hand side outside the image")
            return [0] * k
        U, D, V = self.core_snf
        Ub = [ring.reduce(sum(u * v for u, v in zip(row, rhs))) for row in U]
        y = [0] * k
        diag = diagonal(D)
        for t, d in enumerate(diag):
            if ring.p:
                y[t] = ring.reduce(Ub[t] * pow(d, -1, ring.p))
            else:
                if Ub[t] % d:
                    raise NoSolution("right-hand side outside the image")
                y[t] = Ub[t] // d
        if any(ring.reduce(v) for v in Ub[len(diag):]):
            raise NoSolution("right-hand side outside the image")
        x = [ring.reduce(sum(V[i][t] * y[t] for t in range(k))) for i in range(k)]
        kernel = [[V[i][t] for i in range(k)] for t in range(len(diag), k)]
        return reduce_mod_lattice(x, echelon_lattice(kernel, ring), ring)

    def solve(self, seed_vector=None):
        """
        Back-substitute.  Free columns are set to zero unless
        ``seed_vector`` (a dict col -> value) assigns them.
        """
        if self.bad_rows:
            raise NoSolution("right-hand side outside the image (row %d)" % self.bad_rows[0])
        ring = self.ring
        x = [0] * self.shape[1]
        y = self._solve_core(self.core_rhs)
        for j, v in zip(self.core_cols, y):
            x[j] = v
        if seed_vector:
            for j, v in seed_vector.items():
                if j not in self.pivot_cols:
                    x[j] = ring.reduce(x[j] + v)
        return self._back_substitute(x, with_rhs=True)

    def _back_substitute(self, x, with_rhs):
        ring = self.ring
        for j, a, row, bi in reversed(self.records):
            s = bi if with_rhs else 0
            for l, v in row.items():
                xl = x[l]
                if xl:
                    s -= v * xl
            x[j] = ring.reduce(s * ring.inv(a))
        return x

    def kernel_vector(self, free_col):
        """Kernel vector with a 1 at one free (non-pivot, non-core) column."""
        if free_col in self.pivot_cols or free_col in self.core_cols:
            raise ValueError("column %d is not free" % free_col)
        x = [0] * self.shape[1]
        x[free_col] = 1
        return self._back_substitute(x, with_rhs=False)


# ---------------------------------------------------------------------------
# public operations

def rank(M, ring=ZZ):
    M = as_sparse(M)
    if not M.nrows or not M.ncols:
        return 0
    return Elimination(M, ring).rank


def invariant_factors(M, ring=ZZ):
    M = as_sparse(M)
    if not M.nrows or not M.ncols:
        return []
    return Elimination(M, ring).invariant_factors()


def solve_in_image(M, b, ring=ZZ, seed_vector=None):
    """
    Canonical x with M x = b, or raise NoSolution.

    The solution has every free column set to zero and its core block reduced
    modulo the Hermite normal form of the core kernel, so it depends only on
    M, b and the fixed pivoting rule.  The result is re-checked exactly.
    """
    M = as_sparse(M)
    b = [ring.reduce(v) for v in b]
    if len(b) != M.nrows:
        raise ValueError("rhs has length %d, matrix has %d rows" % (len(b), M.nrows))
    if M.ncols == 0:
        if any(b):
            raise NoSolution("empty matrix, nonzero rhs")
        return []
    elim = Elimination(M, ring, rhs=b)
    x = elim.solve(seed_vector)
    if M.apply(x, ring) != b:
        raise AssertionError("solve_in_image produced a wrong solution")
    return x


@dataclass
class ChainComplexSlice:
    """
    Finitely many degrees of a chain complex of free modules.

    ``boundary[d]`` is the matrix of C_d -> C_{d-1} (rows indexed by
    ``basis[d-1]``, columns by ``basis[d]``).  Missing boundaries are zero.
    """
    basis: dict
    boundary: dict = field(default_factory=dict)

    @property
    def degrees(self):
        return sorted(self.basis)

    def dim(self, d):
        return len(self.basis.get(d, ()))

    def d(self, deg):
        M = self.boundary.get(deg)
        if M is None:
            return SparseMatrix.zero(self.dim(deg - 1), self.dim(deg))
        return M

    def check(self, ring=ZZ):
        """Raise if some composite boundary is nonzero."""
        for deg in self.degrees:
            if deg in self.boundary and deg - 1 in self.boundary:
                if not (self.boundary[deg - 1] @ self.boundary[deg]).is_zero(ring):
                    raise AssertionError("d^2 != 0 at degree %d" % deg)
        return True

    def dual(self):
        """Hom(-, k): transpose boundaries and negate degrees."""
        basis = {-d: list(v) for d, v in self.basis.items()}
        bd = {}
        for d, M in self.boundary.items():
            # C_d -> C_{d-1} dualises to C^{1-d} -> C^{-d}, lowering -d+1 to -d
            bd[1 - d] = M.transpose()
        return ChainComplexSlice(basis, bd)


def homology(C, d, ring=ZZ):
    """(free rank, torsion list) of H_d; torsion is empty over a field."""
    if d not in C.basis:
        raise ValueError("degree %d outside the slice %s" % (d, C.degrees))
    n = C.dim(d)
    out_rank = rank(C.d(d), ring) if n and C.dim(d - 1) else 0
    facs = invariant_factors(C.d(d + 1), ring) if n and C.dim(d + 1) else []
    in_rank = len(facs)
    torsion = [f for f in facs if f != 1] if not ring.p else []
    return n - out_rank - in_rank, torsion


@dataclass
class DegreeHomology:
    degree: int
    rank: int
    torsion: list
    stable: bool = True
    labels: dict = field(default_factory=dict)


@dataclass
class HomologyReport:
    ring: str
    rows: list = field(default_factory=list)

    def by_degree(self):
        return {r.degree: r for r in self.rows}

    def signature(self, stable_only=False):
        return {r.degree: (r.rank, tuple(r.torsion)) for r in self.rows
                if r.stable or not stable_only}


def homology_report(C, ring=ZZ, degrees=None):
    degrees = C.degrees if degrees is None else degrees
    rows = []
    for d in degrees:
        rk, tor = homology(C, d, ring)
        rows.append(DegreeHomology(d, rk, tor))
    return HomologyReport(str(ring), rows)
