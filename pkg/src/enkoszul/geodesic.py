"""
Lifting through the boundary of E_2(r) by interval recursion.

A simplex of E_2(r) flips each pair of letters at most once, so its vertices
form a geodesic in the permutohedron: every vertex lies between its two
neighbours.  Two consequences drive this module.

* Removing an interior vertex keeps the endpoints; removing an endpoint
  strictly shortens the distance between them.  The boundary is therefore
  block triangular, with one diagonal block per endpoint pair.
* A diagonal block with endpoints e and v is, up to sign, the augmented chain
  complex of the order complex of the open weak order interval (e, v).

Blocks are solved top-down by distance.  When the join z of the atoms below v
is not v itself, x -> x ^ z is a conical contraction of (e, v), and a lift is
written down directly: a prism operator between the identity and x -> x ^ z,
then a cone with apex z.  Otherwise v is the longest element of a parabolic
subgroup, the interval is a sphere, and the block is split by its first
interior vertex into interval blocks of smaller rank.  Whatever is left goes
to the sparse unit-pivot eliminator.  The caller re-checks the final answer
against the full boundary, so nothing here is trusted.
"""

from .chains import Elimination, NoSolution, SparseMatrix
from .power_series import rep_faces
from .symm import perm_table


def _subsets(D):
    s = D
    while s:
        yield s
        s = (s - 1) & D


class Geodesics:
    def __init__(self, r, ring, log=None):
        self.T = perm_table(r)
        self.ring = ring
        self.log = log
        self.by_mask = {mk: i for i, mk in enumerate(self.T.mask)}
        self.rank = [bin(mk).count("1") for mk in self.T.mask]
        self.by_rank = sorted(range(self.T.order), key=lambda x: self.rank[x])
        self._meets = {}
        self._joins = {}
        # longest elements w_0(J) of the parabolic subgroups, by |J|
        self.parabolic = {}
        for J in range(1 << (r - 1)):
            word, block = [], [1]
            for i in range(1, r):
                if J >> (i - 1) & 1:
                    block.append(i + 1)
                else:
                    word.extend(reversed(block))
                    block = [i + 1]
            word.extend(reversed(block))
            self.parabolic.setdefault(bin(J).count("1"), []).append(self.T.index[tuple(word)])

    def spherical_below(self, v, deg):
        """Is some [a, v] with e < a < v a sphere carrying homology in degree deg?"""
        mask, mul = self.T.mask, self.T.mul
        for w in self.parabolic.get(deg, ()):
            a = mul[v][w]
            if a != 0 and a != v and mask[a] & ~mask[v] == 0:
                return True
        return False

    # -- combinatorics ------------------------------------------------------
    def is_geodesic(self, code):
        mask = self.T.mask
        used = 0
        for a, b in zip(code, code[1:]):
            d = mask[a] ^ mask[b]
            if not d or d & used:
                return False
            used |= d
        return True

    def inner_faces(self, code):
        """Interior faces (sign, face); the endpoints are kept."""
        return [(-1 if t & 1 else 1, code[:t] + code[t + 1:]) for t in range(1, len(code) - 1)]

    def inner_cofaces(self, code):
        mask, by_mask = self.T.mask, self.by_mask
        out = []
        for t in range(1, len(code)):
            lo = mask[code[t - 1]]
            D = lo ^ mask[code[t]]
            for S in _subsets(D):
                if S != D:
                    x = by_mask.get(lo ^ S)
                    if x is not None:
                        out.append(code[:t] + (x,) + code[t:])
        return out

    def translate(self, g, code):
        row = self.T.mul[g]
        return tuple(row[a] for a in code)

    def inner_boundary(self, z):
        out = {}
        red = self.ring.reduce
        for code, c in z.items():
            for s, f in self.inner_faces(code):
                v = red(out.get(f, 0) + s * c)
                if v:
                    out[f] = v
                else:
                    out.pop(f, None)
        return out

    def interval_chains(self, v, length):
        """All geodesics e = x_0 < ... < x_{length-1} = v."""
        mask = self.T.mask
        top = mask[v]
        inside = [x for x in range(self.T.order) if mask[x] & ~top == 0 and x != 0 and x != v]
        inside.sort(key=lambda x: self.rank[x])
        out = []

        def grow(chain, need):
            last = mask[chain[-1]]
            if need == 0:
                if last != top:
                    out.append(tuple(chain) + (v,))
                return
            for x in inside:
                mx = mask[x]
                if mx != last and mx & last == last and self.rank[x] < self.rank[v] - need + 1:
                    chain.append(x)
                    grow(chain, need - 1)
                    chain.pop()

        if length >= 2:
            grow([0], length - 2)
        return out

    def _full(self, rhs):
        """Solve in the whole interval block; the last resort."""
        v = next(iter(rhs))[-1]
        L = len(next(iter(rhs)))
        cols = self.interval_chains(v, L + 1)
        rows = {c: i for i, c in enumerate(self.interval_chains(v, L))}
        mcols = []
        for code in cols:
            col = {}
            for s, f in self.inner_faces(code):
                i = rows[f]
                col[i] = col.get(i, 0) + s
            mcols.append({i: w for i, w in col.items() if w})
        b = [0] * len(rows)
        for code, c in rhs.items():
            b[rows[code]] = c
        x = Elimination(SparseMatrix(len(rows), mcols), self.ring, rhs=b).solve()
        return {cols[j]: w for j, w in enumerate(x) if w}

    # -- lattice ------------------------------------------------------------
    def meet(self, x, z):
        key = (x, z)
        out = self._meets.get(key)
        if out is None:
            mask = self.T.mask
            M = mask[x] & mask[z]
            # the meet is the unique lower bound of maximal rank
            out = next(w for w in reversed(self.by_rank) if mask[w] & ~M == 0)
            self._meets[key] = out
        return out

    def atom_join(self, v):
        """Join of the atoms of [e, v]; equal to v exactly when the interval is a sphere."""
        out = self._joins.get(v)
        if out is None:
            mask = self.T.mask
            top = 0
            for x in self.by_rank:
                if self.rank[x] == 1 and mask[x] & ~mask[v] == 0:
                    top |= mask[x]
            out = next(w for w in self.by_rank if mask[w] & top == top)
            self._joins[v] = out
        return out

    def contract(self, rhs, z):
        """
        Lift a block cycle through the conical contraction x -> x ^ z.  With
        f the contraction, P the prism (dP + Pd = 1 - f) and C the cone on z,
        a cycle b equals d(P b + C f b) for the augmented order complex; the
        block boundary is minus that one.
        """
        red = self.ring.reduce
        out = {}
        for code, c in rhs.items():
            v = code[-1]
            xs = code[1:-1]
            fx = tuple(self.meet(x, z) for x in xs)
            # prism: (f x_0, ..., f x_i, x_i, ..., x_k), degenerate ones dropped
            for i in range(len(xs)):
                chain = fx[:i + 1] + xs[i:]
                if all(a != b for a, b in zip(chain, chain[1:])):
                    _add(out, (0,) + chain + (v,), red(-((-1) ** i) * c), red)
            # cone on the image, sign (-1)^(k+1) on a k-chain
            if all(a != b for a, b in zip(fx, fx[1:])) and (not fx or fx[-1] != z):
                k = len(xs) - 1
                _add(out, (0,) + fx + (z, v), red(-((-1) ** (k + 1)) * c), red)
        return out

    # -- solvers ------------------------------------------------------------
    def _local(self, rhs, faces, cofaces):
        """Sparse solve on the cofaces of the support, widened once if needed."""
        cand = set()
        for code in rhs:
            cand.update(cofaces(code))
        for attempt in range(2):
            cols = sorted(cand)
            rows = {}
            mcols = []
            for code in cols:
                col = {}
                for s, f in faces(code):
                    i = rows.setdefault(f, len(rows))
                    col[i] = col.get(i, 0) + s
                mcols.append({i: v for i, v in col.items() if v})
            b = [0] * len(rows)
            missing = False
            for code, c in rhs.items():
                i = rows.get(code)
                if i is None:
                    missing = True
                    break
                b[i] = c
            if not missing:
                M = SparseMatrix(len(rows), mcols)
                try:
                    x = Elimination(M, self.ring, rhs=b).solve()
                    return {cols[j]: v for j, v in enumerate(x) if v}
                except NoSolution:
                    pass
            if attempt == 0:
                for f in list(rows):
                    cand.update(cofaces(f))
        raise NoSolution("local lift failed on a support of %d terms" % len(rhs))

    def solve_inner(self, rhs):
        """z with inner_boundary(z) = rhs, all chains sharing their endpoints."""
        rhs = {k: v for k, v in rhs.items() if self.ring.reduce(v)}
        if not rhs:
            return {}
        v = next(iter(rhs))[-1]
        z = self.atom_join(v)
        if z != v:
            return self.contract(rhs, z)
        # a sphere: split by the first interior vertex, unless some smaller
        # interval [e, u] is a sphere carrying homology in the degree reached
        lengths = {len(c) for c in rhs}
        splittable = min(lengths) >= 3 and not any(self.spherical_below(v, L - 2) for L in lengths)
        if not splittable:
            try:
                return self._local(rhs, self.inner_faces, self.inner_cofaces)
            except NoSolution:
                if len(lengths) > 1:
                    raise
                return self._full(rhs)
        T, red = self.T, self.ring.reduce
        z = {}
        residual = dict(rhs)
        while residual:
            if any(len(c) < 3 for c in residual):
                zz = self._local(residual, self.inner_faces, self.inner_cofaces)
                _accumulate(z, zz, red)
                break
            low = min(self.rank[c[1]] for c in residual)
            groups = {}
            for c, v in residual.items():
                if self.rank[c[1]] == low:
                    groups.setdefault(c[1], {})[c] = v
            step = {}
            for a in sorted(groups):
                ainv = T.inv[a]
                sub = {self.translate(ainv, c[1:]): red(-v) for c, v in groups[a].items()}
                zs = self.solve_inner(sub)
                for s, v in zs.items():
                    step[(0,) + self.translate(a, s)] = v
            _accumulate(z, step, red)
            for f, v in self.inner_boundary(step).items():
                w = red(residual.get(f, 0) - v)
                if w:
                    residual[f] = w
                else:
                    residual.pop(f, None)
            if any(self.rank[c[1]] <= low for c in residual if len(c) >= 3):
                raise NoSolution("interval split left a residual at rank %d" % low)
        return z

    def solve(self, rhs, m):
        """
        y with d(y) = rhs in the twisted coinvariants of E_2(r), rhs given on
        orbit representatives.
        """
        T, red = self.T, self.ring.reduce
        residual = {k: red(v) for k, v in rhs.items() if red(v)}
        y = {}
        while residual:
            top = max(self.rank[c[-1]] for c in residual)
            groups = {}
            for c, v in residual.items():
                if self.rank[c[-1]] == top:
                    groups.setdefault(c[-1], {})[c] = v
            if self.log:
                self.log("distance %d: %d blocks, %d terms"
                         % (top, len(groups), sum(len(g) for g in groups.values())))
            step = {}
            for v in sorted(groups):
                _accumulate(step, self.solve_inner(groups[v]), red)
            _accumulate(y, step, red)
            for code, c in step.items():
                for s, f in rep_faces(T, code, m):
                    w = red(residual.get(f, 0) - s * c)
                    if w:
                        residual[f] = w
                    else:
                        residual.pop(f, None)
            if any(self.rank[c[-1]] >= top for c in residual):
                raise NoSolution("block solve left a residual at distance %d" % top)
        return y


def _add(acc, k, v, red):
    w = red(acc.get(k, 0) + v)
    if w:
        acc[k] = w
    else:
        acc.pop(k, None)


def _accumulate(acc, d, red):
    for k, v in d.items():
        w = red(acc.get(k, 0) + v)
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)


def lift(r, rhs, m, ring, log=None):
    """Solve d(y) = rhs in E_2(r) coinvariants; rhs and y on representatives."""
    return Geodesics(r, ring, log=log).solve(rhs, m)
