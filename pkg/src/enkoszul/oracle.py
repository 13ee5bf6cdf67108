"""
Slow second implementations used by the test suite.

Nothing here imports the main path except ``symm``: simplices are plain
tuples of permutation words, chains are dicts, the composite is rebuilt from
shuffles listed by ``itertools.combinations``, and homology comes from a
naive dense Smith form.  Agreement with the main path is the point.
"""

from dataclasses import dataclass, field
from itertools import combinations, product

from .symm import (
    REVERSED,
    all_perms,
    block_substitute,
    compose,
    identity,
    inverse,
    restrict_pair,
    sign,
)


@dataclass
class OracleReport:
    name: str
    params: dict
    passed: bool = True
    checked: int = 0
    witness: object = None
    notes: list = field(default_factory=list)

    def fail(self, witness):
        if self.passed:
            self.passed = False
            self.witness = witness


def _add(acc, key, v):
    w = acc.get(key, 0) + v
    if w:
        acc[key] = w
    else:
        acc.pop(key, None)


# ---------------------------------------------------------------------------
# simplices as words

def complexity(word, i, j):
    seq = [restrict_pair(w, i, j) for w in word]
    return 1 + sum(1 for a, b in zip(seq, seq[1:]) if a != b)


def level(word):
    r = len(word[0])
    return max([complexity(word, i, j) for i, j in combinations(range(1, r + 1), 2)] or [1])


def differential(chain):
    out = {}
    for word, c in chain.items():
        if len(word) == 1:
            continue
        for t in range(len(word)):
            f = word[:t] + word[t + 1:]
            if any(a == b for a, b in zip(f, f[1:])):
                continue
            _add(out, f, (-1) ** t * c)
    return out


def translate(sigma, chain):
    return {tuple(compose(sigma, w) for w in word): c for word, c in chain.items()}


def _inversions(seq):
    return sum(1 for a, b in combinations(seq, 2) if a > b)


def composite(a, b, i):
    """a o_i b by listing (p, q)-shuffles as choices of the p steps of a."""
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            p, q = len(u) - 1, len(v) - 1
            for steps in combinations(range(p + q), p):
                steps = set(steps)
                x = y = 0
                word = [block_substitute(u[0], v[0], i)]
                order = []
                for t in range(p + q):
                    if t in steps:
                        x += 1
                        order.append(x)
                    else:
                        y += 1
                        order.append(p + y)
                    word.append(block_substitute(u[x], v[y], i))
                word = tuple(word)
                if any(s == t for s, t in zip(word, word[1:])):
                    continue
                _add(out, word, (-1) ** _inversions(order) * cu * cv)
    return out


def simplices(n, r, k):
    """All nondegenerate k-simplices of E_n(r), by brute force."""
    perms = all_perms(r)
    out = []
    for word in product(perms, repeat=k + 1):
        if any(a == b for a, b in zip(word, word[1:])):
            continue
        if n is None or level(word) <= n:
            out.append(word)
    return out


# ---------------------------------------------------------------------------
# coinvariants by the norm

def orbit_sum_reduce(chain, m):
    """
    Coinvariant class of a chain via the norm N(s) = sum sgn(g)^m g.s.  The
    class of s is read off as the coefficient N(s) puts on the orbit element
    that starts with the identity.
    """
    out = {}
    for word, c in chain.items():
        r = len(word[0])
        norm = {}
        for g in all_perms(r):
            _add(norm, tuple(compose(g, w) for w in word), (sign(g) ** m) * c)
        e = identity(r)
        hits = [(w, v) for w, v in norm.items() if w[0] == e]
        if len(hits) != 1:
            raise AssertionError("orbit of %r is not free" % (word,))
        w, v = hits[0]
        _add(out, w, v)
    return out


# ---------------------------------------------------------------------------
# naive homology

def smith_diagonal(rows, p=0):
    """Invariant factors of a dense integer matrix (mod p when p > 0)."""
    A = [[(x % p if p else x) for x in row] for row in rows]
    nr = len(A)
    nc = len(A[0]) if A else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            a = A[t][t]
            changed = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    f = A[i][t] // a if not p else A[i][t] * pow(a, -1, p)
                    A[i] = [(x - f * y) % p if p else x - f * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    f = A[t][j] // a if not p else A[t][j] * pow(a, -1, p)
                    for row in A:
                        row[j] = (row[j] - f * row[t]) % p if p else row[j] - f * row[t]
                    if A[t][j]:
                        changed = True
            if not changed:
                # divisibility: fold a row that a does not divide into row t
                bad = None
                if not p:
                    for i in range(t + 1, nr):
                        if any(x % a for x in A[i][t + 1:]):
                            bad = i
                            break
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad])]
                continue
            # move the smallest entry of row/col t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, nr) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, nc) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]) if not p else 1)
        t += 1
    return diag


def _matrix(src, dst, boundary):
    index = {w: i for i, w in enumerate(dst)}
    rows = [[0] * len(src) for _ in dst]
    for j, w in enumerate(src):
        for f, c in boundary(w).items():
            rows[index[f]][j] += c
    return rows


def _homology(bases, boundary, degrees, p=0):
    out = {}
    for d in degrees:
        n = len(bases.get(d, []))
        if not n:
            out[d] = (0, [])
            continue
        down = smith_diagonal(_matrix(bases[d], bases[d - 1], boundary), p) if bases.get(d - 1) else []
        up = smith_diagonal(_matrix(bases[d + 1], bases[d], boundary), p) if bases.get(d + 1) else []
        tors = [x for x in up if x != 1] if not p else []
        out[d] = (n - len(down) - len(up), tors)
    return out


def total_homology(n, r, degrees, p=0):
    """Homology of E_n(r) itself (no quotient), degrees given explicitly."""
    ks = set(degrees) | {d + 1 for d in degrees} | {d - 1 for d in degrees}
    bases = {k: simplices(n, r, k) for k in ks if k >= 0}
    return _homology(bases, lambda w: differential({w: 1}), degrees, p)


def slice_homology(n, r, m, degrees, p=0):
    """
    Homology of the twisted coinvariants E_n(r)_{Sigma_r} (twist sgn^m).
    Orbit representatives are the simplices starting with the identity.
    """
    ks = set(degrees) | {d + 1 for d in degrees} | {d - 1 for d in degrees}
    e = identity(r)
    bases = {k: [w for w in simplices(n, r, k) if w[0] == e] for k in ks if k >= 0}

    def boundary(w):
        return orbit_sum_reduce(differential({w: 1}), m)

    return _homology(bases, boundary, degrees, p)


# ---------------------------------------------------------------------------
# exhaustive operad axioms against the main path

def _relabel(sigma, s, j):
    """tau with (sigma . u) o_i v = tau . (u o_j v), where j = sigma^-1(i)."""
    return inverse(block_substitute(inverse(sigma), identity(s), j))


def axioms_exhaustive(r_max=3, k_max=2, main_composite=None, main_differential=None):
    """
    Leibniz, equivariance and both associativity laws for the oracle
    composite over every simplex with arity <= r_max and dimension <= k_max,
    plus agreement with the main path when its functions are supplied
    (they take and return {word: coeff} dicts).
    """
    rep = OracleReport("axioms_exhaustive", {"r_max": r_max, "k_max": k_max})
    cells = {(r, k): simplices(None, r, k) for r in range(1, r_max + 1) for k in range(k_max + 1)}

    def cells_upto(rmax, kmax):
        for (r, k), ws in sorted(cells.items()):
            if r <= rmax and k <= kmax:
                for w in ws:
                    yield r, k, w

    # E_1 is the permutation operad
    for (r, k), ws in sorted(cells.items()):
        if k:
            continue
        for (s, _), vs in sorted(cells.items()):
            if _ or r + s - 1 > r_max + 1:
                continue
            for u in ws:
                for v in vs:
                    for i in range(1, r + 1):
                        got = composite({u: 1}, {v: 1}, i)
                        want = {(block_substitute(u[0], v[0], i),): 1}
                        rep.checked += 1
                        if got != want:
                            rep.fail(("E1 table", u, v, i, got))
    for r, p, u in cells_upto(r_max, k_max):
        for s, q, v in cells_upto(r_max, k_max):
            if r + s - 1 > r_max + 1:
                continue
            a, b = {u: 1}, {v: 1}
            for i in range(1, r + 1):
                ab = composite(a, b, i)
                if main_composite is not None:
                    rep.checked += 1
                    if main_composite(a, b, i) != ab:
                        rep.fail(("main composite", u, v, i))
                # Leibniz
                lhs = differential(ab)
                rhs = dict(composite(differential(a), b, i))
                for w, c in composite(a, differential(b), i).items():
                    _add(rhs, w, (-1) ** p * c)
                rep.checked += 1
                if lhs != rhs:
                    rep.fail(("Leibniz", u, v, i))
                if main_differential is not None:
                    rep.checked += 1
                    if main_differential(ab) != lhs:
                        rep.fail(("main differential", u, v, i))
                # equivariance
                for sigma in all_perms(r):
                    j = inverse(sigma)[i - 1]
                    lhs = composite(translate(sigma, a), b, i)
                    rhs = translate(_relabel(sigma, s, j), composite(a, b, j))
                    rep.checked += 1
                    if lhs != rhs:
                        rep.fail(("equivariance", sigma, u, v, i))
    # associativity on a smaller range: triples get expensive fast
    small = list(cells_upto(min(r_max, 2), min(k_max, 1)))
    for r, p, u in small:
        for s, q, v in small:
            for t, _, w in small:
                a, b, c = {u: 1}, {v: 1}, {w: 1}
                for i in range(1, r + 1):
                    # sequential: (a o_i b) o_{i+j-1} c = a o_i (b o_j c)
                    for j in range(1, s + 1):
                        lhs = composite(composite(a, b, i), c, i + j - 1)
                        rhs = composite(a, composite(b, c, j), i)
                        rep.checked += 1
                        if lhs != rhs:
                            rep.fail(("sequential", u, v, w, i, j))
                    # parallel: (a o_i b) o_{k+s-1} c = (-1)^{|b||c|} (a o_k c) o_i b, i < k
                    for k in range(i + 1, r + 1):
                        lhs = composite(composite(a, b, i), c, k + s - 1)
                        rhs = composite(composite(a, c, k), b, i)
                        sgn = (-1) ** (q * (len(w) - 1))
                        rep.checked += 1
                        if lhs != {x: sgn * y for x, y in rhs.items()}:
                            rep.fail(("parallel", u, v, w, i, k))
    return rep
