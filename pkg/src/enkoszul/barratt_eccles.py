"""
The chain Barratt-Eccles operad and its complexity filtration.

A k-simplex of arity r is a tuple (w_0, ..., w_k) of permutations of
{1..r} with no two consecutive entries equal.  Internally a simplex is a
tuple of indices into ``perm_table(r).perms``; ``BEChain`` wraps a dict from
such codes to nonzero integer coefficients.

The complexity of a simplex on a pair of letters i < j is the number of
blocks in the sequence of pair orders restrict_pair(w_t, i, j) once equal
neighbours are merged.  E_n is spanned by simplices of complexity <= n on
every pair; E_1 is the associative (permutation) operad and E_n(2) is a model
of the (n-1)-sphere with its antipodal action.
"""

import math
import os
from functools import lru_cache
from itertools import combinations

from .symm import block_table, check_perm, perm_table, restrict_pair

INF = math.inf
CACHE_VERSION = 1
CACHE_ENV = "ENKOSZUL_CACHE"
# finite n is enumerated completely (and cached on disk) up to this arity;
# beyond it only the dimensions asked for are listed
FULL_ARITY = 5


class BEChain:
    """A homogeneous chain in E(r): arity, dimension, {code: coefficient}."""

    __slots__ = ("arity", "dim", "terms")

    def __init__(self, arity, dim, terms=None):
        self.arity = arity
        self.dim = dim
        self.terms = {}
        if terms:
            for code, c in terms.items():
                if c:
                    if len(code) != dim + 1:
                        raise ValueError("simplex %r is not of dimension %d" % (code, dim))
                    self.terms[code] = c

    @classmethod
    def simplex(cls, *perms, coeff=1):
        perms = [check_perm(p) for p in perms]
        r = len(perms[0])
        if any(len(p) != r for p in perms):
            raise ValueError("mixed arities in %r" % (perms,))
        for a, b in zip(perms, perms[1:]):
            if a == b:
                raise ValueError("degenerate simplex %r" % (perms,))
        idx = perm_table(r).index
        return cls(r, len(perms) - 1, {tuple(idx[p] for p in perms): coeff})

    @classmethod
    def from_words(cls, words, arity=None, dim=None):
        """Build from {tuple of perms: coefficient}; degenerate words are dropped."""
        terms = {}
        for word, c in words.items():
            r = len(word[0])
            idx = perm_table(r).index
            code = tuple(idx[check_perm(p)] for p in word)
            if any(a == b for a, b in zip(code, code[1:])):
                continue
            terms[code] = terms.get(code, 0) + c
            arity, dim = r, len(word) - 1
        return cls(arity, dim, terms)

    def words(self):
        P = perm_table(self.arity).perms
        return {tuple(P[a] for a in code): c for code, c in self.terms.items()}

    def copy(self):
        return BEChain(self.arity, self.dim, dict(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BEChain):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return (self.arity, self.dim, self.terms) == (other.arity, other.dim, other.terms)

    def _check(self, other):
        if self.terms and other.terms and (self.arity, self.dim) != (other.arity, other.dim):
            raise ValueError("cannot add chains of (arity, dim) %s and %s"
                             % ((self.arity, self.dim), (other.arity, other.dim)))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        base = self if self.terms else other
        return BEChain(base.arity, base.dim, out)

    def __neg__(self):
        return BEChain(self.arity, self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, a):
        return BEChain(self.arity, self.dim, {k: a * c for k, c in self.terms.items()})

    def __repr__(self):
        body = " + ".join("%d*%s" % (c, w) for w, c in sorted(self.words().items()))
        return "BEChain(r=%d, k=%d: %s)" % (self.arity, self.dim, body or "0")


# ---------------------------------------------------------------------------
# chain operations on codes

def faces(code):
    """Yield (sign, face) for the nondegenerate faces of a simplex code."""
    k = len(code) - 1
    if k == 0:
        return
    for t in range(k + 1):
        if 0 < t < k and code[t - 1] == code[t + 1]:
            continue
        yield (-1 if t & 1 else 1), code[:t] + code[t + 1:]


def differential(x):
    if x.dim == 0:
        return BEChain(x.arity, -1)
    out = {}
    for code, c in x.terms.items():
        for s, f in faces(code):
            v = out.get(f, 0) + s * c
            if v:
                out[f] = v
            else:
                del out[f]
    return BEChain(x.arity, x.dim - 1, out)


def translate(sigma, x):
    """Left translation sigma.(w_0, ..., w_k) = (sigma w_0, ..., sigma w_k)."""
    sigma = check_perm(sigma)
    if x.terms and len(sigma) != x.arity:
        raise ValueError("arity mismatch: %d vs %d" % (len(sigma), x.arity))
    T = perm_table(len(sigma))
    row = T.mul[T.index[sigma]]
    return BEChain(x.arity, x.dim, {tuple(row[a] for a in code): c for code, c in x.terms.items()})


def _pair_counts(T, code):
    masks = [T.mask[a] for a in code]
    counts = [1] * len(T.pairs)
    for a, b in zip(masks, masks[1:]):
        d = a ^ b
        b_ = 0
        while d:
            if d & 1:
                counts[b_] += 1
            d >>= 1
            b_ += 1
    return counts


def _as_code(word):
    if isinstance(word, BEChain):
        if len(word.terms) != 1:
            raise ValueError("expected a single simplex")
        (code,) = word.terms
        return word.arity, code
    word = [check_perm(p) for p in word]
    r = len(word[0])
    idx = perm_table(r).index
    return r, tuple(idx[p] for p in word)


def complexity(simplex, i, j):
    """Collapsed length of the pair-order sequence of a simplex on letters i < j."""
    r, code = _as_code(simplex)
    if not (1 <= i < j <= r):
        raise ValueError("bad pair (%d, %d) for arity %d" % (i, j, r))
    P = perm_table(r).perms
    seq = [restrict_pair(P[a], i, j) for a in code]
    return 1 + sum(1 for a, b in zip(seq, seq[1:]) if a != b)


def filtration_level(simplex):
    """Least n with the simplex in E_n (1 in arity 1)."""
    r, code = _as_code(simplex)
    if r < 2:
        return 1
    return max(_pair_counts(perm_table(r), code))


def in_filtration(simplex, n):
    return n == INF or filtration_level(simplex) <= n


def chain_in_filtration(x, n):
    if n == INF or x.arity < 2:
        return True
    T = perm_table(x.arity)
    if n == 2:
        # each pair may flip at most once along the simplex
        return all(_flips_once(T.mask, code) for code in x.terms)
    return all(max(_pair_counts(T, code)) <= n for code in x.terms)


def _flips_once(mask, code):
    used = 0
    for a, b in zip(code, code[1:]):
        d = mask[a] ^ mask[b]
        if d & used:
            return False
        used |= d
    return True


@lru_cache(maxsize=None)
def shuffles(p, q):
    """
    All (p, q)-shuffles as (path, sign).  A path lists (alpha, beta) index
    pairs of the staircase simplex; the sign is the signature of the shuffle
    permutation of the p + q unit steps.
    """
    out = []

    def walk(a, b, path, inv, before):
        # before: number of vertical steps taken so far
        if a == p and b == q:
            out.append((tuple(path), -1 if inv & 1 else 1))
            return
        if a < p:
            path.append((a + 1, b))
            walk(a + 1, b, path, inv + before, before)
            path.pop()
        if b < q:
            path.append((a, b + 1))
            walk(a, b + 1, path, inv, before + 1)
            path.pop()

    walk(0, 0, [(0, 0)], 0, 0)
    return tuple(out)


def compose_codes(s, t, i, u, v):
    """Yield (sign, code) for the simplices of u o_i v (u of arity s, v of arity t)."""
    table = block_table(s, t, i)
    for path, sgn in shuffles(len(u) - 1, len(v) - 1):
        code = tuple(table[u[a]][v[b]] for a, b in path)
        yield sgn, code


def partial_composite(a, b, i):
    s, t = a.arity, b.arity
    if not 1 <= i <= s:
        raise ValueError("slot %d out of range for arity %d" % (i, s))
    out = {}
    for ucode, uc in a.terms.items():
        for vcode, vc in b.terms.items():
            for sgn, code in compose_codes(s, t, i, ucode, vcode):
                if any(x == y for x, y in zip(code, code[1:])):
                    continue
                v = out.get(code, 0) + sgn * uc * vc
                if v:
                    out[code] = v
                else:
                    del out[code]
    return BEChain(s + t - 1, a.dim + b.dim, out)


# ---------------------------------------------------------------------------
# basis enumeration

def _enumerate(n, r, kmax):
    """Orbit representatives (w_0 = identity) of E_n(r) by dimension, lex order."""
    T = perm_table(r)
    if r == 1:
        return {0: [(0,)]}
    N = T.order
    mask = T.mask
    levels_n = None if n == INF else int(n) - 1
    by_dim = {}
    stack_code = [0]
    out_append = {}

    def emit(k):
        lst = out_append.get(k)
        if lst is None:
            lst = out_append[k] = by_dim.setdefault(k, []).append
        lst(tuple(stack_code))

    def dfs(last, levels):
        k = len(stack_code) - 1
        emit(k)
        if kmax is not None and k >= kmax:
            return
        lm = mask[last]
        for q in range(N):
            if q == last:
                continue
            d = lm ^ mask[q]
            if levels_n is not None:
                if levels_n == 0 or d & levels[-1]:
                    continue
                # L_k = pairs changed at least k times
                new = list(levels)
                for h in range(levels_n - 1, 0, -1):
                    new[h] |= new[h - 1] & d
                new[0] |= d
                new = tuple(new)
            else:
                new = levels
            stack_code.append(q)
            dfs(q, new)
            stack_code.pop()

    dfs(0, tuple([0] * (levels_n or 1)))
    return by_dim


class BasisCache:
    """
    In-memory memo of orbit representatives, optionally backed by a directory
    ``<root>/E{n}/r{r}/k{k}`` of text files (see README for the format).
    """

    def __init__(self, root=None):
        if root is None:
            root = os.environ.get(CACHE_ENV) or None
        self.root = root
        self._mem = {}

    def _path(self, n, r, k):
        tag = "inf" if n == INF else str(int(n))
        return os.path.join(self.root, "E%s" % tag, "r%d" % r, "k%d" % k)

    def _manifest(self, n, r):
        tag = "inf" if n == INF else str(int(n))
        return os.path.join(self.root, "E%s" % tag, "r%d" % r, "manifest")

    def reps(self, n, r, kmax=None):
        """
        dict k -> list of representative codes.  Every k is listed when n is
        finite and r <= FULL_ARITY (or kmax is None); otherwise k <= kmax.
        """
        if n == INF and kmax is None:
            raise ValueError("E_inf needs a dimension bound")
        full = kmax is None or self.complete(n, r)
        if full:
            key = (n, r, None)
        else:
            if (n, r, None) in self._mem:
                return self._mem[(n, r, None)]
            # any bounded listing reaching kmax will do
            for (n2, r2, k2), data in self._mem.items():
                if (n2, r2) == (n, r) and k2 is not None and k2 >= kmax:
                    return data
            key = (n, r, kmax)
        if key in self._mem:
            return self._mem[key]
        data = self._load(n, r) if self.root and full else None
        if data is None:
            data = _enumerate(n, r, None if full else kmax)
            if self.root and full:
                self._store(n, r, data)
        self._mem[key] = data
        return data

    def complete(self, n, r):
        """Is every dimension of E_n(r) listed by ``reps(n, r, k)``?"""
        return n != INF and (r <= FULL_ARITY or n == 1)

    def _load(self, n, r):
        man = self._manifest(n, r)
        if not os.path.exists(man):
            return None
        with open(man) as f:
            head = f.readline().split()
            if head[:2] != ["enkoszul-basis", "v%d" % CACHE_VERSION]:
                return None
            dims = [int(x) for x in f.readline().split()[1:]]
        T = perm_table(r)
        data = {}
        for k in dims:
            lst = []
            with open(self._path(n, r, k)) as f:
                f.readline()
                for line in f:
                    parts = line.split()
                    length = int(parts[0])
                    code = tuple(T.index[tuple(int(c) for c in p.split(","))] for p in parts[1:])
                    if len(code) != length:
                        raise ValueError("corrupt cache line %r" % line)
                    lst.append(code)
            data[k] = lst
        return data

    def _store(self, n, r, data):
        T = perm_table(r)
        d = os.path.dirname(self._manifest(n, r))
        os.makedirs(d, exist_ok=True)
        names = [",".join(map(str, p)) for p in T.perms]
        for k, lst in data.items():
            tmp = self._path(n, r, k) + ".tmp"
            with open(tmp, "w") as f:
                f.write("enkoszul-basis v%d n=%s r=%d k=%d count=%d\n"
                        % (CACHE_VERSION, n, r, k, len(lst)))
                for code in lst:
                    f.write("%d %s\n" % (len(code), " ".join(names[a] for a in code)))
            os.replace(tmp, self._path(n, r, k))
        tmp = self._manifest(n, r) + ".tmp"
        with open(tmp, "w") as f:
            f.write("enkoszul-basis v%d n=%s r=%d top=%d\n"
                    % (CACHE_VERSION, n, r, max(data)))
            f.write("dims %s\n" % " ".join(str(k) for k in sorted(data)))
        os.replace(tmp, self._manifest(n, r))


_default_cache = None


def default_cache():
    global _default_cache
    if _default_cache is None:
        _default_cache = BasisCache()
    return _default_cache


def set_cache(cache):
    global _default_cache
    _default_cache = cache


def orbit_basis(n, r, k, cache=None):
    """Representatives (w_0 = identity) of the Sigma_r-orbits in E_n(r)_k, as codes."""
    cache = cache or default_cache()
    data = cache.reps(n, r, k)
    return data.get(k, [])


def top_dimension(n, r, cache=None):
    if n == INF:
        return INF
    cache = cache or default_cache()
    return max(cache.reps(n, r))


def basis(n, r, k, cache=None):
    """All nondegenerate k-simplices of E_n(r), sorted lexicographically, as words."""
    T = perm_table(r)
    P = T.perms
    codes = [tuple(T.mul[g][a] for a in rep)
             for rep in orbit_basis(n, r, k, cache) for g in range(T.order)]
    codes.sort()
    return [tuple(P[a] for a in code) for code in codes]
