"""
Permutations of {1..r} in one-line notation.

A permutation is a plain tuple ``(w(1), ..., w(r))``.  Letters are 1-based so
that they line up with operadic input slots.  Lexicographic order on these
tuples is the tie-break order used by the rest of the package.

``PermTable`` indexes the whole of Sigma_r so that hot loops can work on small
integers instead of tuples.
"""

from functools import lru_cache
from itertools import combinations, permutations

STRAIGHT = 0
REVERSED = 1


def check_perm(p):
    r = len(p)
    if r < 1 or sorted(p) != list(range(1, r + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (r, p))
    return tuple(p)


def identity(r):
    return tuple(range(1, r + 1))


def compose(p, q):
    """(p.q)(i) = p(q(i))."""
    if len(p) != len(q):
        raise ValueError("arity mismatch: %d vs %d" % (len(p), len(q)))
    return tuple(p[j - 1] for j in q)


def inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p, 1):
        inv[v - 1] = i
    return tuple(inv)


def sign(p):
    # parity via cycle decomposition: O(r)
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def block_substitute(u, v, i):
    """
    Replace letter i of the word u by the block v.

    Letters of u above i shift up by len(v) - 1 and the block is v shifted by
    i - 1, so ``block_substitute((2, 1), (1, 2), 1) == (3, 1, 2)``.
    """
    r, s = len(u), len(v)
    if not 1 <= i <= r:
        raise ValueError("slot %d out of range for arity %d" % (i, r))
    out = []
    for letter in u:
        if letter < i:
            out.append(letter)
        elif letter == i:
            out.extend(x + i - 1 for x in v)
        else:
            out.append(letter + s - 1)
    return tuple(out)


def restrict_pair(w, i, j):
    """STRAIGHT iff the value i occurs before the value j in the word w."""
    r = len(w)
    if not (1 <= i < j <= r):
        raise ValueError("need 1 <= i < j <= %d, got (%d, %d)" % (r, i, j))
    return STRAIGHT if w.index(i) < w.index(j) else REVERSED


def all_perms(r):
    return [tuple(p) for p in permutations(range(1, r + 1))]


class PermTable:
    """Integer-coded Sigma_r: lexicographic index, products, inverses, signs."""

    def __init__(self, r):
        self.r = r
        self.perms = all_perms(r)
        self.index = {p: k for k, p in enumerate(self.perms)}
        self.order = len(self.perms)
        self.sign = [sign(p) for p in self.perms]
        self.inv = [self.index[inverse(p)] for p in self.perms]
        self.pairs = list(combinations(range(1, r + 1), 2))
        # orientation bit per pair, packed; bit set means REVERSED
        masks = []
        for p in self.perms:
            pos = {v: k for k, v in enumerate(p)}
            m = 0
            for b, (i, j) in enumerate(self.pairs):
                if pos[i] > pos[j]:
                    m |= 1 << b
            masks.append(m)
        self.mask = masks
        self._mul = None

    @property
    def mul(self):
        # mul[a][b] is the index of compose(perms[a], perms[b])
        if self._mul is None:
            P, idx = self.perms, self.index
            self._mul = [[idx[compose(a, b)] for b in P] for a in P]
        return self._mul

    def __repr__(self):
        return "PermTable(%d)" % self.r


@lru_cache(maxsize=None)
def perm_table(r):
    return PermTable(r)


@lru_cache(maxsize=None)
def block_table(s, t, i):
    """Index table for block_substitute on arities (s, t) at slot i."""
    A, B, C = perm_table(s), perm_table(t), perm_table(s + t - 1)
    return [[C.index[block_substitute(u, v, i)] for v in B.perms] for u in A.perms]
