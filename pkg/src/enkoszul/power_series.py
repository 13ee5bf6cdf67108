"""
Truncated free complete algebras on one variable over E_n.

An element of order r and chain degree c is a class p(x, ..., x) in the
coinvariants (E_n(r) (x) k x^{(x) r})_{Sigma_r}, where x has degree -m.
Permuting the r copies of x costs sgn^m, so in coinvariants

    [sigma . p] = sgn(sigma)^m [p].

Sigma_r acts freely, and every orbit contains exactly one simplex that starts
with the identity; that simplex is the stored representative.

Signs.  ``a o b`` is the continuous derivation sending x to b, applied to a:

    p(x..x) o q(x..x) = sum_i (-1)^(|b| c_p + (i-1)(t-1)m) [p o_i q]

where c_p is the chain degree of p, t the order of b, and |b| = c_q - (t-1)m
is the total degree of b shifted by m.  With this rule the internal
differential satisfies d(a o b) = (-1)^|b| (da) o b + a o (db), the
associator is graded symmetric in its last two entries, and x o b = b.
"""

import json

from .barratt_eccles import INF, BEChain, chain_in_filtration, compose_codes
from .symm import perm_table


class DegreeRule:
    """Grading bookkeeping for x of degree -m."""

    def __init__(self, m, n=None):
        self.m = m
        self.n = n

    def total(self, r, c):
        return c - r * self.m

    def shifted(self, r, c):
        # total degree + m; the grading in which o is degree preserving
        return c - (r - 1) * self.m

    def topological(self, r, c):
        return r * self.m - c

    def chain_degree(self, r, total):
        return total + r * self.m

    def omega_chain_degree(self, r):
        return self.m * (r - 1) - 1

    def __repr__(self):
        return "DegreeRule(m=%d, n=%s)" % (self.m, self.n)


def rep_of(T, code, m):
    """(sign, representative) with code = g . rep."""
    g = code[0]
    if g == 0:
        return 1, code
    row = T.mul[T.inv[g]]
    rep = tuple(row[a] for a in code)
    s = T.sign[g] if m & 1 else 1
    return s, rep


def _addto(acc, key, v):
    w = acc.get(key, 0) + v
    if w:
        acc[key] = w
    else:
        acc.pop(key, None)


class CoinvariantClass:
    """Order r element of the twisted coinvariants, on representatives."""

    __slots__ = ("order", "m", "terms")

    def __init__(self, order, m, terms=None):
        self.order = order
        self.m = m
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __eq__(self, other):
        return (isinstance(other, CoinvariantClass) and self.order == other.order
                and (self.m - other.m) % 2 == 0 and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def chain(self, dim=None):
        if dim is None:
            dims = {len(k) - 1 for k in self.terms}
            if len(dims) > 1:
                raise ValueError("class is not homogeneous")
            dim = dims.pop() if dims else 0
        return BEChain(self.order, dim, {k: c for k, c in self.terms.items() if len(k) == dim + 1})

    def words(self):
        P = perm_table(self.order).perms
        return {tuple(P[a] for a in k): c for k, c in self.terms.items()}

    def __repr__(self):
        return "CoinvariantClass(r=%d, m=%d, %r)" % (self.order, self.m, self.words())


def coinvariant_reduce(x, m):
    """Send each simplex to its orbit representative, weighting by sgn^m."""
    T = perm_table(x.arity)
    out = {}
    for code, c in x.terms.items():
        s, rep = rep_of(T, code, m)
        _addto(out, rep, s * c)
    return CoinvariantClass(x.arity, m, out)


def reduce_terms(T, terms, m):
    out = {}
    for code, c in terms.items():
        s, rep = rep_of(T, code, m)
        _addto(out, rep, s * c)
    return out


def rep_faces(T, code, m):
    """Faces of a representative, themselves as (sign, representative)."""
    k = len(code) - 1
    if k == 0:
        return []
    out = []
    for t in range(k + 1):
        if 0 < t < k and code[t - 1] == code[t + 1]:
            continue
        f = code[:t] + code[t + 1:]
        s = -1 if t & 1 else 1
        if t == 0:
            g, rep = rep_of(T, f, m)
            out.append((s * g, rep))
        else:
            out.append((s, f))
    return out


class TruncatedSeries:
    """
    Element of E_n(x) modulo orders > R.

    ``terms`` maps order r (1 <= r <= R) to {representative code: coefficient}.
    Chain degrees may be mixed; coefficients are plain integers and callers
    working over F_p reduce with ``mod``.
    """

    def __init__(self, n, m, R, terms=None):
        if m < 1:
            raise ValueError("m must be >= 1")
        self.n = n
        self.m = m
        self.R = R
        self.terms = {}
        for r, d in (terms or {}).items():
            if r < 1:
                raise ValueError("order must be >= 1")
            if r <= R:
                d = {k: c for k, c in d.items() if c}
                if d:
                    self.terms[r] = d

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, n, m, R):
        return cls(n, m, R)

    @classmethod
    def generator(cls, n, m, R):
        """The variable x itself (order 1, the unit of E(1))."""
        return cls(n, m, R, {1: {(0,): 1}})

    @classmethod
    def from_class(cls, n, m, R, cls_):
        return cls(n, m, R, {cls_.order: dict(cls_.terms)})

    @classmethod
    def monomial(cls, n, m, R, r, code, coeff=1):
        return cls(n, m, R, {r: {code: coeff}})

    def like(self, terms):
        return TruncatedSeries(self.n, self.m, self.R, terms)

    # -- arithmetic -------------------------------------------------------
    def _same(self, other):
        if (self.n, self.m, self.R) != (other.n, other.m, other.R):
            raise ValueError("parameter mismatch: (n, m, R) = %s vs %s"
                             % ((self.n, self.m, self.R), (other.n, other.m, other.R)))

    def __add__(self, other):
        self._same(other)
        out = {r: dict(d) for r, d in self.terms.items()}
        for r, d in other.terms.items():
            acc = out.setdefault(r, {})
            for k, c in d.items():
                _addto(acc, k, c)
        return self.like(out)

    def __neg__(self):
        return self.like({r: {k: -c for k, c in d.items()} for r, d in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, a):
        return self.like({r: {k: a * c for k, c in d.items()} for r, d in self.terms.items()})

    def mod(self, p):
        if not p:
            return self
        return self.like({r: {k: c % p for k, c in d.items()} for r, d in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries)
                and (self.n, self.m, self.R) == (other.n, other.m, other.R)
                and self.terms == other.terms)

    def is_zero(self, p=0):
        return all((c % p if p else c) == 0 for d in self.terms.values() for c in d.values())

    def __bool__(self):
        return not self.is_zero()

    def order(self, r):
        return CoinvariantClass(r, self.m, self.terms.get(r, {}))

    def truncate(self, R):
        return TruncatedSeries(self.n, self.m, R, {r: d for r, d in self.terms.items() if r <= R})

    def with_n(self, n):
        return TruncatedSeries(n, self.m, self.R, self.terms)

    def homogeneous(self, r=None):
        """Split into {(order, chain degree): series}."""
        out = {}
        for order, d in self.terms.items():
            if r is not None and order != r:
                continue
            for k, c in d.items():
                out.setdefault((order, len(k) - 1), {})[k] = c
        return {key: self.like({key[0]: d}) for key, d in out.items()}

    def total_degrees(self):
        rule = DegreeRule(self.m)
        return sorted({rule.total(r, len(k) - 1) for r, d in self.terms.items() for k in d})

    def in_filtration(self, n=None):
        n = self.n if n is None else n
        blocks = {}
        for r, d in self.terms.items():
            for k, c in d.items():
                blocks.setdefault((r, len(k) - 1), {})[k] = c
        return all(chain_in_filtration(BEChain(r, dim, d), n) for (r, dim), d in blocks.items())

    def __repr__(self):
        parts = ["r=%d: %d terms" % (r, len(d)) for r, d in sorted(self.terms.items())]
        return "TruncatedSeries(n=%s, m=%d, R=%d; %s)" % (self.n, self.m, self.R, ", ".join(parts))

    # -- serialisation ----------------------------------------------------
    def to_dict(self):
        orders = []
        for r in sorted(self.terms):
            P = perm_table(r).perms
            terms = [{"simplex": [list(P[a]) for a in k], "coeff": c}
                     for k, c in sorted(self.terms[r].items())]
            orders.append({"r": r, "terms": terms})
        n = "inf" if self.n == INF else self.n
        return {"n": n, "m": self.m, "R": self.R, "orders": orders}

    def write_json(self, f):
        """Same content as ``to_dict`` in compact JSON, one term per line."""
        n = "inf" if self.n == INF else self.n
        f.write('{"R":%d,"m":%d,"n":%s,"orders":[' % (self.R, self.m, json.dumps(n)))
        for i, r in enumerate(sorted(self.terms)):
            P = perm_table(r).perms
            f.write('%s\n{"r":%d,"terms":[' % ("," if i else "", r))
            for j, (k, c) in enumerate(sorted(self.terms[r].items())):
                word = ",".join("[%s]" % ",".join(map(str, P[a])) for a in k)
                f.write('%s\n{"coeff":%d,"simplex":[%s]}' % ("," if j else "", c, word))
            f.write("]}")
        f.write("]}")

    @classmethod
    def from_dict(cls, data):
        n = INF if data["n"] == "inf" else int(data["n"])
        terms = {}
        for block in data["orders"]:
            r = int(block["r"])
            idx = perm_table(r).index
            d = {}
            for t in block["terms"]:
                code = tuple(idx[tuple(p)] for p in t["simplex"])
                if code[0] != 0:
                    raise ValueError("stored simplex %r is not an orbit representative" % t["simplex"])
                d[code] = int(t["coeff"])
            terms[r] = d
        return cls(n, int(data["m"]), int(data["R"]), terms)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# operations

def series_differential(a):
    """The internal differential, order by order."""
    m = a.m
    out = {}
    for r, d in a.terms.items():
        T = perm_table(r)
        acc = {}
        for code, c in d.items():
            for s, f in rep_faces(T, code, m):
                _addto(acc, f, s * c)
        if acc:
            out[r] = acc
    return a.like(out)


def compose_terms(s, ucode, t, vcode, m, R=None):
    """
    {code: coefficient} for p o q with p = [ucode] of order s and q = [vcode]
    of order t, both representatives.  Every shuffle path starts at
    (identity, identity), so the results are representatives already.
    """
    out = {}
    cp = len(ucode) - 1
    cq = len(vcode) - 1
    shifted_b = cq - (t - 1) * m
    base = -1 if (shifted_b * cp) & 1 else 1
    step = (t - 1) * m & 1
    for i in range(1, s + 1):
        sgn_i = base if not (step and (i - 1) & 1) else -base
        for sg, code in compose_codes(s, t, i, ucode, vcode):
            if any(x == y for x, y in zip(code, code[1:])):
                continue
            _addto(out, code, sgn_i * sg)
    return out


def prelie_compose(a, b, order=None):
    """a o b, truncated at R (only the given order when one is passed)."""
    a._same(b)
    R, m = a.R, a.m
    out = {}
    for s, da in a.terms.items():
        for t, db in b.terms.items():
            r = s + t - 1
            if r > R or (order is not None and r != order):
                continue
            acc = out.setdefault(r, {})
            for ucode, uc in da.items():
                for vcode, vc in db.items():
                    for code, c in compose_terms(s, ucode, t, vcode, m).items():
                        _addto(acc, code, c * uc * vc)
    return a.like(out)


def derivation_apply(omega, xi):
    """The continuous derivation determined by omega, applied to xi: xi o omega."""
    return prelie_compose(xi, omega)


def mc_residual(omega):
    """d(omega) + omega o omega."""
    return series_differential(omega) + prelie_compose(omega, omega)


def shifted_degree(a):
    """The common value of total degree + m, or None when mixed."""
    vals = {len(k) - 1 - (r - 1) * a.m for r, d in a.terms.items() for k in d}
    if len(vals) == 1:
        return vals.pop()
    return None
