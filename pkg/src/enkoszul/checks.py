"""Invariant suites shared by ``enkoszul verify`` and the tests."""

import random
import time
from contextlib import contextmanager
from dataclasses import dataclass

from . import power_series
from .barratt_eccles import INF, BEChain, basis, differential, orbit_basis, partial_composite
from .chains import ZZ, ChainComplexSlice, SparseMatrix, homology
from .power_series import (
    TruncatedSeries,
    coinvariant_reduce,
    prelie_compose,
    series_differential,
    shifted_degree,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    seconds: float
    witness: object = None


def random_homogeneous(rng, n, m, R, r=None, c=None, terms=2):
    """A random series of one order and one chain degree (None if that slot is empty)."""
    for _ in range(50):
        rr = r or rng.randint(1, R)
        reps_by_c = {k: orbit_basis(n, rr, k) for k in range(0, 8)}
        cs = [k for k, v in reps_by_c.items() if v]
        cc = c if c is not None else rng.choice(cs)
        reps = reps_by_c.get(cc) or []
        if reps:
            d = {}
            for _ in range(terms):
                d[rng.choice(reps)] = rng.choice((-2, -1, 1, 2, 3))
            return TruncatedSeries(n, m, R, {rr: d})
    return None


def prelie_defect(a, b, c):
    """(a o b) o c - a o (b o c) - (-1)^{|b||c|} ((a o c) o b - a o (c o b))."""
    sb, sc = shifted_degree(b), shifted_degree(c)
    lhs = prelie_compose(prelie_compose(a, b), c) - prelie_compose(a, prelie_compose(b, c))
    rhs = prelie_compose(prelie_compose(a, c), b) - prelie_compose(a, prelie_compose(c, b))
    return lhs - ((-1) ** ((sb * sc) % 2)) * rhs


def check_prelie(trials, m, rng, n=2, R=5):
    bad, done = None, 0
    while done < trials:
        a, b, c = (random_homogeneous(rng, n, m, R, rng.randint(1, 3)) for _ in range(3))
        if a is None or b is None or c is None:
            continue
        done += 1
        if not prelie_defect(a, b, c).is_zero() and bad is None:
            bad = (a.terms, b.terms, c.terms)
    return bad, done


def check_d_squared(n_max=3, r_max=4, k_max=4):
    done = 0
    for n in range(1, n_max + 1):
        for r in range(1, r_max + 1):
            for k in range(2, k_max + 1):
                for word in basis(n, r, k):
                    x = BEChain.from_words({word: 1})
                    done += 1
                    if differential(differential(x)):
                        return (n, r, word), done
    return None, done


def check_leibniz(rng, trials=300):
    done = 0
    for _ in range(trials):
        r, s = rng.randint(1, 3), rng.randint(1, 3)
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        A, B = basis(INF, r, p), basis(INF, s, q)
        if not A or not B:
            continue
        a = BEChain.from_words({rng.choice(A): 1})
        b = BEChain.from_words({rng.choice(B): 1})
        i = rng.randint(1, r)
        lhs = differential(partial_composite(a, b, i))
        rhs = partial_composite(differential(a), b, i) + ((-1) ** p) * partial_composite(a, differential(b), i)
        done += 1
        if lhs != rhs:
            return (a.words(), b.words(), i), done
    return None, done


def check_orbit_oracle(rng, trials=300):
    from . import oracle
    from .barratt_eccles import translate
    from .symm import all_perms
    done = 0
    for _ in range(trials):
        r = rng.randint(2, 4)
        k = rng.randint(0, 3)
        reps = orbit_basis(3, r, k)
        if not reps:
            continue
        words = {}
        for _ in range(3):
            g = rng.choice(all_perms(r))
            x = translate(g, BEChain(r, k, {rng.choice(reps): 1}))
            for w, c in x.words().items():
                words[w] = words.get(w, 0) + rng.choice((-1, 1, 2)) * c
        words = {w: c for w, c in words.items() if c}
        if not words:
            continue
        m = rng.randint(1, 4)
        main = coinvariant_reduce(BEChain.from_words(words), m).words()
        other = oracle.orbit_sum_reduce(words, m)
        done += 1
        if main != other:
            return (words, m), done
    return None, done


def sphere_slice(n, ring=ZZ):
    """Main-path homology of E_n(2) (all simplices, no quotient)."""
    top = n - 1
    degs = list(range(0, top + 2))
    bases = {k: basis(n, 2, k) for k in degs + [-1] if k >= 0}
    bd = {}
    for k in degs:
        if k - 1 not in bases or not bases[k]:
            continue
        idx = {w: i for i, w in enumerate(bases[k - 1])}
        cols = []
        for w in bases[k]:
            col = {}
            for f, c in differential(BEChain.from_words({w: 1})).words().items():
                col[idx[f]] = col.get(idx[f], 0) + c
            cols.append(col)
        bd[k] = SparseMatrix(len(bases[k - 1]), cols)
    C = ChainComplexSlice(bases, bd)
    return {k: homology(C, k, ring) for k in range(0, top + 1)}


def sphere_expected(n):
    if n == 1:
        return {0: (2, [])}
    return {k: ((1 if k in (0, n - 1) else 0), []) for k in range(0, n)}


def check_spheres(n_max=4):
    from . import oracle
    done = 0
    for n in range(1, n_max + 1):
        want = sphere_expected(n)
        main = sphere_slice(n)
        other = oracle.total_homology(n, 2, list(range(0, n)))
        done += 1
        if main != want or other != want:
            return (n, main, other), done
    return None, done


@contextmanager
def corrupted_sign():
    """Drop the slot-dependent part of the composition sign (mutation testing)."""
    from .barratt_eccles import compose_codes
    original = power_series.compose_terms

    def broken(s, ucode, t, vcode, m, R=None):
        out = {}
        shifted_b = len(vcode) - 1 - (t - 1) * m
        base = -1 if (shifted_b * (len(ucode) - 1)) & 1 else 1
        for i in range(1, s + 1):
            for sg, code in compose_codes(s, t, i, ucode, vcode):
                if all(x != y for x, y in zip(code, code[1:])):
                    out[code] = out.get(code, 0) + base * sg
        return {k: v for k, v in out.items() if v}

    power_series.compose_terms = broken
    try:
        yield
    finally:
        power_series.compose_terms = original


def run_suite(quick=False, corrupt_sign=False, seed=0, cert_path=None):
    rng = random.Random(seed)
    results = []

    def run(name, fn):
        t = time.time()
        witness, done = fn()
        results.append(SuiteResult(name, witness is None, done, time.time() - t, witness))

    run("d^2 = 0", lambda: check_d_squared(3, 3 if quick else 4, 3 if quick else 4))
    run("Leibniz", lambda: check_leibniz(rng, 100 if quick else 300))
    run("orbit oracle", lambda: check_orbit_oracle(rng, 100 if quick else 300))
    run("E_n(2) ~ S^{n-1}", lambda: check_spheres(3 if quick else 4))
    trials = 50 if quick else 200
    if corrupt_sign:
        with corrupted_sign():
            run("pre-Lie (m odd)", lambda: check_prelie(trials, 1, rng))
            run("pre-Lie (m even)", lambda: check_prelie(trials, 2, rng))
    else:
        run("pre-Lie (m odd)", lambda: check_prelie(trials, 1, rng))
        run("pre-Lie (m even)", lambda: check_prelie(trials, 2, rng))

    def mc():
        from .mc_solver import OmegaCertificate, solve_omega, verify_mc
        certs = [OmegaCertificate.load(cert_path)] if cert_path else [
            solve_omega(1, 4), solve_omega(2, 3 if quick else 4)]
        for cert in certs:
            rep = verify_mc(cert)
            if not rep.ok:
                return (cert.m, cert.R, rep.messages), len(certs)
        return None, len(certs)

    run("Maurer-Cartan residual", mc)
    return results


__all__ = ["run_suite", "random_homogeneous", "prelie_defect", "series_differential"]
