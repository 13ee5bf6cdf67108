"""
Command line: ``enkoszul {solve,report,verify,inspect-basis}``.

Exit status 0 means success, 1 a mathematical failure (no lift, nonzero
residual, (d + del)^2 != 0, a failed check) and 2 a usage error.
"""

import argparse
import os
import random
import sys
import time

from . import __version__
from .barratt_eccles import INF, BasisCache, set_cache

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class MathFailure(Exception):
    pass


def _ring(args):
    from .chains import Ring
    if getattr(args, "p", None):
        return Ring(args.p)
    return Ring.parse(args.ring)


def _window(text):
    if text is None:
        return None
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError("--window expects LO:HI, got %r" % text) from None
    if lo > hi:
        raise UsageError("--window %s is empty" % text)
    return lo, hi


def _check_m(m):
    if m == 0:
        raise UsageError(
            "m = 0 is not supported: omega_m needs an E_m operad and the complexity "
            "filtration starts at E_1, so the sphere case S^n itself has no twisting "
            "element here")
    if m < 0:
        raise UsageError("m must be >= 1")


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _say(args, msg):
    # the human summary goes to stderr when stdout carries the payload
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    print(msg, file=stream)


def _solve(args, ring, R=None):
    from .chains import NoSolution
    from .mc_solver import ObstructionNotCycle, solve_omega
    _check_m(args.m)
    R = args.R if R is None else R
    if R < 2:
        raise UsageError("R must be >= 2")
    try:
        return solve_omega(args.m, R, seed=args.seed, ring=ring)
    except (NoSolution, ObstructionNotCycle) as exc:
        raise MathFailure(str(exc)) from None


def cmd_solve(args):
    from .mc_solver import verify_mc
    ring = _ring(args)
    cert = _solve(args, ring)
    rep = verify_mc(cert)
    _write(cert.to_json(), args.out)
    _say(args, "omega_%d through order %d over %s, seed %d" % (cert.m, cert.R, ring, cert.seed))
    for c in cert.checks:
        size = "x".join(map(str, c.slice_size)) if c.slice_size else "-"
        _say(args, "  r=%d  chain degree %d (expected %d)  slice %s  terms %d  residual %s"
             % (c.r, c.chain_degree, c.expected_degree, size, c.nterms,
                "0" if c.residual_zero else "NONZERO"))
    if not rep.ok:
        raise MathFailure("; ".join(rep.messages))
    return EXIT_OK


def cmd_report(args):
    from .koszul_complex import SpecError, SquareZeroError, TwistedComplexSpec, homology_report
    from .mc_solver import OmegaCertificate
    ring = _ring(args)
    _check_m(args.m)
    if args.n < args.m:
        raise UsageError("need n >= m")
    cert = None
    if not args.untwisted:
        if args.cert:
            cert = OmegaCertificate.load(args.cert)
        else:
            cert = _solve(args, ring)
    spec = TwistedComplexSpec(args.n, args.m, args.R, ring, cert, _window(args.window))
    try:
        rep = homology_report(spec)
    except SpecError as exc:
        raise UsageError(str(exc)) from None
    except SquareZeroError as exc:
        raise MathFailure(str(exc)) from None
    text = rep.to_csv() if args.format == "csv" else rep.to_json()
    _write(text, args.out)
    if not any(r.stable for r in rep.rows):
        print("warning: no degree in the window is stable at R=%d" % args.R, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args):
    from .checks import run_suite
    results = run_suite(quick=args.quick, corrupt_sign=args.inject_sign_bug,
                        seed=args.seed, cert_path=args.cert)
    failed = 0
    for res in results:
        line = "%-28s %s  (%d checks, %.1fs)" % (res.name, "PASS" if res.passed else "FAIL",
                                                 res.checked, res.seconds)
        print(line)
        if not res.passed:
            failed += 1
            print("    witness: %s" % (res.witness,))
    return EXIT_MATH if failed else EXIT_OK


def cmd_inspect(args):
    from .barratt_eccles import basis, orbit_basis, default_cache
    n = INF if args.n in ("inf", "oo") else int(args.n)
    if n == INF and args.k is None:
        raise UsageError("E_inf needs --k")
    if args.k is not None:
        if args.list:
            for word in basis(n, args.r, args.k):
                print(" ".join(",".join(map(str, p)) for p in word))
        else:
            reps = orbit_basis(n, args.r, args.k)
            print("E_%s(%d) degree %d: %d orbit representatives, %d simplices"
                  % (args.n, args.r, args.k, len(reps), len(reps) * _fact(args.r)))
        return EXIT_OK
    data = default_cache().reps(n, args.r)
    for k in sorted(data):
        print("k=%d  %d representatives" % (k, len(data[k])))
    return EXIT_OK


def _fact(r):
    out = 1
    for i in range(2, r + 1):
        out *= i
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="enkoszul", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version="enkoszul " + __version__)
    p.add_argument("--cache", help="basis cache directory (default $ENKOSZUL_CACHE, else memory only)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, need_n=True):
        if need_n:
            q.add_argument("--n", type=int, required=True)
        q.add_argument("--m", type=int, required=True)
        q.add_argument("--R", type=int, required=True)
        q.add_argument("--ring", default="Z", help="Z or Fp, e.g. F2")
        q.add_argument("--p", type=int, help="shorthand for --ring F<p>")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--out", help="output file (default stdout)")

    s = sub.add_parser("solve", help="solve the Maurer-Cartan equation for omega_m")
    common(s, need_n=False)
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("report", help="homology of the dual twisted complex")
    common(r)
    r.add_argument("--window", help="topological degrees LO:HI")
    r.add_argument("--cert", help="certificate file (solved on the fly otherwise)")
    r.add_argument("--untwisted", action="store_true", help="use omega = 0")
    r.add_argument("--format", choices=("json", "csv"), default="json")
    r.set_defaults(func=cmd_report)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--quick", action="store_true", help="smaller sizes")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cert", help="also verify this certificate")
    v.add_argument("--inject-sign-bug", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("inspect-basis", help="sizes or listing of E_n(r) bases")
    b.add_argument("--n", required=True, help="filtration index or inf")
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--k", type=int)
    b.add_argument("--list", action="store_true", help="print every simplex of degree k")
    b.set_defaults(func=cmd_inspect)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.cache:
        os.environ["ENKOSZUL_CACHE"] = args.cache
        set_cache(BasisCache(args.cache))
    random.seed(getattr(args, "seed", 0))
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except MathFailure as exc:
        print("failure: %s" % exc, file=sys.stderr)
        return EXIT_MATH
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
