import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


_CERTS = {}


def certificate(m, R, ring, seed=0):
    """solve_omega, memoised for the session (the order 6 lifts are slow)."""
    from enkoszul.mc_solver import solve_omega
    key = (m, R, str(ring), seed)
    if key not in _CERTS:
        _CERTS[key] = solve_omega(m, R, seed=seed, ring=ring)
    return _CERTS[key]


def forget_certificates(R=None):
    for key in [k for k in _CERTS if R is None or k[1] == R]:
        del _CERTS[key]


@pytest.fixture
def cert():
    return certificate


# one summary line per acceptance criterion

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for mark in getattr(report, "criterion", ()):
        n, title = mark
        ok = report.passed
        prev = _CRITERIA.get(n)
        _CRITERIA[n] = (title, ok if prev is None else prev[1] and ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criterion = [tuple(m.args) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line("criterion %d  %-44s %s" % (n, title, "PASS" if ok else "FAIL"))
