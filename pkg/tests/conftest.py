import cmath
import math

import numpy as np
import pytest

from fgdom.moebius import MoebiusMap


def random_map(rng, scale=1.0) -> MoebiusMap:
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m = scale * m
        if abs(np.linalg.det(m)) > 1e-3:
            return MoebiusMap.from_array(m)


def random_real_map(rng) -> MoebiusMap:
    while True:
        m = rng.normal(size=(2, 2))
        d = np.linalg.det(m)
        if d > 1e-3:
            return MoebiusMap.from_array(m)


def random_point(rng) -> complex:
    return complex(rng.normal(), rng.normal())


def upper_point(rng) -> complex:
    return complex(rng.normal(), math.exp(rng.normal()))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def diag(lam) -> MoebiusMap:
    lam = complex(lam)
    return MoebiusMap(lam, 0, 0, 1 / lam)


def rotation(angle) -> MoebiusMap:
    return diag(cmath.exp(0.5j * angle))


# one PASS/FAIL line per acceptance criterion at the end of the run

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "ok": True, "details": []})
    entry["ok"] = entry["ok"] and not rep.failed
    entry["details"].extend(v for k, v in item.user_properties if k == "detail")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        line = f"criterion {n:2d} {'PASS' if e['ok'] else 'FAIL'}  {e['title']}"
        if e["details"]:
            line += "  [" + "; ".join(e["details"]) + "]"
        terminalreporter.write_line(line)
