from functools import lru_cache

import numpy as np
import pytest

from cameron_liebler import EllipticQuadric, build_geometry, field_new, switch, switchable_pairs

# q -> (p, h)
FIELDS = {3: (3, 1), 5: (5, 1), 7: (7, 1), 9: (3, 2), 11: (11, 1), 13: (13, 1)}
DESK_Q = (3, 5, 7, 9)


@lru_cache(maxsize=None)
def field(q):
    return field_new(*FIELDS[q])


@lru_cache(maxsize=None)
def geometry(q):
    return build_geometry(field(q))


@lru_cache(maxsize=None)
def quadric(q):
    return EllipticQuadric(geometry(q))


@lru_cache(maxsize=None)
def bd(q):
    """The Bruen-Drudge class S ∪ T^1."""
    return quadric(q).bruen_drudge("secants", 1)


@lru_cache(maxsize=None)
def first_pair(q):
    return switchable_pairs(bd(q))[0]


@lru_cache(maxsize=None)
def switched(q):
    s = first_pair(q)
    return switch(bd(q), s.point, s.plane)


def rng(seed=0):
    return np.random.default_rng(seed)


# -- acceptance reporting ---------------------------------------------------------

ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, text = marker.args
        ACCEPTANCE.append((number, text, item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    by_number = {}
    for number, text, name, outcome in ACCEPTANCE:
        entry = by_number.setdefault(number, {"texts": [], "passed": 0, "failed": []})
        if text not in entry["texts"]:
            entry["texts"].append(text)
        if outcome == "passed":
            entry["passed"] += 1
        else:
            entry["failed"].append(name)
    for number in sorted(by_number):
        entry = by_number[number]
        status = "FAIL" if entry["failed"] else "PASS"
        total = entry["passed"] + len(entry["failed"])
        line = f"[{status}] criterion {number:>2}: {'; '.join(entry['texts'])} ({entry['passed']}/{total} cases)"
        if entry["failed"]:
            line += " failing: " + ", ".join(entry["failed"])
        terminalreporter.write_line(line)
