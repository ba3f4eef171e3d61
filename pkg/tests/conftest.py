import numpy as np
import pytest
from hypothesis import strategies as st

from fracset.setcore import IntegerSet


@st.composite
def integer_sets(draw, max_bound=60, min_size=0, max_size=None):
    X = draw(st.integers(1, max_bound))
    elems = draw(st.sets(st.integers(1, X), min_size=min(min_size, X), max_size=max_size))
    return IntegerSet.from_iterable(elems, X)


def naive_ratio_count(A, B):
    from math import gcd

    seen = set()
    for a in A:
        for b in B:
            g = gcd(a, b)
            seen.add((a // g, b // g))
    return len(seen)


def naive_gcd_classes(A, B):
    from collections import Counter
    from math import gcd

    return dict(Counter(gcd(a, b) for a in A for b in B))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): an acceptance criterion; reported in the summary")


def pytest_runtest_logreport(report):
    label = getattr(report, "acceptance_label", None)
    if label is None:
        return
    if report.when == "call" or report.outcome != "passed":
        prev = _ACCEPTANCE.get(label)
        if prev != "FAIL":
            _ACCEPTANCE[label] = "PASS" if report.outcome == "passed" else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result().acceptance_label = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(f"[{_ACCEPTANCE[label]}] {label}")
