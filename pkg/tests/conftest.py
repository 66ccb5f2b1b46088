import warnings

import pytest
from hypothesis import settings

from quadtors.cli import bundled_corpus, find_curve

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# curves cited for their torsion growth, as (label, d, expected structure over Q(sqrt d))
CITED_GROWTH = [
    ("15.a3", -5, "C2 x C2"),
    ("17.a3", -1, "C2 x C4"),
    ("15.a8", -1, "C2 x C8"),
    ("15.a4", 3, "C8"),
    ("80.b1", 3, "C6"),
    ("50.b1", -15, "C3"),
]


@pytest.fixture(autouse=True)
def _quiet_minimality():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="model may not be minimal")
        yield


@pytest.fixture(scope="session")
def corpus():
    return bundled_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    return bundled_corpus(max_conductor=100)


def curve_of(label):
    return find_curve(label).curve()


# criterion number -> (title, passed, detail), filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {title}: {detail}")
