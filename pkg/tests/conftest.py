import pytest
from hypothesis import strategies as st

from pgsat.enumeration import enumerate_classes
from pgsat.geometry import PointSet, num_points
from pgsat.verify import load_expected

SEED = 20261016


@pytest.fixture(scope="session")
def table_rows():
    return load_expected()["point_lists"]


@pytest.fixture(scope="session")
def table_sets(table_rows):
    return [PointSet.from_points(r["v"], r["points"]) for r in table_rows]


@pytest.fixture(scope="session")
def classes():
    return {v: enumerate_classes(v) for v in (2, 3, 4)}


@st.composite
def point_sets(draw, dims=(2, 3, 4), max_size=None):
    v = draw(st.sampled_from(dims))
    n = num_points(v)
    pts = draw(st.sets(st.integers(1, n), max_size=max_size or n))
    return PointSet.from_points(v, pts)


_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif report.when == "setup" and report.outcome != "passed" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")
