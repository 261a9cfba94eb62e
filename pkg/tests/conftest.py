import pytest

from helpers import ACCEPTANCE_RESULTS, complete_graph, cycle_graph, path_graph, star_graph


@pytest.fixture
def P3():
    return path_graph(3)


@pytest.fixture
def C4():
    return cycle_graph(4)


@pytest.fixture
def C5():
    return cycle_graph(5)


@pytest.fixture
def K4():
    return complete_graph(4)


@pytest.fixture
def K2():
    return complete_graph(2)


@pytest.fixture
def star5():
    return star_graph(5)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        parts = ACCEPTANCE_RESULTS[number]
        passed = all(ok for ok, _ in parts.values())
        # a failed criterion lists only its failing parts
        shown = [(k, d) for k, (ok, d) in parts.items() if passed or not ok]
        detail = "; ".join(d if k is None else f"{k}: {d}" for k, d in shown)
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
