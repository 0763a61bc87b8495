import pytest

from ltloracle.logic import KripkeStructure, parse_ltl


@pytest.fixture
def self_loop_p():
    return KripkeStructure.build([[0]], [{"p"}], alphabet=["p"])


@pytest.fixture
def two_cycle():
    """0 {p} -> 1 {q} -> 0, initial {0}."""
    return KripkeStructure.build([[1], [0]], [{"p"}, {"q"}], alphabet=["p", "q"])


def ltl(text, alphabet=None):
    return parse_ltl(text, alphabet)


# (criterion, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def record_criterion():
    def record(name: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE_RESULTS.append((name, passed, detail))
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
