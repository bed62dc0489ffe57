import pytest

_criteria: list[str] = []


@pytest.fixture
def criterion_log():
    """Acceptance tests append one PASS/FAIL line here; printed in the terminal summary."""

    def log(number, name, ok, detail=""):
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {name}"
        if detail:
            line += f": {detail}"
        _criteria.append(line)
        print(line)
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criteria, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
