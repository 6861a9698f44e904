import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record a criterion outcome line; printed again in the terminal summary."""

    def _report(number: int, title: str, failures: list[str]) -> None:
        status = "PASS" if not failures else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        if failures:
            line += " | " + "; ".join(failures[:4])
            if len(failures) > 4:
                line += f"; ... ({len(failures)} failing checks)"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert not failures, line

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
