ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE_LINES):
        for line in ACCEPTANCE_LINES[c]:
            terminalreporter.write_line(line)
