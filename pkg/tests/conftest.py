ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
