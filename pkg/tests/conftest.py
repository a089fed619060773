from acceptance_log import lines


def pytest_terminal_summary(terminalreporter):
    summary = lines()
    if summary:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in summary:
            terminalreporter.write_line(line)
