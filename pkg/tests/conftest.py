def pytest_terminal_summary(terminalreporter):
    # acceptance lines are shown here as well, since pytest captures test output
    from test_acceptance import RESULTS, LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(LINES):
            terminalreporter.write_line(LINES[number])
        terminalreporter.write_line(f"{sum(RESULTS.values())}/{len(RESULTS)} criteria passed")
