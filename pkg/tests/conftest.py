# criterion number -> (title, passed, seconds, limit); filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, secs, limit = ACCEPTANCE[num]
        budget = f" (limit {limit:g}s)" if limit else ""
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  #{num:<2} {title}  [{secs:.2f}s{budget}]"
        )
