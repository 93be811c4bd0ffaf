"""Shared pytest plumbing: collects acceptance-criterion outcomes and prints
one pass/fail line per criterion at the end of the run."""

_criterion_results = []


def record_criterion(number: int, description: str, passed: bool) -> None:
    _criterion_results.append((number, description, passed))


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed in sorted(_criterion_results):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[criterion {number:2d}] {status}  {description}")
