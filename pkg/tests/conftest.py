import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record pass/fail for one acceptance criterion under the given number."""
    def record(number, title):
        ACCEPTANCE[number] = [title, "FAIL"]
        request.node.acceptance_number = number
        return number
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    number = getattr(item, "acceptance_number", None)
    if number is not None and rep.when == "call":
        ACCEPTANCE[number][1] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, status = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
