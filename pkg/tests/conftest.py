import pytest

_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = item.get_closest_marker("criterion")
    if label is None:
        return
    number, title = label.args
    failed = report.failed
    previous = _acceptance.get(number, (title, False))
    _acceptance[number] = (title, previous[1] or failed)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, failed = _acceptance[number]
        terminalreporter.write_line(f"{'FAIL' if failed else 'PASS'} {number:2d} {title}")
