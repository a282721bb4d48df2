_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _criteria[number] = {"title": title, "nodeid": item.nodeid, "outcome": None, "seconds": 0.0}


def pytest_runtest_logreport(report):
    for entry in _criteria.values():
        if entry["nodeid"] != report.nodeid:
            continue
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            entry["outcome"] = report.outcome
            entry["seconds"] = report.duration


def pytest_terminal_summary(terminalreporter):
    ran = {n: e for n, e in _criteria.items() if e["outcome"] is not None}
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ran):
        e = ran[number]
        verdict = "PASS" if e["outcome"] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {number}: {e['title']} ({e['seconds']:.1f} s)")
