import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# criterion name -> True / False / None (not run)
ACCEPTANCE = {}
NODE_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion covered by this test")


def pytest_collection_modifyitems(items):
    for item in items:
        for m in item.iter_markers("criterion"):
            NODE_CRITERIA.setdefault(item.nodeid, []).append(m.args[0])
            ACCEPTANCE.setdefault(m.args[0], None)


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and not report.passed):
        for name in NODE_CRITERIA.get(report.nodeid, ()):
            prev = ACCEPTANCE.get(name)
            ACCEPTANCE[name] = report.passed if prev is None else (prev and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        ok = ACCEPTANCE[name]
        status = "PASS" if ok else ("NOT RUN" if ok is None else "FAIL")
        terminalreporter.write_line(f"{status:8} {name}")
