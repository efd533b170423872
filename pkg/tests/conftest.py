import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    entry = _results.setdefault(number, {"title": title, "failures": [], "count": 0})
    entry["count"] += 1
    if call.excinfo is not None:
        msg = str(call.excinfo.value).strip().splitlines()
        entry["failures"].append(f"{item.name}: {msg[0] if msg else call.excinfo.typename}")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        status = "FAIL" if entry["failures"] else "PASS"
        tr.write_line(f"criterion {number:2d} {status}  {entry['title']}")
        for f in entry["failures"]:
            tr.write_line(f"    {f}")
