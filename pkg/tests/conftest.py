import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_(AC\d+)_(\w+?)(\[|$)", report.nodeid)
    if not m or (report.when != "call" and report.outcome == "passed"):
        return
    key = f"{m.group(1)} {m.group(2).replace('_', ' ')}"
    _criteria.setdefault(key, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k.split()[0][2:])):
        outcomes = _criteria[key]
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {key} ({len(outcomes)} checks)")
