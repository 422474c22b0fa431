import os
import sys
from collections import defaultdict

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = defaultdict(list)

CRITERION_TITLES = {
    1: "golden decompositions",
    2: "oracle equivalence on family expressions",
    3: "diamond and nu table",
    4: "D8 powers",
    5: "dihedral power closed form",
    6: "Dade torsion of semidihedral central powers",
    7: "Burnside unit ranks",
    8: "Q8 involution and its action",
    9: "product basis construction",
    10: "property suites",
    11: "odd prime checks",
}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _CRITERIA[marker.args[0]].append(call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        results = _CRITERIA[n]
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(
            f"criterion {n:2d} {verdict}  {CRITERION_TITLES.get(n, '')} "
            f"({sum(results)}/{len(results)} checks)")
