"""Shared pytest wiring: import path and the acceptance summary block."""

from __future__ import annotations

import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_CRITERION_PATTERN = re.compile(r"test_acceptance\.py::test_c(\d+)")

_CRITERION_TITLES = {
    1: "nested two-body example end to end",
    2: "five-objective combination grid (1e-3)",
    3: "p-norm aggregation for w=1..5 (5e-3) and bound monotonicity",
    4: "alternative engines on the shared example (5e-3)",
    5: "pignistic collapse example",
    6: "fuzzy route vs plain rule disagreement",
    7: "property suites (oracle, KKT, algebra, idempotence, containment)",
    8: "no full-scale claims beyond the desk examples",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion, from real test outcomes."""
    outcomes: dict[int, list[bool]] = {}
    for status, passed in (("passed", True), ("failed", False), ("error", False)):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            match = _CRITERION_PATTERN.search(nodeid)
            if match:
                outcomes.setdefault(int(match.group(1)), []).append(passed)
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(outcomes):
        results = outcomes[criterion]
        status = "PASS" if all(results) else "FAIL"
        title = _CRITERION_TITLES.get(criterion, "")
        terminalreporter.write_line(
            f"criterion {criterion}: {status} "
            f"({sum(results)}/{len(results)} checks) - {title}"
        )
