import random
import sys

import pytest

from planarskein.multicurve import Multicurve


@pytest.fixture
def rng():
    return random.Random(20261015)


def M(*subsets):
    return Multicurve.from_subsets([list(s) for s in subsets])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        ok, detail = results[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_sessionfinish(session, exitstatus):
    # every multicurve key emitted during the run must still pass validation
    from planarskein.skein import STATS
    for k in list(STATS.validated):
        k.validate()
