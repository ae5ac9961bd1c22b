import os
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings

from mixeq.fixtures import FIXTURE_NAMES, fixture
from mixeq.mats import MatrixTuple

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def exact_array(rows):
    return np.array([[Fraction(x) for x in r] for r in rows], dtype=object)


@pytest.fixture(params=FIXTURE_NAMES)
def any_fixture(request):
    return fixture(request.param)


@pytest.fixture
def cyclic2x2():
    return fixture("cyclic2x2")


@pytest.fixture
def prop4():
    return fixture("prop4")


def conjugate_by(mats, x):
    """Exact X A X^-1 for each matrix, used to hide structure in tests."""
    from mixeq.mats import inverse
    xa = exact_array(x)
    xi = inverse(xa)
    return MatrixTuple.exact([xa @ exact_array(m) @ xi for m in mats])


# one summary line per acceptance criterion at the end of the run
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _acceptance[report.nodeid] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    from test_acceptance import CRITERIA
    terminalreporter.section("acceptance criteria")
    for num, func in CRITERIA:
        outcome = next((o for k, o in _acceptance.items() if k.endswith(f"::test_criterion_{num}")), None)
        if outcome is None:
            continue
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {tag}  {func.__doc__.strip().splitlines()[0]}")
