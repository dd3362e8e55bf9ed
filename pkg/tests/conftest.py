import os
import sys

import pytest

from hypersum import reduction

sys.path.insert(0, os.path.dirname(__file__))

# Every residual form built anywhere in the run is recorded here and audited
# by the last test of the session.
RECORDED = {}

_orig_init = reduction.ResidualForm.__init__


def _recording_init(self, a, b, q, u, v):
    _orig_init(self, a, b, q, u, v)
    key = (a, b, q, u, v)
    if key not in RECORDED:
        RECORDED[key] = self


reduction.ResidualForm.__init__ = _recording_init


def pytest_collection_modifyitems(config, items):
    last = [it for it in items if it.get_closest_marker("session_audit")]
    rest = [it for it in items if not it.get_closest_marker("session_audit")]
    items[:] = rest + last


def pytest_configure(config):
    config.addinivalue_line("markers", "session_audit: runs after every other test")


@pytest.fixture
def recorded_forms():
    return RECORDED


# acceptance criteria report one line each at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line("criterion %d: %s  %s" % (num, "PASS" if ok else "FAIL", detail))
