"""Shared pytest configuration.

Property tests are derandomized by default so runs are reproducible.  Setting
``POLYMA_SEED`` switches to seeded random generation with that seed.
"""

import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

_common = dict(deadline=None, database=None, print_blob=True,
               suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much,
                                      HealthCheck.data_too_large])
settings.register_profile("polyma", derandomize=True, **_common)
settings.register_profile("polyma-seeded", derandomize=False, **_common)

SEED = os.environ.get("POLYMA_SEED")
settings.load_profile("polyma-seeded" if SEED else "polyma")


def pytest_configure(config):
    if SEED:
        config.option.hypothesis_seed = int(SEED)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
