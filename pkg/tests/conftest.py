from __future__ import annotations

import itertools

import pytest
from hypothesis import HealthCheck, settings

from cayleycore.cayley import ConnectionSet
from cayleycore.gfp import FieldSpec

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def all_connection_sets(field: FieldSpec):
    """Every symmetric zero-free subset, by unions of {x, -x} classes."""
    seen, classes = set(), []
    for x in range(1, field.size):
        if x not in seen:
            cls = {x, field.neg(x)}
            seen |= cls
            classes.append(cls)
    for r in range(len(classes) + 1):
        for combo in itertools.combinations(classes, r):
            yield ConnectionSet(field, frozenset().union(*combo))


@pytest.fixture
def f2_4() -> FieldSpec:
    return FieldSpec(2, 4)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
