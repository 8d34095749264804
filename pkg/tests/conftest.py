import pytest

from specials.classify import classify
from specials.groups import iter_groups
from specials.quiver import build_ar_quiver

SWEEP_LIMITS = {"A": 40, "D": 30, "T": 117, "O": 119, "I": 119}

ACCEPTANCE_LINES = {}


def record_criterion(number, title, passed, detail=""):
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}" + (
        f"  ({detail})" if detail else ""
    )


_SWEEP = {}


def sweep_entries():
    """(group, quiver, report) for every group in the acceptance sweep, computed once."""
    if not _SWEEP:
        for fam, limit in SWEEP_LIMITS.items():
            rows = []
            for g in iter_groups(fam, limit):
                Q = build_ar_quiver(g)
                rows.append((g, Q, classify(g, Q)))
            _SWEEP[fam] = rows
    return _SWEEP


@pytest.fixture(scope="session")
def sweep():
    return sweep_entries()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
