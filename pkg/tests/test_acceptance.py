"""Acceptance suite: one test per headline criterion, with runtime budgets.

Budgets are enforced inside run_criterion: a criterion that exceeds its
budget is reported as failed even if every assertion inside it held.
"""

import pytest

from deltak.verify import CRITERIA, run_criterion


@pytest.mark.parametrize(
    "label,name,fn,budget",
    CRITERIA,
    ids=[f"criterion_{label}_{name.replace(' ', '_')}" for label, name, _, _ in CRITERIA],
)
def test_criterion(label, name, fn, budget):
    res = run_criterion(label, fn, budget)
    status = "pass" if res["passed"] else "FAIL"
    print(
        f"criterion {label:>2} [{status}] {res['seconds']:7.2f}s  "
        f"{name}: {res['detail']}"
    )
    assert res["passed"], f"criterion {label} ({name}): {res['detail']}"
