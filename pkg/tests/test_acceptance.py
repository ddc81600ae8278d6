"""Acceptance criteria 1-11, one test each, at their stated tolerances.

Every test prints a one-line verdict (also collected into the pytest
terminal summary). Criteria that do not hold stay failing; the measured
values in the failure message show by how much. Run standalone with
``python tests/test_acceptance.py``.
"""
import json
import sys

import pytest

from casimir_entropy.validation import CRITERIA, DEFAULT_TOL

#: criterion id -> result, read by the terminal-summary hook in conftest.py
RESULTS = {}


def verdict_line(result):
    return f"criterion {result.id:2d}: {'PASS' if result.passed else 'FAIL'} - {result.title} [{result.threshold}]"


def run_criterion(cid):
    result = CRITERIA[cid](DEFAULT_TOL)
    RESULTS[cid] = result
    print(verdict_line(result))
    return result


@pytest.mark.acceptance
@pytest.mark.parametrize("cid", sorted(CRITERIA))
def test_criterion(cid):
    result = run_criterion(cid)
    assert result.passed, json.dumps(result.measured, indent=1, sort_keys=True, default=str)


if __name__ == "__main__":
    results = [run_criterion(cid) for cid in sorted(CRITERIA)]
    sys.exit(0 if all(r.passed for r in results) else 1)
