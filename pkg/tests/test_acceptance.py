"""The fifteen acceptance criteria at their stated tolerances.

Each check prints one PASS/FAIL line (also collected into the pytest
terminal summary).  Run directly with ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from petaluma.acceptance import CHECKS, run_check

# wall-clock limits stated alongside the criteria
TIME_LIMITS = {1: 1, 2: 5, 9: 60, 11: 30, 12: 60, 13: 120, 14: 60}


@pytest.mark.parametrize("number", [n for n, _, _ in CHECKS], ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number):
    from conftest import record_acceptance

    res = run_check(number)
    print(res.line())
    record_acceptance(res.line())
    assert res.passed, res.detail
    limit = TIME_LIMITS.get(number)
    if limit is not None:
        assert res.seconds < limit, f"took {res.seconds:.1f}s, limit {limit}s"


if __name__ == "__main__":
    failed = 0
    for number, _, _ in CHECKS:
        res = run_check(number)
        print(res.line(), flush=True)
        failed += not res.passed
    sys.exit(1 if failed else 0)
