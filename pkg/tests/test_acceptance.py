"""The eleven acceptance criteria, each run at full size through the harness.

Run directly (``python3 tests/test_acceptance.py``) to print one line per
criterion without pytest.
"""

import sys

import pytest

from kaug.harness import SUITES, harness_run

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:
    ACCEPTANCE_LINES = []

CRITERIA = sorted(SUITES.values(), key=lambda s: s.criterion)


def _run(name):
    res = harness_run(name)
    ACCEPTANCE_LINES.append(res.line())
    print(res.table())
    return res


@pytest.mark.parametrize("name", [s.name for s in CRITERIA])
def test_criterion(name):
    res = _run(name)
    assert res.passed, res.table()
    if name == "pipeline-ratio":
        assert res.cases == 50 and res.metrics["max_ratio"] <= 6
        assert res.metrics["max_seconds"] < 10
    elif name == "rooted-factor":
        assert res.metrics["max_ratio"] <= 2
    elif name == "uncross-identities":
        assert res.metrics["submodular"] == 10_000 and res.seconds < 30
    elif name == "rogue-free-after-b":
        assert res.metrics["branch_large"] >= 50
    elif name == "half-edge":
        assert res.cases == 100
    elif name == "rogue-implies-independence":
        assert res.checks == 1000
    elif name == "separation-oracle":
        assert res.cases == 100


if __name__ == "__main__":
    ok = True
    for suite in CRITERIA:
        res = harness_run(suite.name)
        print(res.line(), flush=True)
        ok &= res.passed
    sys.exit(0 if ok else 1)
