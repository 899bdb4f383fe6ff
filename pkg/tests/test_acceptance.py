"""One test per acceptance criterion, each at its stated tolerance.

Every sub-check prints a ``[PASS]``/``[FAIL]`` line; the lines are repeated
in the pytest terminal summary.  Run directly (``python3 tests/test_acceptance.py``)
for the table alone.
"""

import pytest

from twisted_yangian import verify

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:
    ACCEPTANCE_LINES = {}

TITLES = {
    1: "kernel inverse identity",
    2: "density = energy",
    3: "bulk factorisation",
    4: "kernel split",
    5: "transmission factorisation",
    6: "Fourier case rules",
    7: "amplitude unitarity",
    8: "BAE solver",
    9: "lattice oracle",
    10: "fault sensitivity",
}


def run(c):
    rows = verify.run_criterion(c)
    ok = verify.criterion_passed(rows)
    head = f"criterion {c:>2d} ({TITLES[c]}): {'PASS' if ok else 'FAIL'}"
    lines = [head] + ["    " + r.line() for r in rows]
    ACCEPTANCE_LINES[c] = lines
    print("\n".join(lines))
    return rows, ok


@pytest.mark.parametrize("c", sorted(TITLES), ids=[f"C{c}-{TITLES[c].replace(' ', '-')}" for c in sorted(TITLES)])
def test_criterion(c):
    rows, ok = run(c)
    failed = [r.line() for r in rows if not r.passed]
    assert ok, "\n".join(failed)


if __name__ == "__main__":
    for c in sorted(TITLES):
        run(c)
