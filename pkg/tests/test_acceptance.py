"""The eleven acceptance criteria, one test each.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
repeated in the terminal summary.
"""

import pytest

from l2torsion import selftest


@pytest.mark.parametrize("number", range(1, 12))
def test_criterion(number, acceptance_log):
    result = selftest.criterion(number)
    line = result.line()
    print(line)
    acceptance_log.append(line)
    assert result.passed, line
