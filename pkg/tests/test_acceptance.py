"""
End-to-end acceptance checks.

Runs every oracle-equivalence check of the selfcheck suite. These take
minutes rather than seconds; deselect with `pytest -m "not slow"`.
"""

import pytest

from analytic_widths.domain import SeriesConfig
from analytic_widths.selfcheck import CHECKS, run_selfcheck

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("name", list(CHECKS))
def test_selfcheck(name):
    """Run one named check and require it to pass."""
    (result,) = run_selfcheck(SeriesConfig(), only=[name])
    assert result.name == name
    assert result.passed, result.detail
    assert result.seconds >= 0.0
