"""Acceptance criteria, one test per checkpoint.

Each test prints a ``[PASS]`` or ``[FAIL]`` line plus one line per clause,
visible with ``pytest -s`` or in the captured output of failures. The
criteria are run at their stated tolerances; a failing criterion fails here.
"""

import pytest
from mpmath import mp, mpc

from vclab import asymlab
from vclab.checkpoints import CHECKPOINTS, run_checkpoint
from vclab.cjones import TREFOIL


def _show(result):
    lines = [result.line()]
    lines += [f"    {'ok  ' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in result.clauses]
    return "\n".join(lines)


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CHECKPOINTS))
def test_criterion(number, capsys):
    result = run_checkpoint(number)
    report = _show(result)
    with capsys.disabled():
        print("\n" + report)
    assert result.passed, report


@pytest.mark.slow
def test_trefoil_growth_on_mirror_side():
    """Non-gating companion to criterion 8: the same quadratic growth rate
    is reproduced at -0.8+0.8i, where the sequence does grow exponentially."""
    with mp.workdps(50):
        report = asymlab.check_exp_regime(TREFOIL, mpc("-0.8", "0.8"), n_max=500, tol=1e-3)
    assert report.verdict, report.to_dict()
