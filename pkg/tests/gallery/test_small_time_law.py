"""
Small-time law
==============

Right after the quench the ratio approaches zero from below, logarithmically
in ``kappa t``. Compare the full evaluation with the leading-order law for both
built-in sources.
"""
import pytest

from jcentropy.dynamics import QuenchConfig, SourceModel, dynamics_report, small_time_ratio
from jcentropy.spectrum import ModelParams


@pytest.mark.parametrize('source', [SourceModel.geometric(1.0), SourceModel.poisson(1.0)])
def test_small_time_law(source):
    cfg = QuenchConfig(ModelParams.resonant(1.0), source)
    ratios = []
    for t in (1e-2, 1e-3, 1e-4):
        exact = dynamics_report(cfg, t).ratio
        assert exact == pytest.approx(small_time_ratio(cfg, t), rel=1e-3)
        ratios.append(exact)
    assert ratios[0] < ratios[1] < ratios[2] < 0


def test_geometric_value():
    cfg = QuenchConfig(ModelParams.resonant(1.0), SourceModel.geometric(1.0))
    assert dynamics_report(cfg, 1e-3).ratio == pytest.approx(-0.04908, abs=1e-4)
