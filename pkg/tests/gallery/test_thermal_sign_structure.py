"""
Thermal sign structure
======================

Sweep the equilibrium ensemble over the temperature for a weak and two strong
couplings. With weak coupling the ground state is the uncoupled singlet and the
ratio stays nonnegative; with strong coupling an entangled dressed level is the
ground state and a supercorrelated window opens at low temperature, closing
again at a single crossover.
"""
import numpy as np
import pytest

from jcentropy.infomeasures import DEGENERATE
from jcentropy.sweep import SweepSpec, count_negative_intervals, find_crossovers, run_sweep


@pytest.fixture(scope='module')
def sweep():
    spec = SweepSpec('thermal', kappa_ratios=[0.5, 2.5, 5.0])
    return spec, run_sweep(spec)


def group(table, kappa_ratio):
    return table[table['kappa_ratio'] == kappa_ratio]


class TestThermalSignStructure():

    def test_weak_coupling_nonnegative(self, sweep):
        _, table = sweep
        weak = group(table, 0.5)
        ratio = weak['ratio'].dropna()
        assert len(ratio) > 0
        assert ratio.min() >= -1e-9
        assert count_negative_intervals(table, 'inv_beta', {'kappa_ratio': 0.5}) == 0

    def test_weak_coupling_cold_rows_degenerate(self, sweep):
        _, table = sweep
        assert group(table, 0.5)['regime'].iloc[0] == DEGENERATE

    @pytest.mark.parametrize('kappa_ratio', [2.5, 5.0])
    def test_strong_coupling_supercorrelated(self, sweep, kappa_ratio):
        _, table = sweep
        strong = group(table, kappa_ratio)
        assert strong['ratio'].iloc[0] < -0.5
        assert count_negative_intervals(table, 'inv_beta', {'kappa_ratio': kappa_ratio}) >= 1

    def test_crossovers(self, sweep):
        spec, table = sweep
        records = find_crossovers(table, spec)
        by_group = {}
        for record in records:
            by_group.setdefault(record.group, []).append(record)
        assert (0.5,) not in by_group
        for key, low, high in [((2.5,), 0.5, 1.5), ((5.0,), 1.5, 3.0)]:
            first = by_group[key][0]
            assert first.direction == 'up'
            assert low < first.axis < high
            assert first.upper - first.lower <= 1e-6

    def test_hot_limit_approaches_classical(self, sweep):
        _, table = sweep
        hot = table[np.isclose(table['inv_beta'], 4.0)]
        assert (hot['ratio'] > 0).all()
