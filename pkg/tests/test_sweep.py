import io
import json

import numpy as np
import pandas as pd
import pytest

from jcentropy.exc import ArgumentError
from jcentropy.infomeasures import DEGENERATE
from jcentropy.spectrum import ModelParams
from jcentropy.sweep import (
    ERROR,
    QUENCH_COLUMNS,
    THERMAL_COLUMNS,
    SweepSpec,
    count_extrema,
    count_negative_intervals,
    crossover_table,
    find_crossovers,
    read_table,
    run_quench_sweep,
    run_sweep,
    run_thermal_sweep,
    spectrum_listing,
    to_bits,
    write_table,
)


class FakeReport(object):

    def __init__(self, value):
        self.cond_given_rad = value


class PiecewiseLinearSpec(object):
    """ Stands in for a sweep spec whose ratio interpolates a table. """

    axis_name = 'inv_beta'
    group_columns = ['kappa_ratio']

    def __init__(self, xs, ys):
        self.xs = xs
        self.ys = ys

    def evaluator(self, group):
        return lambda x: FakeReport(float(np.interp(x, self.xs, self.ys)))


def synthetic_table(ratios, regimes=None):
    xs = np.linspace(0.0, 1.0, len(ratios))
    if regimes is None:
        regimes = ['classically_correlated'] * len(ratios)
    return pd.DataFrame({
        'inv_beta': xs,
        'kappa_ratio': 1.0,
        'ratio': ratios,
        'regime': regimes,
    })


@pytest.fixture
def thermal_spec():
    return SweepSpec('thermal', kappa_ratios=[2.5], axis_min=0.5, axis_max=2.0, points=5)


@pytest.fixture
def quench_spec():
    return SweepSpec('quench', sources=['geometric'], nbars=[1.0],
                     axis_min=0.0, axis_max=1.0, points=11)


class TestSweepSpec():

    def test_defaults(self):
        spec = SweepSpec('thermal')
        assert spec.kappa_ratios == [0.5, 2.5, 5.0]
        assert (spec.axis_min, spec.axis_max, spec.points) == (0.01, 4.0, 400)
        spec = SweepSpec('quench')
        assert (spec.axis_min, spec.axis_max, spec.points) == (1e-4, 3.0, 1000)
        assert spec.groups()[0] == ('geometric', 1.0)
        assert len(spec.groups()) == 6

    def test_kappa_sorted(self):
        spec = SweepSpec('thermal', kappa_ratios=[5, 0.5, 2.5])
        assert spec.groups() == [(0.5,), (2.5,), (5.0,)]

    @pytest.mark.parametrize('kwargs', [
        {'mode': 'ground'},
        {'mode': 'thermal', 'points': 1},
        {'mode': 'thermal', 'axis_min': 0.0},
        {'mode': 'thermal', 'axis_min': 2.0, 'axis_max': 1.0},
        {'mode': 'thermal', 'axis_max': float('inf')},
        {'mode': 'thermal', 'kappa_ratios': [-1.0]},
        {'mode': 'thermal', 'detuning': 1.0},
        {'mode': 'quench', 'axis_min': -1.0},
        {'mode': 'quench', 'sources': ['thermal']},
        {'mode': 'quench', 'nbars': [0.0]},
        {'mode': 'quench', 'kappa_ratios': [0.0]},
    ])
    def test_check_ctor_args(self, kwargs):
        with pytest.raises(ArgumentError):
            SweepSpec(**kwargs)

    def test_detuned_warns(self):
        spec = SweepSpec('thermal', kappa_ratios=[1.0], detuning=0.1)
        with pytest.warns(UserWarning):
            spec.params_for(1.0)


class TestThermalSweep():

    def test_table(self, thermal_spec):
        table = run_thermal_sweep(thermal_spec)
        assert list(table.columns) == THERMAL_COLUMNS
        assert len(table) == 5
        np.testing.assert_allclose(table['inv_beta'], np.linspace(0.5, 2.0, 5))

    def test_ordering(self):
        spec = SweepSpec('thermal', kappa_ratios=[2.5, 0.5], axis_min=0.5, axis_max=1.0,
                         points=3)
        table = run_thermal_sweep(spec)
        assert list(table['kappa_ratio']) == [0.5] * 3 + [2.5] * 3
        assert list(table['inv_beta']) == [0.5, 0.75, 1.0] * 2

    def test_degenerate(self):
        spec = SweepSpec('thermal', kappa_ratios=[0.5], axis_min=0.01, axis_max=0.02, points=2)
        table = run_thermal_sweep(spec)
        assert len(table) == 2
        assert list(table['regime']) == [DEGENERATE, DEGENERATE]
        assert table['ratio'].isna().all()

    def test_error_rows(self):
        spec = SweepSpec('thermal', kappa_ratios=[5.0], axis_min=0.5, axis_max=1.0,
                         points=3, n_cap=20)
        table = run_thermal_sweep(spec)
        assert len(table) == 3
        assert list(table['regime']) == [ERROR] * 3
        assert table['S_joint'].isna().all()

    def test_wrong_mode(self, quench_spec):
        with pytest.raises(ArgumentError):
            run_thermal_sweep(quench_spec)

    def test_threads(self, thermal_spec, monkeypatch):
        monkeypatch.setenv('JC_THREADS', '1')
        serial = run_thermal_sweep(thermal_spec)
        monkeypatch.setenv('JC_THREADS', '4')
        parallel = run_thermal_sweep(thermal_spec)
        pd.testing.assert_frame_equal(serial, parallel, check_exact=True)

    def test_bad_threads(self, thermal_spec, monkeypatch):
        monkeypatch.setenv('JC_THREADS', 'many')
        with pytest.raises(ArgumentError):
            run_thermal_sweep(thermal_spec)


class TestQuenchSweep():

    def test_table(self, quench_spec):
        table = run_quench_sweep(quench_spec)
        assert list(table.columns) == QUENCH_COLUMNS
        assert len(table) == 11
        assert table['kt'].iloc[-1] == pytest.approx(np.pi, rel=1e-15)
        assert table['regime'].iloc[0] == DEGENERATE
        assert np.isnan(table['ratio'].iloc[0])

    def test_joint_entropy_constant(self):
        spec = SweepSpec('quench', sources=['geometric', 'poisson'], nbars=[1.0, 5.0],
                         axis_min=0.01, axis_max=3.0, points=30)
        table = run_quench_sweep(spec)
        for _, group in table.groupby(['source', 'nbar']):
            assert group['S_joint'].std() < 1e-9
        assert len(table) == 120

    def test_run_sweep_dispatch(self, quench_spec):
        assert list(run_sweep(quench_spec).columns) == QUENCH_COLUMNS


class TestFindCrossovers():

    def test_monotone(self):
        table = synthetic_table([0.5, 0.4, 0.3, 0.2])
        spec = PiecewiseLinearSpec(table['inv_beta'], table['ratio'])
        assert find_crossovers(table, spec) == []

    def test_two_changes(self):
        table = synthetic_table([0.5, -0.5, 0.5])
        spec = PiecewiseLinearSpec(table['inv_beta'], table['ratio'])
        records = find_crossovers(table, spec)
        assert [r.direction for r in records] == ['down', 'up']
        assert records[0].axis == pytest.approx(0.25, abs=1e-6)
        assert records[1].axis == pytest.approx(0.75, abs=1e-6)
        for record in records:
            assert record.lower <= record.axis <= record.upper
            assert record.upper - record.lower <= 1e-6

    def test_degenerate_rows_skipped(self):
        table = synthetic_table([0.5, np.nan, 0.5], regimes=['x', DEGENERATE, 'x'])
        spec = PiecewiseLinearSpec(table['inv_beta'], [0.5, -0.5, 0.5])
        assert find_crossovers(table, spec) == []

    def test_thermal(self):
        spec = SweepSpec('thermal', kappa_ratios=[2.5], axis_min=0.05, axis_max=4.0, points=40)
        records = find_crossovers(run_thermal_sweep(spec), spec)
        assert len(records) >= 1
        evaluate = spec.evaluator((2.5,))
        for record in records:
            assert record.upper - record.lower <= 1e-6
            lower = evaluate(record.lower).cond_given_rad
            upper = evaluate(record.upper).cond_given_rad
            assert lower * upper < 0

    def test_grid_refinement(self):
        coarse = SweepSpec('thermal', kappa_ratios=[5.0], axis_min=0.05, axis_max=4.0,
                           points=40)
        fine = SweepSpec('thermal', kappa_ratios=[5.0], axis_min=0.05, axis_max=4.0,
                         points=79)
        first_coarse = find_crossovers(run_thermal_sweep(coarse), coarse)[0]
        first_fine = find_crossovers(run_thermal_sweep(fine), fine)[0]
        assert first_coarse.axis == pytest.approx(first_fine.axis, abs=1e-6)

    def test_crossover_table(self):
        table = synthetic_table([0.5, -0.5, 0.5])
        spec = PiecewiseLinearSpec(table['inv_beta'], table['ratio'])
        frame = crossover_table(find_crossovers(table, spec), spec)
        assert list(frame.columns) == ['kappa_ratio', 'axis', 'lower', 'upper', 'direction']
        assert list(frame['direction']) == ['down', 'up']


class TestCounting():

    def test_negative_intervals(self):
        table = synthetic_table([0.5, -0.5, -0.2, 0.5, -0.1, 0.3])
        assert count_negative_intervals(table, 'inv_beta') == 2

    def test_leading_interval(self):
        table = synthetic_table([-0.5, -0.5, 0.5])
        assert count_negative_intervals(table, 'inv_beta') == 1

    def test_where(self):
        table = pd.concat([
            synthetic_table([-0.5, 0.5]).assign(kappa_ratio=1.0),
            synthetic_table([0.5, 0.5]).assign(kappa_ratio=2.0),
        ])
        assert count_negative_intervals(table, 'inv_beta', where={'kappa_ratio': 2.0}) == 0

    def test_extrema(self):
        xs = np.linspace(0, 4 * np.pi, 400)
        assert count_extrema(np.sin(xs), prominence=0.5) == 4
        assert count_extrema(np.sin(xs), prominence=5.0) == 0


class TestSpectrumListing():

    def test_moderate_coupling(self):
        table, summary = spectrum_listing(ModelParams.resonant(2.5), 50)
        assert len(table) == 102
        assert list(table.columns) == ['n', 's', 'energy', 'theta', 'negative']
        assert summary['negative_branch'] == list(range(7))
        assert summary['ground'] == ['phi(1,2)']
        assert table['negative'].sum() == 7

    def test_weak_coupling(self):
        _, summary = spectrum_listing(ModelParams.resonant(0.5), 50)
        assert summary['negative_branch'] == []
        assert summary['ground'] == ['|0,g>']
        assert summary['ground_energy'] == -0.5


class TestOutput():

    def test_csv_round_trip(self, thermal_spec, tmpdir):
        table = run_thermal_sweep(thermal_spec)
        path = str(tmpdir.join('thermal.csv'))
        write_table(table, path)
        pd.testing.assert_frame_equal(read_table(path), table, check_exact=True)

    def test_csv_quench_round_trip(self, quench_spec, tmpdir):
        table = run_quench_sweep(quench_spec)
        path = str(tmpdir.join('quench.csv'))
        write_table(table, path)
        pd.testing.assert_frame_equal(read_table(path), table, check_exact=True)

    def test_csv_format(self, quench_spec):
        out = io.StringIO()
        write_table(run_quench_sweep(quench_spec), out)
        lines = out.getvalue().split('\n')
        assert lines[0] == ','.join(QUENCH_COLUMNS)
        assert '\r' not in out.getvalue()
        # the t = 0 row has an undefined ratio
        assert lines[1].split(',')[-2] == ''

    def test_deterministic(self, thermal_spec):
        first, second = io.StringIO(), io.StringIO()
        write_table(run_thermal_sweep(thermal_spec), first)
        write_table(run_thermal_sweep(thermal_spec), second)
        assert first.getvalue() == second.getvalue()

    def test_json(self, quench_spec):
        out = io.StringIO()
        table = run_quench_sweep(quench_spec)
        write_table(table, out, 'json')
        records = json.loads(out.getvalue())
        assert len(records) == 11
        assert records[0]['ratio'] is None
        assert records[0]['ratio_A'] is None
        assert records[5]['ratio_A'] == table['ratio_A'].iloc[5]
        assert records[0]['regime'] == DEGENERATE
        assert records[5]['S_A'] == table['S_A'].iloc[5]

    def test_bad_format(self, thermal_spec):
        with pytest.raises(ArgumentError):
            write_table(run_thermal_sweep(thermal_spec), io.StringIO(), 'xml')

    def test_bits(self, thermal_spec):
        table = run_thermal_sweep(thermal_spec)
        bits = to_bits(table)
        np.testing.assert_allclose(bits['S_A'], table['S_A'] / np.log(2))
        pd.testing.assert_series_equal(bits['ratio'], table['ratio'])
