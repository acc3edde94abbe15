""" This module runs parameter sweeps over the two ensembles and turns them
into plot-ready tables (:class:`pandas.DataFrame`).

A thermal sweep scans the dimensionless temperature ``inv_beta`` for each
coupling ``kappa / omega``; a quench sweep scans the scaled time
``tau = kappa t / (pi sqrt(nbar))`` for each ``(source, nbar)`` pair. Sign
changes of the ratio ``(S_{A+R} - S_R) / S_A`` are located with
:func:`find_crossovers`, which refines every change seen on the grid by
bisection on the underlying ensemble.

Every table also carries the companion ratio ``ratio_A = S(A+R|A) / S_R``,
which has the same sign structure with the roles of the two subsystems
exchanged. Both ratios are left empty on degenerate rows.

Tables are written as CSV (17 significant digits, ``.`` decimal separator,
``\\n`` line ends, empty field for an undefined ratio) or as a JSON list of
records. Rows are ordered by group, then by axis value, and do not depend on
the evaluation order, so re-running a sweep yields byte-identical output.

Example::

    spec = SweepSpec('thermal', kappa_ratios=[0.5, 2.5, 5])
    table = run_thermal_sweep(spec)
    crossings = find_crossovers(table, spec)
    write_table(table, 'fig1.csv')

Reference
---------
"""
from concurrent.futures import ThreadPoolExecutor
import json
import logging
import os

import numpy as np
import pandas as pd
from scipy.optimize import bisect
from scipy.signal import find_peaks

from .dynamics import (
    DEFAULT_N_CAP,
    GEOMETRIC,
    POISSON,
    QuenchConfig,
    SourceModel,
    dynamics_report,
)
from .exc import ArgumentError, TruncationError
from .infomeasures import BOUND_TOL, DEGENERATE, REGIME_TOL
from .spectrum import ModelParams, ground_level, level_table, negative_branch_set
from .thermal import DEFAULT_TRUNC_TOL, NEGATIVE_BRANCH_MARGIN, ThermalConfig, thermal_report


log = logging.getLogger(__name__)

THERMAL = 'thermal'
QUENCH = 'quench'
MODES = (THERMAL, QUENCH)
FORMATS = ('csv', 'json')

ERROR = 'error'
CROSSOVER_XTOL = 1e-6
# bracket half-width in units of xtol; bisection runs to xtol / 4
BRACKET_FRACTION = 0.45

ENTROPY_COLUMNS = ['S_joint', 'S_A', 'S_R', 'cond_R', 'cond_A', 'mutual']
REPORT_COLUMNS = ENTROPY_COLUMNS + ['ratio', 'ratio_A', 'regime']
THERMAL_COLUMNS = ['inv_beta', 'kappa_ratio'] + REPORT_COLUMNS
QUENCH_COLUMNS = ['source', 'nbar', 'tau', 'kt'] + REPORT_COLUMNS
CROSSOVER_FIELDS = ['axis', 'lower', 'upper', 'direction']
FLOAT_COLUMNS = set(ENTROPY_COLUMNS + [
    'ratio', 'ratio_A', 'inv_beta', 'kappa_ratio', 'nbar', 'tau', 'kt', 'axis', 'lower', 'upper',
    'energy', 'theta'])

DEFAULT_AXES = {
    THERMAL: (0.01, 4.0, 400),
    QUENCH: (1e-4, 3.0, 1000),
}


class SweepSpec(object):
    """
    Description of one sweep.

    Constructor arguments:

    ``mode``

        ``"thermal"`` or ``"quench"``.

    ``kappa_ratios``

        The couplings ``kappa / omega``. A thermal sweep has one group per
        value; a quench sweep uses the first value only (the ratio is
        ``kappa``-independent at resonance). Default is ``(0.5, 2.5, 5.0)``
        for thermal sweeps and ``(1.0,)`` for quench sweeps.

    ``axis_min``, ``axis_max``, ``points``

        The uniform grid on ``inv_beta`` (thermal) or ``tau`` (quench).
        Defaults are ``[0.01, 4]`` with 400 points and ``[1e-4, 3]`` with
        1000 points.

    ``sources``, ``nbars``

        Quench groups: every source kind (``"geometric"``, ``"poisson"``)
        crossed with every mean photon number. Defaults are both sources
        and ``(1, 5, 50)``.

    ``detuning``

        ``(omega - omega0) / omega``. Default is ``0``.

    ``trunc_tol``, ``n_cap``

        Truncation tolerance and ceiling, passed to the ensembles.

    ``bound_tol``, ``regime_tol``

        Tolerance overrides for the entropy reports.
    """

    def __init__(self, mode, kappa_ratios=None, axis_min=None, axis_max=None, points=None,
                 sources=(GEOMETRIC, POISSON), nbars=(1.0, 5.0, 50.0), detuning=0.0,
                 trunc_tol=DEFAULT_TRUNC_TOL, n_cap=DEFAULT_N_CAP,
                 bound_tol=BOUND_TOL, regime_tol=REGIME_TOL):
        if mode not in MODES:
            raise ArgumentError('mode must be one of {}, got {!r}'.format(MODES, mode))
        default_min, default_max, default_points = DEFAULT_AXES[mode]
        if kappa_ratios is None:
            kappa_ratios = (0.5, 2.5, 5.0) if mode == THERMAL else (1.0,)
        self.mode = mode
        self.kappa_ratios = sorted(float(k) for k in kappa_ratios)
        self.axis_min = float(default_min if axis_min is None else axis_min)
        self.axis_max = float(default_max if axis_max is None else axis_max)
        self.points = int(default_points if points is None else points)
        self.sources = list(sources)
        self.nbars = sorted(float(n) for n in nbars)
        self.detuning = float(detuning)
        self.trunc_tol = trunc_tol
        self.n_cap = n_cap
        self.bound_tol = bound_tol
        self.regime_tol = regime_tol
        self.check_ctor_args()

    def check_ctor_args(self):
        if self.points < 2:
            raise ArgumentError('a sweep needs at least 2 points')
        if not (np.isfinite(self.axis_min) and np.isfinite(self.axis_max)):
            raise ArgumentError('axis endpoints must be finite')
        if self.axis_min >= self.axis_max:
            raise ArgumentError('axis_min must be below axis_max')
        if self.mode == THERMAL and self.axis_min <= 0:
            raise ArgumentError('inv_beta must stay positive')
        if self.mode == QUENCH and self.axis_min < 0:
            raise ArgumentError('tau must stay nonnegative')
        if not self.kappa_ratios or min(self.kappa_ratios) < 0:
            raise ArgumentError('kappa ratios must be nonnegative')
        if self.mode == QUENCH:
            if not self.sources or any(s not in (GEOMETRIC, POISSON) for s in self.sources):
                raise ArgumentError('sources must be taken from {!r}'.format((GEOMETRIC, POISSON)))
            if not self.nbars or min(self.nbars) <= 0:
                raise ArgumentError('mean photon numbers must be positive')
            if self.kappa_ratios[0] <= 0:
                raise ArgumentError('a quench sweep needs kappa > 0')
        if self.detuning >= 1:
            raise ArgumentError('detuning must be below 1 so that omega0 > 0')

    @property
    def axis_name(self):
        return 'inv_beta' if self.mode == THERMAL else 'tau'

    @property
    def group_columns(self):
        return ['kappa_ratio'] if self.mode == THERMAL else ['source', 'nbar']

    def axis(self):
        return np.linspace(self.axis_min, self.axis_max, self.points)

    def params_for(self, kappa_ratio):
        params = ModelParams(omega=1.0, omega0=1.0 - self.detuning, kappa=kappa_ratio)
        params.warn_if_detuned()
        return params

    def groups(self):
        """ The group keys, in output order. """
        if self.mode == THERMAL:
            return [(k,) for k in self.kappa_ratios]
        return [(source, nbar) for source in self.sources for nbar in self.nbars]

    def evaluator(self, group):
        """
        A function mapping an axis value of ``group`` to its
        :class:`jcentropy.infomeasures.EntropyReport`.
        """
        tols = dict(bound_tol=self.bound_tol, regime_tol=self.regime_tol)
        if self.mode == THERMAL:
            params = self.params_for(group[0])

            def evaluate(inv_beta):
                cfg = ThermalConfig(params, inv_beta, trunc_tol=self.trunc_tol, n_cap=self.n_cap)
                return thermal_report(cfg, **tols)
            return evaluate

        source, nbar = group
        cfg = QuenchConfig(self.params_for(self.kappa_ratios[0]), SourceModel(source, nbar=nbar),
                           trunc_tol=self.trunc_tol, n_cap=self.n_cap)

        def evaluate(tau):
            return dynamics_report(cfg, cfg.time_from_tau(tau), **tols)
        evaluate.config = cfg
        return evaluate

    def __repr__(self):
        return "<SweepSpec %s %s=[%r, %r] points=%d>" % (
            self.mode, self.axis_name, self.axis_min, self.axis_max, self.points)


class CrossoverRecord(object):
    """
    A sign change of the ratio along the sweep axis: ``axis`` is the
    refined location, ``[lower, upper]`` a bracket no wider than the
    requested tolerance, and ``direction`` is ``"down"`` (nonnegative to
    negative with increasing axis) or ``"up"``.
    """

    def __init__(self, group, axis, lower, upper, direction):
        self.group = tuple(group)
        self.axis = axis
        self.lower = lower
        self.upper = upper
        self.direction = direction

    def __repr__(self):
        return "<CrossoverRecord %r axis=%r %s>" % (self.group, self.axis, self.direction)


def _worker_count():
    try:
        threads = int(os.environ.get('JC_THREADS', 0))
    except ValueError:
        raise ArgumentError('JC_THREADS must be an integer')
    if threads > 0:
        return threads
    return min(32, os.cpu_count() or 1)


def _evaluate_group(evaluate, axis):
    def safe(value):
        try:
            return evaluate(value)
        except TruncationError as e:
            log.warning('error row at %r: %s', value, e)
            return e

    workers = _worker_count()
    if workers == 1:
        return [safe(value) for value in axis]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(safe, axis))


def _report_row(report):
    if isinstance(report, Exception):
        row = dict.fromkeys(REPORT_COLUMNS, np.nan)
        row['regime'] = ERROR
        return row
    row = report.as_dict()
    for column in ('ratio', 'ratio_A'):
        if report.regime == DEGENERATE or row[column] is None:
            row[column] = np.nan
    return row


def _run(spec, mode, columns, prefix):
    if spec.mode != mode:
        raise ArgumentError('expected a {} sweep spec, got {!r}'.format(mode, spec.mode))
    axis = spec.axis()
    rows = []
    for group in spec.groups():
        log.info('%s sweep: group %r, %d points', mode, group, axis.size)
        evaluate = spec.evaluator(group)
        for value, report in zip(axis, _evaluate_group(evaluate, axis)):
            row = prefix(group, value, evaluate)
            row.update(_report_row(report))
            rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def run_thermal_sweep(spec):
    """
    One row per ``(kappa_ratio, inv_beta)``, ordered by ``kappa_ratio`` then
    ``inv_beta``, with columns ``THERMAL_COLUMNS``. Points whose truncation
    exceeds the cap become ``error`` rows and the run continues.
    """
    def prefix(group, value, evaluate):
        return {'inv_beta': value, 'kappa_ratio': group[0]}
    return _run(spec, THERMAL, THERMAL_COLUMNS, prefix)


def run_quench_sweep(spec):
    """
    One row per ``(source, nbar, tau)`` with columns ``QUENCH_COLUMNS``;
    ``kt`` is the raw ``kappa t`` of the row. The ``S_joint`` column is
    constant within a ``(source, nbar)`` group.
    """
    def prefix(group, value, evaluate):
        cfg = evaluate.config
        return {'source': group[0], 'nbar': group[1], 'tau': value,
                'kt': cfg.params.kappa * cfg.time_from_tau(value)}
    return _run(spec, QUENCH, QUENCH_COLUMNS, prefix)


def run_sweep(spec):
    if spec.mode == THERMAL:
        return run_thermal_sweep(spec)
    return run_quench_sweep(spec)


def _valid_rows(table):
    valid = table[(table['regime'] != DEGENERATE) & (table['regime'] != ERROR)]
    return valid[valid['ratio'].notna()]


def _group_frames(table, group_columns):
    for key, frame in table.groupby(group_columns, sort=False):
        if not isinstance(key, tuple):
            key = (key,)
        yield key, frame


def find_crossovers(table, spec, xtol=CROSSOVER_XTOL):
    """
    Every sign change of ``ratio`` between adjacent valid (neither
    degenerate nor error) rows, refined by bisection to ``xtol``. Returns
    :class:`CrossoverRecord` objects sorted by group then axis.

    The bisection runs on ``S(A+R|R)``, which has the sign of the ratio
    wherever ``S_A > 0`` and stays defined where the ratio does not.
    """
    axis_name = spec.axis_name
    records = []
    for group, frame in _group_frames(table, spec.group_columns):
        frame = _valid_rows(frame).sort_values(axis_name, kind='mergesort')
        if len(frame) < 2:
            continue
        xs = frame[axis_name].to_numpy()
        negative = frame['ratio'].to_numpy() < 0
        changes = np.flatnonzero(negative[1:] != negative[:-1])
        if not changes.size:
            continue
        evaluate = spec.evaluator(group)

        def f(x):
            return evaluate(x).cond_given_rad

        for i in changes:
            a, b = xs[i], xs[i + 1]
            fa, fb = f(a), f(b)
            if fa == 0:
                root = a
            elif fb == 0:
                root = b
            elif fa * fb < 0:
                root = bisect(f, a, b, xtol=xtol / 4)
            else:
                log.warning('no sign change of S(A+R|R) on [%r, %r] in group %r', a, b, group)
                continue
            direction = 'down' if negative[i + 1] else 'up'
            half = BRACKET_FRACTION * xtol
            records.append(CrossoverRecord(
                group, root, max(a, root - half), min(b, root + half), direction))
    return records


def crossover_table(records, spec):
    """ The records as a table with the group columns of ``spec``. """
    rows = []
    for record in records:
        row = dict(zip(spec.group_columns, record.group))
        row.update(axis=record.axis, lower=record.lower, upper=record.upper,
                   direction=record.direction)
        rows.append(row)
    return pd.DataFrame(rows, columns=spec.group_columns + CROSSOVER_FIELDS)


def count_negative_intervals(table, axis_name, where=None):
    """
    Number of maximal runs of consecutive valid rows with a negative ratio.
    ``where`` optionally maps column names to the values selecting one
    group, e.g. ``{'source': 'geometric', 'nbar': 1.0}``.
    """
    if where:
        for column, value in where.items():
            table = table[table[column] == value]
    negative = _valid_rows(table).sort_values(axis_name, kind='mergesort')['ratio'].to_numpy() < 0
    if not negative.size:
        return 0
    return int(negative[0]) + int(np.count_nonzero(negative[1:] & ~negative[:-1]))


def count_extrema(values, prominence):
    """
    Number of local maxima and minima of ``values`` standing out by at
    least ``prominence``.
    """
    values = np.asarray(values, dtype=float)
    peaks, _ = find_peaks(values, prominence=prominence)
    troughs, _ = find_peaks(-values, prominence=prominence)
    return int(peaks.size + troughs.size)


def spectrum_listing(params, n_max):
    """
    The dressed levels up to ``n_max`` as a table (``n``, ``s``,
    ``energy``, ``theta``, ``negative``) and a summary dict holding the
    negative-branch set and the ground level.
    """
    levels = level_table(params, n_max)
    table = pd.DataFrame(
        [(lvl.n, lvl.s, lvl.energy, lvl.theta, lvl.energy < 0) for lvl in levels],
        columns=['n', 's', 'energy', 'theta', 'negative'])
    negative = negative_branch_set(params, n_max)
    scan = negative_branch_set(params, max(n_max, DEFAULT_N_CAP))
    ground = ground_level(params, (scan[-1] if scan else 0) + NEGATIVE_BRANCH_MARGIN)
    summary = {
        'negative_branch': negative,
        'ground': [lvl.label for lvl in ground.levels],
        'ground_energy': ground.energy,
    }
    return table, summary


def to_bits(table):
    """ A copy of ``table`` with entropy columns converted from nats to bits. """
    table = table.copy()
    columns = [c for c in ENTROPY_COLUMNS if c in table.columns]
    table[columns] = table[columns] / np.log(2)
    return table


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError('cannot serialize {!r}'.format(value))


def write_table(table, out, fmt='csv'):
    """
    Write ``table`` to ``out`` (a path or a text stream) as CSV or JSON.
    """
    if fmt not in FORMATS:
        raise ArgumentError('format must be one of {}, got {!r}'.format(FORMATS, fmt))
    if fmt == 'csv':
        table.to_csv(out, index=False, float_format='%.17g', lineterminator='\n', na_rep='')
        return
    records = [
        {k: (None if isinstance(v, float) and np.isnan(v) else v) for k, v in row.items()}
        for row in table.to_dict(orient='records')
    ]
    text = json.dumps(records, indent=2, default=_json_default) + '\n'
    if hasattr(out, 'write'):
        out.write(text)
    else:
        with open(out, 'w', newline='\n') as fp:
            fp.write(text)


def read_table(path):
    """ Read a CSV table written by :func:`write_table`. """
    table = pd.read_csv(path, float_precision='round_trip', keep_default_na=False,
                        na_values=[''])
    # integral floats are written without a fraction
    for column in table.columns:
        if column in FLOAT_COLUMNS:
            table[column] = table[column].astype(float)
    return table
