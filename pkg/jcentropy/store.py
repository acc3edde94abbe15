""" This module keeps sweep tables in a relational database through
SQLAlchemy Core, so that long sweeps can be computed once and re-plotted
later.

Two tables are used: ``jc_sweep`` holds one row per stored sweep (mode,
axis name, an optional label and the sweep settings as JSON), and
``jc_sweep_point`` one row per table row. Regime labels are stored through
the :class:`Regime` column type, which refuses labels it does not know.

Example::

    from sqlalchemy import create_engine

    engine = create_engine('sqlite:///sweeps.db')
    create_schema(engine)
    sweep_id = save_sweep(engine, table, spec, label='fig1')
    table = load_sweep(engine, sweep_id)

Reference
---------
"""
import logging

import numpy as np
import pandas as pd
from sqlalchemy import (
    JSON,
    Column,
    Float,
    ForeignKey,
    Integer,
    MetaData,
    String,
    Table,
    event,
    func,
    select,
)
from sqlalchemy.types import TypeDecorator

from .exc import ArgumentError
from .infomeasures import REGIMES
from .sweep import ERROR, QUENCH_COLUMNS, THERMAL, THERMAL_COLUMNS


log = logging.getLogger(__name__)

STORED_REGIMES = REGIMES + (ERROR,)


class Regime(TypeDecorator):
    """
    A string column holding a regime label.

    Binding a value outside of ``STORED_REGIMES`` raises
    :class:`jcentropy.exc.ArgumentError`.
    """

    impl = String(32)
    cache_ok = True

    def process_bind_param(self, value, dialect):
        if value is not None and value not in STORED_REGIMES:
            raise ArgumentError('unknown regime label {!r}'.format(value))
        return value

    def process_result_value(self, value, dialect):
        return value


metadata = MetaData()

sweep_table = Table(
    'jc_sweep', metadata,
    Column('id', Integer, primary_key=True),
    Column('mode', String(16), nullable=False),
    Column('axis_name', String(16), nullable=False),
    Column('label', String(128)),
    Column('settings', JSON, nullable=False),
)

point_table = Table(
    'jc_sweep_point', metadata,
    Column('id', Integer, primary_key=True),
    Column('sweep_id', Integer, ForeignKey('jc_sweep.id', ondelete='CASCADE'),
           nullable=False, index=True),
    Column('row_index', Integer, nullable=False),
    Column('kappa_ratio', Float),
    Column('source', String(16)),
    Column('nbar', Float),
    Column('axis', Float, nullable=False),
    Column('kt', Float),
    Column('s_joint', Float),
    Column('s_atom', Float),
    Column('s_rad', Float),
    Column('cond_rad', Float),
    Column('cond_atom', Float),
    Column('mutual', Float),
    Column('ratio', Float),
    Column('ratio_atom', Float),
    Column('regime', Regime, nullable=False),
)

_REPORT_FIELDS = [
    ('S_joint', 's_joint'),
    ('S_A', 's_atom'),
    ('S_R', 's_rad'),
    ('cond_R', 'cond_rad'),
    ('cond_A', 'cond_atom'),
    ('mutual', 'mutual'),
    ('ratio', 'ratio'),
    ('ratio_A', 'ratio_atom'),
]


def _sqlite_foreign_keys(dbapi_connection, connection_record):
    cursor = dbapi_connection.cursor()
    cursor.execute('PRAGMA foreign_keys=ON')
    cursor.close()


def create_schema(engine):
    """
    Create the sweep tables if they do not exist yet.

    On SQLite this also turns on foreign key enforcement for the
    connections ``engine`` opens from now on; other engines in the process
    are left alone.
    """
    # sqlite ignores ON DELETE CASCADE unless asked
    if engine.dialect.name == 'sqlite' and not event.contains(
            engine, 'connect', _sqlite_foreign_keys):
        event.listen(engine, 'connect', _sqlite_foreign_keys)
    metadata.create_all(engine)


def _nullable(value):
    if value is None:
        return None
    if isinstance(value, float) and np.isnan(value):
        return None
    if isinstance(value, np.generic):
        return value.item()
    return value


def _settings(spec):
    return {
        'mode': spec.mode,
        'kappa_ratios': list(spec.kappa_ratios),
        'axis_min': spec.axis_min,
        'axis_max': spec.axis_max,
        'points': spec.points,
        'sources': list(spec.sources),
        'nbars': list(spec.nbars),
        'detuning': spec.detuning,
        'trunc_tol': spec.trunc_tol,
        'n_cap': spec.n_cap,
    }


def save_sweep(engine, table, spec, label=None):
    """
    Store a table produced by :func:`jcentropy.sweep.run_sweep` and return
    the new sweep id.
    """
    axis_name = spec.axis_name
    if axis_name not in table.columns:
        raise ArgumentError('table has no {!r} column'.format(axis_name))
    unknown = set(table['regime']) - set(STORED_REGIMES)
    if unknown:
        raise ArgumentError('unknown regime labels {!r}'.format(sorted(unknown)))

    with engine.begin() as conn:
        result = conn.execute(sweep_table.insert().values(
            mode=spec.mode, axis_name=axis_name, label=label, settings=_settings(spec)))
        sweep_id = result.inserted_primary_key[0]
        rows = []
        for index, record in enumerate(table.to_dict(orient='records')):
            row = {
                'sweep_id': sweep_id,
                'row_index': index,
                'kappa_ratio': _nullable(record.get('kappa_ratio')),
                'source': record.get('source'),
                'nbar': _nullable(record.get('nbar')),
                'axis': _nullable(record[axis_name]),
                'kt': _nullable(record.get('kt')),
                'regime': record['regime'],
            }
            for column, field in _REPORT_FIELDS:
                row[field] = _nullable(record[column])
            rows.append(row)
        if rows:
            conn.execute(point_table.insert(), rows)
    log.info('stored %s sweep %d with %d rows', spec.mode, sweep_id, len(rows))
    return sweep_id


def load_sweep(engine, sweep_id):
    """
    The table of sweep ``sweep_id`` with the columns and row order it was
    stored with.
    """
    with engine.connect() as conn:
        sweep = conn.execute(
            select(sweep_table).where(sweep_table.c.id == sweep_id)).mappings().first()
        if sweep is None:
            raise ArgumentError('no sweep with id {!r}'.format(sweep_id))
        points = conn.execute(
            select(point_table)
            .where(point_table.c.sweep_id == sweep_id)
            .order_by(point_table.c.row_index)).mappings().all()

    rows = []
    for point in points:
        row = {sweep['axis_name']: point['axis']}
        if sweep['mode'] == THERMAL:
            row['kappa_ratio'] = point['kappa_ratio']
        else:
            row.update(source=point['source'], nbar=point['nbar'], kt=point['kt'])
        for column, field in _REPORT_FIELDS:
            row[column] = np.nan if point[field] is None else point[field]
        row['regime'] = point['regime']
        rows.append(row)
    columns = THERMAL_COLUMNS if sweep['mode'] == THERMAL else QUENCH_COLUMNS
    return pd.DataFrame(rows, columns=columns)


def list_sweeps(engine):
    """ One row per stored sweep: ``id``, ``mode``, ``label``, ``points``. """
    count = func.count(point_table.c.id).label('points')
    query = (
        select(sweep_table.c.id, sweep_table.c.mode, sweep_table.c.label, count)
        .select_from(sweep_table.outerjoin(point_table))
        .group_by(sweep_table.c.id, sweep_table.c.mode, sweep_table.c.label)
        .order_by(sweep_table.c.id)
    )
    with engine.connect() as conn:
        rows = conn.execute(query).all()
    return pd.DataFrame([tuple(r) for r in rows], columns=['id', 'mode', 'label', 'points'])


def delete_sweep(engine, sweep_id):
    """ Remove sweep ``sweep_id``; its points go with it. """
    with engine.begin() as conn:
        # explicit, for connections opened before create_schema
        conn.execute(point_table.delete().where(point_table.c.sweep_id == sweep_id))
        deleted = conn.execute(
            sweep_table.delete().where(sweep_table.c.id == sweep_id)).rowcount
    if not deleted:
        raise ArgumentError('no sweep with id {!r}'.format(sweep_id))
    log.info('deleted sweep %d', sweep_id)
