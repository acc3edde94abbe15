""" The ``jc-entropy`` command.

::

    jc-entropy [-v] {thermal,quench,spectrum,crossovers} [options]

Sweeps and listings are written to ``--out`` (stdout by default) as CSV or
JSON; log messages go to stderr. The exit status is 0 on success, 2 for an
invalid argument and 3 when an internal consistency check fails.

Reference
---------
"""
import argparse
import json
import logging
import sys

from .exc import ArgumentError, NumericError
from .spectrum import ModelParams
from .sweep import (
    QUENCH,
    THERMAL,
    SweepSpec,
    crossover_table,
    find_crossovers,
    run_sweep,
    spectrum_listing,
    to_bits,
    write_table,
)
from .thermal import DEFAULT_TRUNC_TOL


log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_NUMERIC = 3


def _float_list(text):
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected a comma separated list of numbers, '
                                         'got {!r}'.format(text))


def _source_list(text):
    return [item.strip() for item in text.split(',') if item.strip()]


def _add_common(parser):
    parser.add_argument('--tol', type=float, default=DEFAULT_TRUNC_TOL,
                        help='truncation tolerance (default: %(default)g)')
    parser.add_argument('--format', choices=('csv', 'json'), default='csv')
    parser.add_argument('--out', help='output path (default: stdout)')
    parser.add_argument('--db', help='SQLAlchemy URL; also store the sweep there')
    parser.add_argument('--bits', action='store_true',
                        help='write entropies in bits instead of nats')


def _add_thermal(parser):
    parser.add_argument('--kappa-ratio', type=_float_list, default=[0.5, 2.5, 5.0])
    parser.add_argument('--inv-beta-min', type=float, default=0.01)
    parser.add_argument('--inv-beta-max', type=float, default=4.0)
    parser.add_argument('--points', type=int, default=400)
    parser.add_argument('--detuning', type=float, default=0.0,
                        help='(omega - omega0) / omega')


def _add_quench(parser):
    parser.add_argument('--source', type=_source_list, default=['geometric', 'poisson'])
    parser.add_argument('--nbar', type=_float_list, default=[1.0, 5.0, 50.0])
    parser.add_argument('--tau-min', type=float, default=1e-4)
    parser.add_argument('--tau-max', type=float, default=3.0)
    parser.add_argument('--points', type=int, default=1000)
    parser.add_argument('--kappa-ratio', type=_float_list, default=[1.0])


def build_parser():
    parser = argparse.ArgumentParser(
        prog='jc-entropy',
        description='Entropies of the Jaynes-Cummings model in thermal equilibrium '
                    'and after a quench.')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for debug output')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    thermal = commands.add_parser(THERMAL, help='sweep the thermal ensemble over inv_beta')
    _add_thermal(thermal)
    _add_common(thermal)

    quench = commands.add_parser(QUENCH, help='sweep the quench ensemble over tau')
    _add_quench(quench)
    _add_common(quench)

    spectrum = commands.add_parser('spectrum', help='list the dressed levels')
    spectrum.add_argument('--kappa-ratio', type=float, default=1.0)
    spectrum.add_argument('--n-max', type=int, default=50)
    spectrum.add_argument('--detuning', type=float, default=0.0)
    spectrum.add_argument('--format', choices=('csv', 'json'), default='csv')
    spectrum.add_argument('--out', help='output path (default: stdout)')

    crossovers = commands.add_parser('crossovers', help='locate sign changes of the ratio')
    modes = crossovers.add_subparsers(dest='mode', metavar='MODE')
    modes.required = True
    for mode, add_options in ((THERMAL, _add_thermal), (QUENCH, _add_quench)):
        sub = modes.add_parser(mode)
        add_options(sub)
        _add_common(sub)
    return parser


def _configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def _sweep_spec(args, mode):
    if mode == THERMAL:
        return SweepSpec(THERMAL, kappa_ratios=args.kappa_ratio,
                         axis_min=args.inv_beta_min, axis_max=args.inv_beta_max,
                         points=args.points, detuning=args.detuning, trunc_tol=args.tol)
    return SweepSpec(QUENCH, kappa_ratios=args.kappa_ratio,
                     axis_min=args.tau_min, axis_max=args.tau_max, points=args.points,
                     sources=args.source, nbars=args.nbar, trunc_tol=args.tol)


def _emit(table, args):
    out = args.out if args.out else sys.stdout
    write_table(table, out, args.format)


def _store(table, spec, url):
    from sqlalchemy import create_engine
    from .store import create_schema, save_sweep

    engine = create_engine(url)
    create_schema(engine)
    sweep_id = save_sweep(engine, table, spec)
    log.info('sweep stored with id %d in %s', sweep_id, engine.url)


def _run_sweep(args):
    spec = _sweep_spec(args, args.command)
    table = run_sweep(spec)
    if args.db:
        _store(table, spec, args.db)
    _emit(to_bits(table) if args.bits else table, args)


def _run_crossovers(args):
    spec = _sweep_spec(args, args.mode)
    table = run_sweep(spec)
    if args.db:
        _store(table, spec, args.db)
    records = find_crossovers(table, spec)
    log.info('%d crossovers found', len(records))
    _emit(crossover_table(records, spec), args)


def _run_spectrum(args):
    params = ModelParams(omega=1.0, omega0=1.0 - args.detuning, kappa=args.kappa_ratio)
    table, summary = spectrum_listing(params, args.n_max)
    out = open(args.out, 'w', newline='\n') if args.out else sys.stdout
    try:
        if args.format == 'json':
            records = table.to_dict(orient='records')
            json.dump({'levels': records, 'summary': summary}, out, indent=2,
                      default=lambda value: value.item())
            out.write('\n')
        else:
            write_table(table, out, args.format)
            # trailing comments; pandas.read_csv(comment='#') skips them
            out.write('# negative_branch: {}\n'.format(
                ' '.join(str(n) for n in summary['negative_branch'])))
            out.write('# ground: {}\n'.format(' '.join(summary['ground'])))
            out.write('# ground_energy: {!r}\n'.format(float(summary['ground_energy'])))
    finally:
        if args.out:
            out.close()


_COMMANDS = {
    THERMAL: _run_sweep,
    QUENCH: _run_sweep,
    'spectrum': _run_spectrum,
    'crossovers': _run_crossovers,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        _COMMANDS[args.command](args)
    except ArgumentError as e:
        log.error('%s', e)
        return EXIT_ARGUMENT
    except NumericError as e:
        log.error('numeric failure: %s', e)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
