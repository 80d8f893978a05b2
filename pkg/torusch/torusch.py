#!/usr/bin/env python
# encoding=utf8
#
# Spectral simulation and verification runs for the Camassa-Holm type
# systems on the flat torus. See README.rst for more information.

import argparse
import math
import os
import sys
import time
import warnings

import logging

from . import __version__
from .config import initial_state, parse_config
from .constants import Constants
from .curvature import GL3Coefficients, ModeField, b_residual_curve, positivity_scan, verify_gl3
from .diagnostics import collect_records, relative_drift
from .dynamics import TimeStepperConfig, b_equation_system, integrate, rhs_system
from .equations import default_equations
from .error import BlowUpError, DiffeomorphismError, InvalidConfigError, VerificationError
from .geodesic import euler_lagrange_defect, flow_reconstruct, geodesic_residual
from .selftest import run_selftest
from .writer import check_writable, state_document, write_json, write_outputs, write_table_csv

logging.captureWarnings(True)
warnings.simplefilter('always', DeprecationWarning)

logger = logging.getLogger()
logger.setLevel(logging.DEBUG)
formatter = logging.Formatter('[%(asctime)s %(levelname)s] %(message)s')

console_handler = logging.StreamHandler()
console_handler.setLevel(logging.DEBUG)
console_handler.setFormatter(formatter)
logger.addHandler(console_handler)


GEODESIC_COLUMNS = ['geodesic_residual', 'euler_lagrange_dev']


def _json_number(value):
    value = float(value)
    return value if math.isfinite(value) else None


def run_dynamics(cfg, summary):
    """simulate and geodesic modes: Eulerian run, optional flow reconstruction, diagnostics CSV."""
    params = cfg.params
    status = Constants.EXIT_OK
    truncated_at = None

    stepper = TimeStepperConfig(cfg.dt, cfg.t_max, dealias=cfg.dealias, renormalize=cfg.renormalize)
    rhs = rhs_system if params.b == 2.0 else b_equation_system
    try:
        trajectory = integrate(initial_state(cfg), stepper, params, rhs=rhs)
    except BlowUpError as error:
        logger.error('%s', error)
        trajectory = error.trajectory
        truncated_at = error.t
        status = Constants.EXIT_BLOWUP

    if not len(trajectory):
        write_outputs(cfg.out_dir, [], params.n, truncated_at=truncated_at)
        summary['truncated_at'] = truncated_at
        return status

    geodesic = cfg.mode == Constants.GEODESIC
    lagrangian = None
    if cfg.track_flow or geodesic:
        try:
            lagrangian = flow_reconstruct(trajectory)
        except DiffeomorphismError as error:
            logger.error('%s', error)
            lagrangian = error.trajectory
            truncated_at = error.t if truncated_at is None else min(truncated_at, error.t)
            status = Constants.EXIT_BLOWUP

    records = collect_records(trajectory, params, lagrangian)
    extra_columns = []
    if geodesic:
        extra_columns = GEODESIC_COLUMNS
        residual = geodesic_residual(lagrangian, trajectory, params)
        if params.n == 1:
            defect = euler_lagrange_defect(lagrangian, trajectory)
        else:
            logger.info('Euler/Lagrange defect needs the 1D inverse diffeomorphism, column left empty')
            defect = [float('nan')] * len(lagrangian)
        for i, record in enumerate(records[:len(lagrangian)]):
            record.extra['geodesic_residual'] = residual[i]
            record.extra['euler_lagrange_dev'] = defect[i]
        summary['max_geodesic_residual'] = _json_number(max([r for r in residual if r == r] or [float('nan')]))
        summary['max_euler_lagrange_dev'] = _json_number(max(defect) if len(defect) else float('nan'))

    write_outputs(cfg.out_dir, records, params.n, extra_columns, truncated_at,
                  state_document(trajectory.times[-1], trajectory.final))

    last = records[-1]
    summary.update({
        'final_t': trajectory.times[-1],
        'steps': len(trajectory) - 1,
        'truncated_at': truncated_at,
        'hs_energy_drift': _json_number(relative_drift([r.hs_energy for r in records])),
        'metric_norm_drift': _json_number(relative_drift([r.metric_norm for r in records])),
        'final_consv1_dev': _json_number(last.lagr_momentum_dev),
        'final_rho_mass_dev': _json_number(last.rho_mass_dev),
        'final_mu_u': [_json_number(v) for v in last.mu_u],
    })
    return status


def run_curvature(cfg, summary):
    rows = positivity_scan(cfg.k_range)
    header = ['m1', 'm2', 'k1', 'k2', 'S_e1', 'closed_form_e1', 'S_e2', 'closed_form_e2']
    write_table_csv(os.path.join(cfg.out_dir, Constants.CURVATURE_FILE), header,
                    [[row[key] for key in header] for row in rows])
    summary['max_closed_form_dev'] = max(max(abs(r['S_e1'] - r['closed_form_e1']),
                                             abs(r['S_e2'] - r['closed_form_e2'])) for r in rows)
    summary['min_S'] = min(min(r['S_e1'], r['S_e2']) for r in rows)
    return Constants.EXIT_OK


def run_verify_b(cfg, summary):
    coeffs = GL3Coefficients(cfg.n_vec, 2.0)
    rows = []
    for b, residual in b_residual_curve(cfg.b_list, cfg.n_vec):
        # Printed solution: (2/b) n^2 on the diagonal n1 = n2, n^2 otherwise
        factor = 2.0 / b if coeffs.m[0] == coeffs.m[1] else 1.0
        candidate = ModeField.single(coeffs.m, (factor * coeffs.n_sq,) * 2)
        rows.append([b, residual, verify_gl3(cfg.n_vec, b, candidate)])
        logger.info('b=%g: gl1 residual %.3g', b, residual)
    write_table_csv(os.path.join(cfg.out_dir, Constants.VERIFY_B_FILE), ['b', 'metric_b_residual', 'gl3_residual'],
                    rows)
    summary['residuals'] = dict(('%g' % row[0], row[1]) for row in rows)
    return Constants.EXIT_OK


def run_selftest_mode(cfg, summary):
    results = run_selftest(cfg.seed)
    write_table_csv(os.path.join(cfg.out_dir, Constants.SELFTEST_FILE), ['check', 'value', 'bound', 'status'],
                    [check.row() for check in results])
    failed = [check.name for check in results if not check.passed]
    summary['failed_checks'] = failed
    summary['checks'] = len(results)
    if failed:
        logger.error('%d of %d checks failed', len(failed), len(results))
        return Constants.EXIT_SELFTEST_FAILURE
    logger.info('All %d checks passed', len(results))
    return Constants.EXIT_OK


RUNNERS = {
    Constants.SIMULATE: run_dynamics,
    Constants.GEODESIC: run_dynamics,
    Constants.CURVATURE: run_curvature,
    Constants.VERIFY_B: run_verify_b,
    Constants.SELFTEST: run_selftest_mode,
}


def run_scenario(cfg):
    """Execute one validated scenario; returns the process exit code."""
    check_writable(cfg.out_dir)
    summary = {
        'config': cfg.as_dict(),
        'equation': cfg.equation,
        'version': __version__,
        'seed': cfg.seed,
    }
    t0 = time.time()
    try:
        status = RUNNERS[cfg.mode](cfg, summary)
    except VerificationError as error:
        logger.error('Verification failed: %s', error)
        summary['verification_error'] = str(error)
        status = Constants.EXIT_SELFTEST_FAILURE
    summary['wall_time'] = time.time() - t0
    summary['status'] = status
    write_json(os.path.join(cfg.out_dir, Constants.SUMMARY_FILE), summary)
    return status


def main(argv=None):

    parser = argparse.ArgumentParser(description='Spectral simulation and verification of Camassa-Holm type '
                                                 'systems on the flat torus')
    parser.add_argument('mode', nargs='?', help='One of: %s' % ', '.join(Constants.MODES))
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', dest='verbose', action='store_true', help='More verbose output')

    parser.add_argument('--config', dest='config', metavar='FILE', help='Scenario file (JSON or YAML)')
    parser.add_argument('--alpha', dest='alpha', type=int, choices=[0, 1])
    parser.add_argument('--beta', dest='beta', type=int, choices=[0, 1])
    parser.add_argument('--gamma', dest='gamma', type=int, choices=[0, 1])
    parser.add_argument('--equation', dest='equation', metavar='NAME', help='Named equation, see -l')
    parser.add_argument('--dim', dest='n', type=int, help='Torus dimension n')
    parser.add_argument('--grid', dest='grid', type=int, metavar='N', help='Points per axis (power of two)')
    parser.add_argument('--dt', dest='dt', type=float, help='Time step')
    parser.add_argument('--tmax', dest='t_max', type=float, help='Final time')
    parser.add_argument('--out', dest='out_dir', metavar='DIR', help='Output directory')
    parser.add_argument('--b', dest='b', type=float, help='b-equation parameter (b=2 is the metric case)')
    parser.add_argument('--seed', dest='seed', type=int, help='Seed for randomized test data')
    parser.add_argument('--no-dealias', dest='no_dealias', action='store_true', help='Switch off the 2/3 rule')

    parser.add_argument('-l', '--list-equations', dest='list_equations', action='store_true',
                        help='List the named equations.')

    args = parser.parse_args(argv)

    if args.verbose:
        console_handler.setLevel(logging.DEBUG)
    else:
        console_handler.setLevel(logging.INFO)

    equations = default_equations()

    if args.list_equations:
        print('Equations:')
        for equation in equations:
            print('- %s' % equation)
        return Constants.EXIT_OK

    overrides = dict((key, getattr(args, key)) for key in
                     ('mode', 'alpha', 'beta', 'gamma', 'equation', 'n', 'grid', 'dt', 't_max', 'out_dir', 'b',
                      'seed'))
    if args.no_dealias:
        overrides['dealias'] = False

    try:
        cfg = parse_config(args.config, overrides, equations)
        return run_scenario(cfg)
    except InvalidConfigError as error:
        logger.error('%s', error)
        return Constants.EXIT_CONFIG_ERROR


if __name__ == '__main__':
    sys.exit(main())
