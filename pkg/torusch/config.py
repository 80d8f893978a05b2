# encoding=utf8
"""Scenario configuration: a JSON (or YAML) document, overridden by command-line flags."""

import io
import json
import logging
import numpy as np
import yaml

from .constants import Constants
from .dynamics import EulerState
from .equations import default_equations
from .error import InvalidConfigError, InvalidFieldError, InvalidStateError
from .inertia import ModelParams
from .spectral import Grid, trig_polynomial
from .util import is_power_of_two

logger = logging.getLogger(__name__)

# Alternative spellings accepted in scenario files
ALIASES = {
    'dim': 'n',
    'tmax': 't_max',
    'out': 'out_dir',
    'N': 'grid',
}

KNOWN_KEYS = {
    'mode', 'alpha', 'beta', 'gamma', 'n', 'b', 'grid', 'dt', 't_max', 'ic', 'out_dir', 'dealias',
    'renormalize', 'track_flow', 'k_range', 'b_list', 'n_vec', 'seed', 'equation',
}

DEFAULTS = {
    'mode': Constants.SIMULATE,
    'alpha': 0,
    'beta': 1,
    'gamma': 0,
    'n': 1,
    'b': 2.0,
    'out_dir': 'out',
    'dealias': True,
    'renormalize': True,
    'track_flow': True,
    'k_range': [1, 2, 3],
    'b_list': [2, 3, 4, 5],
    'n_vec': [1, 1],
    'seed': 0,
}


def _whole(value, what):
    number = float(value)
    if not np.isfinite(number) or number != int(number):
        raise ValueError('%s must be an integer, got %r' % (what, value))
    return int(number)


def _number(data, key):
    try:
        value = float(data[key])
    except (TypeError, ValueError):
        raise InvalidConfigError('%s must be a number, got %r' % (key, data[key]), key=key)
    if not np.isfinite(value):
        raise InvalidConfigError('%s must be finite, got %r' % (key, data[key]), key=key)
    return value


def _integer(data, key):
    try:
        return _whole(data[key], key)
    except (TypeError, ValueError):
        raise InvalidConfigError('%s must be an integer, got %r' % (key, data[key]), key=key)


def _number_list(data, key, cast):
    values = data[key]
    if not isinstance(values, (list, tuple)):
        raise InvalidConfigError('%s must be a list, got %r' % (key, values), key=key)
    try:
        return [cast(value, key) for value in values]
    except (TypeError, ValueError):
        raise InvalidConfigError('%s must hold numbers, got %r' % (key, values), key=key)


def _finite(value, key):
    number = float(value)
    if not np.isfinite(number):
        raise ValueError('%s entries must be finite' % key)
    return number


class ICTerm(object):
    """amplitude * sin(2 pi k.x + phase) added to one stacked component."""

    def __init__(self, component, k, amplitude, phase=0.0):
        self.component = _whole(component, 'component')
        self.k = [_whole(x, 'wave vector entry') for x in np.atleast_1d(k)]
        self.amplitude = float(amplitude)
        self.phase = float(phase)

    def as_tuple(self):
        return (self.component, self.k, self.amplitude, self.phase)

    def as_dict(self):
        return {'component': self.component, 'k': self.k, 'amplitude': self.amplitude, 'phase': self.phase}


class ScenarioConfig(object):

    def __init__(self, mode, params, N, dt, t_max, ic, out_dir, dealias=True, renormalize=True, track_flow=True,
                 k_range=None, b_list=None, n_vec=None, seed=0, equation=None):
        self.mode = mode
        self.params = params
        self.N = N
        self.dt = dt
        self.t_max = t_max
        self.ic = ic
        self.out_dir = out_dir
        self.dealias = dealias
        self.renormalize = renormalize
        self.track_flow = track_flow
        self.k_range = k_range or []
        self.b_list = b_list or []
        self.n_vec = n_vec or [1, 1]
        self.seed = seed
        self.equation = equation

    @property
    def grid(self):
        return Grid(self.params.n, self.N)

    def as_dict(self):
        return {
            'mode': self.mode,
            'alpha': self.params.alpha,
            'beta': self.params.beta,
            'gamma': self.params.gamma,
            'n': self.params.n,
            'b': self.params.b,
            'grid': self.N,
            'dt': self.dt,
            't_max': self.t_max,
            'ic': [term.as_dict() for term in self.ic],
            'out_dir': self.out_dir,
            'dealias': self.dealias,
            'renormalize': self.renormalize,
            'track_flow': self.track_flow,
            'k_range': self.k_range,
            'b_list': self.b_list,
            'n_vec': self.n_vec,
            'seed': self.seed,
            'equation': self.equation,
        }


def _normalize_keys(data):
    normalized = {}
    for key, value in data.items():
        key = ALIASES.get(key, key)
        if key not in KNOWN_KEYS:
            logger.warning('Ignoring unknown configuration key "%s"', key)
            continue
        normalized[key] = value
    return normalized


def _named_params(equations, given, n, b):
    # Switches given next to a name must agree with it
    named = equations.get(str(given['equation'])).params(n=n, b=b)
    for key in ('alpha', 'beta', 'gamma'):
        if key in given and given[key] != getattr(named, key):
            raise InvalidConfigError('%s=%s contradicts equation "%s"' % (key, given[key], given['equation']),
                                     key='equation')
    return named


def reference_ic(params, reference):
    """Reference scenario: amplitude sin(2 pi x) on every u component, phase-shifted on rho."""
    amplitude = reference.get('amplitude', 0.05)
    phase = reference.get('rho_phase', np.pi / 2)
    k = [1] + [0] * (params.n - 1)
    terms = [ICTerm(i, k, amplitude) for i in range(params.n)]
    if params.gamma:
        terms += [ICTerm(params.n + i, k, amplitude, phase) for i in range(params.n)]
    return terms


def _parse_ic(raw, params, N):
    terms = []
    for item in raw:
        try:
            if isinstance(item, dict):
                term = ICTerm(item['component'], item['k'], item['amplitude'], item.get('phase', 0.0))
            else:
                term = ICTerm(*item)
        except (KeyError, TypeError, ValueError) as error:
            raise InvalidConfigError('Malformed initial-condition term %r: %s' % (item, error), key='ic')
        if not 0 <= term.component < params.components:
            raise InvalidConfigError('Initial-condition component %d out of range 0..%d'
                                     % (term.component, params.components - 1), key='ic')
        if len(term.k) != params.n:
            raise InvalidConfigError('Initial-condition wave vector %s does not match n=%d'
                                     % (term.k, params.n), key='ic')
        if max(abs(k) for k in term.k) > N / 3.0:
            raise InvalidConfigError('Initial-condition wave vector %s exceeds the band |k| <= N/3 = %.4g'
                                     % (term.k, N / 3.0), key='ic')
        terms.append(term)
    return terms


def load_file(path):
    try:
        with io.open(path, encoding='utf-8') as fp:
            text = fp.read()
        try:
            data = json.loads(text)
        except ValueError:
            data = yaml.safe_load(text)
    except (IOError, OSError, UnicodeDecodeError) as error:
        raise InvalidConfigError('Cannot read configuration file %s: %s' % (path, error), key='config')
    except yaml.YAMLError as error:
        raise InvalidConfigError('Malformed configuration file %s: %s' % (path, error), key='config')
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InvalidConfigError('Configuration file %s must hold a mapping' % path)
    return data


def parse_config(path=None, overrides=None, equations=None):
    """
    Build a validated ScenarioConfig from an optional file and a dict of
    overrides (None values are skipped). Raises InvalidConfigError.
    """
    if equations is None:
        equations = default_equations()
    reference = equations.reference_scenario

    data = dict(DEFAULTS)
    data['grid'] = reference.get('grid', 128)
    data['dt'] = reference.get('dt', 1e-3)
    data['t_max'] = reference.get('t_max', 1.0)
    given = {}
    if path is not None:
        given.update(_normalize_keys(load_file(path)))
    if overrides:
        given.update(_normalize_keys(dict((k, v) for k, v in overrides.items() if v is not None)))
    data.update(given)

    mode = data['mode']
    if mode not in Constants.MODES:
        raise InvalidConfigError('Unknown mode "%s", expected one of %s' % (mode, ', '.join(Constants.MODES)),
                                 key='mode')

    n, b = _integer(data, 'n'), _number(data, 'b')
    try:
        if given.get('equation') is None:
            params = ModelParams(data['alpha'], data['beta'], data['gamma'], n=n, b=b)
        else:
            params = _named_params(equations, given, n, b)
    except InvalidStateError as error:
        raise InvalidConfigError(str(error), key='n')
    equation = equations.get_from_params(params).name
    if params.b != 2.0:
        if params.gamma:
            raise InvalidConfigError('b != 2 selects the b-equation, which needs gamma=0', key='b')
        if mode == Constants.GEODESIC:
            raise InvalidConfigError('The geodesic mode needs b=2', key='b')
        equation = '%s b=%g' % (equation, params.b)

    N = _integer(data, 'grid')
    if N < 4 or not is_power_of_two(N):
        raise InvalidConfigError('grid must be a power of two >= 4, got %d' % N, key='grid')

    dt, t_max = _number(data, 'dt'), _number(data, 't_max')
    if not dt > 0:
        raise InvalidConfigError('dt must be positive, got %r' % dt, key='dt')
    if not t_max >= 0:
        raise InvalidConfigError('t_max must be non-negative, got %r' % t_max, key='t_max')

    if data.get('ic') is None:
        ic = reference_ic(params, reference)
    else:
        ic = _parse_ic(data['ic'], params, N)

    k_range = _number_list(data, 'k_range', _whole)
    if mode == Constants.CURVATURE and (not k_range or min(k_range) < 1):
        raise InvalidConfigError('k_range needs positive integer multipliers of 2 pi', key='k_range')
    b_list = _number_list(data, 'b_list', _finite)
    n_vec = _number_list(data, 'n_vec', _whole)
    if len(n_vec) != 2 or not any(n_vec):
        raise InvalidConfigError('n_vec must be a non-zero pair of integers', key='n_vec')
    if not isinstance(data['out_dir'], str):
        raise InvalidConfigError('out_dir must be a path, got %r' % (data['out_dir'],), key='out_dir')

    cfg = ScenarioConfig(mode, params, N, dt, t_max, ic, data['out_dir'],
                         dealias=bool(data['dealias']), renormalize=bool(data['renormalize']),
                         track_flow=bool(data['track_flow']), k_range=k_range, b_list=b_list, n_vec=n_vec,
                         seed=_integer(data, 'seed'), equation=equation)
    logger.debug('Scenario %s: %s on %r', mode, equation, cfg.grid)
    return cfg


def initial_state(cfg):
    """EulerState built from the initial-condition terms (H^s_0 normalized for Hunter-Saxton)."""
    try:
        field = trig_polynomial(cfg.grid, [term.as_tuple() for term in cfg.ic], cfg.params.components)
    except InvalidFieldError as error:
        raise InvalidConfigError(str(error), key='ic')
    return EulerState.from_stacked(cfg.params, field).hs_normalized()
