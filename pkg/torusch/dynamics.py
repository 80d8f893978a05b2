# encoding=utf8
"""
Eulerian dynamics: the bilinear operator B, the momentum form of the system,
the mu-b-equation and fixed-step RK4 integration.
"""

import logging
import time
import numpy as np

from .constants import Constants
from .error import BlowUpError, InvalidFieldError, InvalidStateError
from .inertia import apply_A, invert_A
from .spectral import (TorusField, advect, dealias_field, divergence, dot, flux_divergence, gradient, stack,
                       transpose_jacobian_dot)
from .util import DuplicateFilter

logger = logging.getLogger(__name__)
logger.addFilter(DuplicateFilter())


class EulerState(object):
    """
    Eulerian variables (u, rho); rho is present iff gamma = 1. The momentum
    m = A u is computed on first access and cached with the (immutable) state.
    """

    def __init__(self, params, u, rho=None):
        if u.c != params.n or u.grid.n != params.n:
            raise InvalidStateError('Velocity must have %d components on a %dD grid' % (params.n, params.n))
        if params.gamma == 1:
            if rho is None:
                raise InvalidStateError('gamma=1 requires rho')
            if rho.c != params.n or rho.grid != u.grid:
                raise InvalidStateError('rho must have %d components on the velocity grid' % params.n)
        elif rho is not None:
            raise InvalidStateError('rho is only carried when gamma=1')
        self.params = params
        self.u = u
        self.rho = rho
        self._m = None

    @classmethod
    def from_stacked(cls, params, field):
        n = params.n
        if field.c != params.components:
            raise InvalidStateError('Expected %d stacked components, got %d' % (params.components, field.c))
        rho = field.components(n, 2 * n) if params.gamma else None
        return cls(params, field.components(0, n), rho)

    @classmethod
    def zeros(cls, params, grid):
        rho = TorusField.zeros(grid, params.n) if params.gamma else None
        return cls(params, TorusField.zeros(grid, params.n), rho)

    @property
    def grid(self):
        return self.u.grid

    @property
    def m(self):
        if self._m is None:
            self._m = apply_A(self.u, self.params)
        return self._m

    def fields(self):
        return [self.u] if self.rho is None else [self.u, self.rho]

    def stacked(self):
        return stack(self.fields())

    def replace(self, u=None, rho=None):
        return EulerState(self.params, self.u if u is None else u, self.rho if rho is None else rho)

    def max_norm(self):
        return max(f.max_norm() for f in self.fields())

    def validate(self):
        if self.params.is_hunter_saxton:
            origin = np.max(np.abs(self.u.at_origin()))
            if origin > Constants.HS_ORIGIN_TOLERANCE:
                raise InvalidStateError('Hunter-Saxton state must vanish at the origin, |u(0)| = %.3g' % origin)
        return self

    def hs_normalized(self):
        """Representative with u(0) = 0; a no-op outside the Hunter-Saxton case."""
        if not self.params.is_hunter_saxton:
            return self
        origin = self.u.at_origin().reshape((-1,) + (1,) * self.grid.n)
        return self.replace(u=self.u - origin)

    def dealiased(self):
        return EulerState(self.params, dealias_field(self.u),
                          None if self.rho is None else dealias_field(self.rho))

    def _combine(self, other, op):
        rho = None if self.rho is None else op(self.rho, other.rho)
        return EulerState(self.params, op(self.u, other.u), rho)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, scalar):
        rho = None if self.rho is None else self.rho * scalar
        return EulerState(self.params, self.u * scalar, rho)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


class TimeStepperConfig(object):

    def __init__(self, dt, t_max, dealias=True, renormalize=True):
        if not dt > 0:
            raise InvalidStateError('dt must be positive, got %r' % (dt,))
        if not t_max >= 0:
            raise InvalidStateError('t_max must be non-negative, got %r' % (t_max,))
        self.dt = float(dt)
        self.t_max = float(t_max)
        self.dealias = bool(dealias)
        self.renormalize = bool(renormalize)

    @property
    def n_steps(self):
        steps = int(round(self.t_max / self.dt))
        if abs(steps * self.dt - self.t_max) > 1e-9 * max(1.0, self.t_max):
            logger.warning('t_max=%g is not a multiple of dt=%g, stopping at t=%g',
                           self.t_max, self.dt, steps * self.dt)
        return steps


class Trajectory(object):
    """Sampled Eulerian solution: times, states and the rates rhs(state) at each sample."""

    def __init__(self, params, dt):
        self.params = params
        self.dt = dt
        self.times = []
        self.states = []
        self.rates = []
        self.truncated = False

    def __len__(self):
        return len(self.states)

    def append(self, t, state, rate):
        self.times.append(t)
        self.states.append(state)
        self.rates.append(rate)

    @property
    def final(self):
        return self.states[-1]


def _maybe_dealias(f, dealias):
    return dealias_field(f) if dealias else f


def bilinear_B(w1, w2, params, dealias=False):
    """
    B(w1, w2) for Eulerian states w1 = (u1, u2), w2 = (v1, v2):

        first  = -A^-1 (u1.grad(A v1) + (grad u1)^T A v1 + A v1 div u1 + gamma (grad u2)^T v2)
        second = -(grad v2) u1 - (div u1) v2
    """
    u, v = w1.u, w2.u
    Av = w2.m
    div_u = divergence(u)
    core = advect(u, Av) + transpose_jacobian_dot(u, Av) + Av * div_u.values
    if params.gamma:
        core = core + transpose_jacobian_dot(w1.rho, w2.rho)
    first = -invert_A(_maybe_dealias(core, dealias), params)
    if not params.gamma:
        return EulerState(params, first)
    second = -(advect(u, w2.rho) + w2.rho * div_u.values)
    return EulerState(params, first, _maybe_dealias(second, dealias))


def rhs_system(state, params, dealias=False):
    """
    Time derivative of (u, rho) from the momentum form

        m_t   = -sum_j d_j(u_j m) - (grad u)^T m - gamma (grad rho)^T rho
        rho_t = -sum_j d_j(u_j rho)

    followed by u_t = A^-1 m_t.
    """
    if dealias:
        state = state.dealiased()
    u, m = state.u, state.m
    m_t = flux_divergence(u, m) + transpose_jacobian_dot(u, m)
    if params.gamma:
        # (grad rho)^T rho is half the gradient of |rho|^2
        m_t = m_t + gradient(dot(state.rho, state.rho)) * 0.5
    u_t = invert_A(_maybe_dealias(-m_t, dealias), params)
    if not params.gamma:
        return EulerState(params, u_t)
    rho_t = -flux_divergence(u, state.rho)
    return EulerState(params, u_t, _maybe_dealias(rho_t, dealias))


def rhs_b_equation(u, params, dealias=False):
    """u_t for the b-equation m_t = -u.grad m - (grad u)^T m - (b - 1) m div u."""
    if params.gamma:
        raise InvalidStateError('The b-equation carries no rho, gamma must be 0')
    u = _maybe_dealias(u, dealias)
    m = apply_A(u, params)
    m_t = advect(u, m) + transpose_jacobian_dot(u, m) + m * (divergence(u).values * (params.b - 1.0))
    return invert_A(_maybe_dealias(-m_t, dealias), params)


def b_equation_system(state, params, dealias=False):
    """rhs_b_equation with the signature of rhs_system, for integrate()."""
    return EulerState(params, rhs_b_equation(state.u, params, dealias))


def rk4_step(state, dt, params, dealias=False, rate=None, rhs=rhs_system, renormalize=True):
    """One classical RK4 step. ``rate`` may carry rhs(state) when the caller already has it."""
    k1 = rate if rate is not None else rhs(state, params, dealias)
    k2 = rhs(state + k1 * (0.5 * dt), params, dealias)
    k3 = rhs(state + k2 * (0.5 * dt), params, dealias)
    k4 = rhs(state + k3 * dt, params, dealias)
    new = state + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0)
    if renormalize and params.is_hunter_saxton:
        drift = np.max(np.abs(new.u.at_origin()))
        if drift > Constants.HS_ORIGIN_TOLERANCE:
            logger.warning('Hunter-Saxton constraint drifted to |u(0)| = %.3g before renormalization', drift)
        new = new.hs_normalized()
    return new


def integrate(state0, config, params, rhs=rhs_system):
    """
    Integrate from t=0 to config.t_max with fixed steps. Returns a Trajectory
    holding every step. Non-finite values raise BlowUpError carrying the
    trajectory up to the last good step.
    """
    state = state0.dealiased() if config.dealias else state0
    state.validate()
    n_steps = config.n_steps
    dt = config.dt
    trajectory = Trajectory(params, dt)

    logger.debug('Integrating %r over %d steps of dt=%g', params, n_steps, dt)
    t0 = time.time()
    step = 0
    t = 0.0
    try:
        rate = rhs(state, params, config.dealias)
        trajectory.append(t, state, rate)
        for step in range(1, n_steps + 1):
            state = rk4_step(state, dt, params, config.dealias, rate=rate, rhs=rhs,
                             renormalize=config.renormalize)
            t = step * dt
            rate = rhs(state, params, config.dealias)
            trajectory.append(t, state, rate)
            if step % 500 == 0:
                logger.info('Integrated %d of %d steps (%.f steps/sec)', step, n_steps,
                            step / max(time.time() - t0, 1e-9))
    except (InvalidFieldError, FloatingPointError) as error:
        trajectory.truncated = True
        failed_at = step * dt
        logger.error('Blow-up at t=%g after %d good samples: %s', failed_at, len(trajectory), error)
        raise BlowUpError(failed_at, trajectory=trajectory, cause=error)

    logger.debug('Integration finished in %.2f sec', time.time() - t0)
    return trajectory
