# encoding=utf8
"""
Lagrangian side of the geometry: Christoffel maps at the identity, flow
reconstruction p_t = w o p1, the geodesic equation p_tt = Gamma_p(p_t, p_t)
and the Euler/Lagrange consistency checks.

Diffeomorphisms are stored through their periodic displacement,
p1(x) = x + p1_disp(x) on the torus.
"""

import logging
import time
import numpy as np

from .diagnostics import metric_at_p, metric_inner
from .dynamics import EulerState
from .error import DiffeomorphismError, InvalidFieldError, InvalidStateError
from .inertia import apply_A, invert_A
from .spectral import (TorusField, advect, differentiate, divergence, dot, evaluate_at, gradient, jacobian, stack,
                       transpose_jacobian_dot)

logger = logging.getLogger(__name__)

INVERSE_TOLERANCE = 1e-13
INVERSE_MAX_ITERATIONS = 50


class LagrangianState(object):
    """Flow state (p1, p2, p_t); p2 is present iff gamma = 1 and p_t stacks (p1_t, p2_t)."""

    def __init__(self, params, p1_disp, pt, p2=None):
        if p1_disp.c != params.n:
            raise InvalidStateError('Displacement must have %d components, got %d' % (params.n, p1_disp.c))
        if pt.c != params.components:
            raise InvalidStateError('Velocity must have %d components, got %d' % (params.components, pt.c))
        if params.gamma and p2 is None:
            raise InvalidStateError('gamma=1 requires p2')
        self.params = params
        self.p1_disp = p1_disp
        self.pt = pt
        self.p2 = p2

    @classmethod
    def identity(cls, params, grid, pt=None):
        if pt is None:
            pt = TorusField.zeros(grid, params.components)
        p2 = TorusField.zeros(grid, params.n) if params.gamma else None
        return cls(params, TorusField.zeros(grid, params.n), pt, p2)

    @property
    def grid(self):
        return self.p1_disp.grid

    @property
    def pt1(self):
        return self.pt.components(0, self.params.n)

    @property
    def pt2(self):
        if not self.params.gamma:
            return None
        return self.pt.components(self.params.n, 2 * self.params.n)

    def jacobian(self):
        """grad p1 as an array J[i, j] = delta_ij + d_j disp_i."""
        J = jacobian(self.p1_disp)
        for i in range(self.params.n):
            J[i, i] += 1.0
        return J

    def det(self):
        J = self.jacobian()
        if self.params.n == 1:
            return J[0, 0]
        if self.params.n == 2:
            return J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        return np.linalg.det(np.moveaxis(J, (0, 1), (-2, -1)))

    def positions(self):
        """Image points p1(x_j) as a (N**n, n) array (not wrapped)."""
        return displaced_points(self.p1_disp)

    def validate(self, t=None):
        det = self.det()
        if not np.all(det > 0):
            raise DiffeomorphismError(t=t)
        return self


class ChristoffelValue(object):
    """Value of a Christoffel map; ``second`` is present iff gamma = 1."""

    def __init__(self, first, second=None):
        self.first = first
        self.second = second

    def fields(self):
        return [self.first] if self.second is None else [self.first, self.second]

    def stacked(self):
        return stack(self.fields())

    def as_state(self, params):
        return EulerState(params, self.first, self.second)


class LagrangianTrajectory(object):

    def __init__(self, params, dt):
        self.params = params
        self.dt = dt
        self.times = []
        self.states = []

    def __len__(self):
        return len(self.states)

    def append(self, t, state):
        self.times.append(t)
        self.states.append(state)


def displaced_points(disp):
    return disp.grid.flat_points() + disp.values.reshape(disp.c, -1).T


def _compose_displaced(f, disp):
    values = evaluate_at(f, displaced_points(disp))
    return TorusField(f.grid, values.reshape((f.c,) + f.grid.shape))


def compose(f, lagrangian):
    """f o p1 sampled on the grid."""
    return _compose_displaced(f, lagrangian.p1_disp)


def _christoffel_part(u, v, Au, Av, params):
    # u.grad(Av) + (grad u)^T Av + Av div u - A(grad u . v)
    return (advect(u, Av) + transpose_jacobian_dot(u, Av) + Av * divergence(u)
            - apply_A(advect(v, u), params))


def christoffel_id(w1, w2, params):
    """
    Christoffel map at the identity for Eulerian states w1 = (u, rho),
    w2 = (v, eta):

        first  = Gamma0(u, v) - 1/2 A^-1 grad(rho . eta)
        second = -1/2 (rho div v + eta div u)

    with Gamma0(u, v) = -1/2 A^-1 {h(u, v) + h(v, u)}.
    """
    u, v = w1.u, w2.u
    total = _christoffel_part(u, v, w1.m, w2.m, params) + _christoffel_part(v, u, w2.m, w1.m, params)
    if params.gamma:
        total = total + gradient(dot(w1.rho, w2.rho))
    first = invert_A(total, params) * -0.5
    if not params.gamma:
        return ChristoffelValue(first)
    second = (w1.rho * divergence(v) + w2.rho * divergence(u)) * -0.5
    return ChristoffelValue(first, second)


def invert_diffeo_1d(p1_disp, tol=INVERSE_TOLERANCE, max_iter=INVERSE_MAX_ITERATIONS):
    """
    Displacement of p1^-1 for a 1D diffeomorphism p1(x) = x + p1_disp(x).

    Each grid point y is solved from x + d(x) = y by Newton's method on the
    trigonometric interpolant, falling back to bisection whenever a Newton
    step leaves the current bracket.
    """
    grid = p1_disp.grid
    if grid.n != 1 or p1_disp.c != 1:
        raise InvalidFieldError('invert_diffeo_1d works on scalar 1D displacements only')
    slope = differentiate(p1_disp, 0)
    if np.min(1.0 + slope.values) <= 0:
        raise DiffeomorphismError('p1 is not monotone: min(1 + d_x) = %.3g' % np.min(1.0 + slope.values))

    y = np.arange(grid.N) * grid.spacing
    bound = p1_disp.max_norm() + 1e-12
    lo = y - bound
    hi = y + bound
    x = y - p1_disp.values[0]
    for _ in range(max_iter):
        f = x + evaluate_at(p1_disp, x)[0] - y
        if np.max(np.abs(f)) < tol:
            break
        lo = np.where(f < 0, x, lo)
        hi = np.where(f > 0, x, hi)
        newton = x - f / (1.0 + evaluate_at(slope, x)[0])
        outside = ~np.isfinite(newton) | (newton <= lo) | (newton >= hi)
        x = np.where(outside, 0.5 * (lo + hi), newton)
    else:
        logger.warning('Inverse diffeomorphism did not converge in %d iterations (residual %.3g)',
                       max_iter, np.max(np.abs(f)))
    return TorusField(grid, x - y)


def compose_inverse(f, inverse_disp):
    """f o p1^-1 on a 1D grid, given the displacement of p1^-1."""
    grid = f.grid
    positions = np.arange(grid.N) * grid.spacing + inverse_disp.values[0]
    return TorusField(grid, evaluate_at(f, positions))


def christoffel_at(lagrangian, a, b, params, inverse_disp=None):
    """Gamma_p(a, b) = Gamma_id(a o p1^-1, b o p1^-1) o p1 for stacked tangent fields (1D)."""
    if inverse_disp is None:
        inverse_disp = invert_diffeo_1d(lagrangian.p1_disp)
    a_e = EulerState.from_stacked(params, compose_inverse(a, inverse_disp))
    b_e = EulerState.from_stacked(params, compose_inverse(b, inverse_disp))
    return compose(christoffel_id(a_e, b_e, params).stacked(), lagrangian)


def _interpolated_state(trajectory, i):
    # Cubic Hermite midpoint between samples i and i + 1
    w0, w1 = trajectory.states[i], trajectory.states[i + 1]
    r0, r1 = trajectory.rates[i], trajectory.rates[i + 1]
    return (w0 + w1) * 0.5 + (r0 - r1) * (trajectory.dt / 8.0)


def flow_reconstruct(trajectory):
    """
    Lagrangian flow of an Eulerian trajectory: RK4 on p1_t = u(t) o p1 (and
    p2_t = rho(t) o p1), starting from the identity. Eulerian fields at half
    steps come from cubic Hermite interpolation of the stored states and rates.
    """
    params = trajectory.params
    dt = trajectory.dt
    grid = trajectory.states[0].grid
    n = params.n

    def rates(disp, w):
        return _compose_displaced(w.stacked(), disp)

    disp = TorusField.zeros(grid, n)
    p2 = TorusField.zeros(grid, n) if params.gamma else None
    result = LagrangianTrajectory(params, dt)
    result.append(trajectory.times[0], LagrangianState(params, disp, rates(disp, trajectory.states[0]), p2))

    t0 = time.time()
    n_steps = len(trajectory) - 1
    for i in range(n_steps):
        mid = _interpolated_state(trajectory, i)
        k1 = rates(disp, trajectory.states[i])
        k2 = rates(disp + k1.components(0, n) * (0.5 * dt), mid)
        k3 = rates(disp + k2.components(0, n) * (0.5 * dt), mid)
        k4 = rates(disp + k3.components(0, n) * dt, trajectory.states[i + 1])
        increment = (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0)
        disp = disp + increment.components(0, n)
        if params.gamma:
            p2 = p2 + increment.components(n, 2 * n)

        t = trajectory.times[i + 1]
        state = LagrangianState(params, disp, rates(disp, trajectory.states[i + 1]), p2)
        if not np.all(state.det() > 0):
            raise DiffeomorphismError(t=t, trajectory=result)
        result.append(t, state)
        if (i + 1) % 500 == 0:
            logger.info('Integrated %d of %d steps (%.f steps/sec)', i + 1, n_steps,
                        (i + 1) / max(time.time() - t0, 1e-9))
    return result


def geodesic_residual(lagrangian_trajectory, trajectory, params):
    """
    max |p_tt - Gamma_id(w, w) o p1| per sample, with p_tt from centered
    differences of p_t. The first and last samples have no centered
    difference and are reported as NaN.
    """
    states = lagrangian_trajectory.states
    dt = lagrangian_trajectory.dt
    residual = np.full(len(states), np.nan)
    for i in range(1, len(states) - 1):
        p_tt = (states[i + 1].pt.values - states[i - 1].pt.values) / (2.0 * dt)
        w = trajectory.states[i]
        accel = compose(christoffel_id(w, w, params).stacked(), states[i])
        residual[i] = np.max(np.abs(p_tt - accel.values))
    return residual


def euler_lagrange_defect(lagrangian_trajectory, trajectory, block='u'):
    """
    max |u(t) - p1_t o p1^-1| per sample (1D). With block='rho' the density
    block p2_t o p1^-1 is compared with rho(t) instead; it is reported on its
    own and is not part of the Euler/Lagrange invariant.
    """
    params = lagrangian_trajectory.params
    n = params.n
    if block == 'u':
        start = 0
    elif block == 'rho' and params.gamma:
        start = n
    else:
        raise InvalidFieldError('No %r block for %r' % (block, params))
    defect = np.empty(len(lagrangian_trajectory))
    for i, state in enumerate(lagrangian_trajectory.states):
        if state.grid.n != 1:
            raise InvalidFieldError('euler_lagrange_defect needs the 1D inverse diffeomorphism')
        w = compose_inverse(state.pt.components(start, start + n), invert_diffeo_1d(state.p1_disp))
        expected = trajectory.states[i].stacked().components(start, start + n)
        defect[i] = np.max(np.abs(w.values - expected.values))
    return defect


def _lagrangian_from_array(params, grid, Y):
    n = params.n
    p2 = TorusField(grid, Y[n:2 * n]) if params.gamma else None
    return LagrangianState(params, TorusField(grid, Y[:n]), TorusField(grid, Y[-params.components:]), p2)


def _geodesic_rate(params, grid, Y):
    state = _lagrangian_from_array(params, grid, Y)
    accel = christoffel_at(state, state.pt, state.pt, params)
    return np.concatenate([state.pt.values, accel.values])


def integrate_geodesic_1d(w0, config, params):
    """
    Solve p_tt = Gamma_p(p_t, p_t) directly in 1D with RK4, starting at the
    identity with p_t(0) = w0. The unknowns are (p1_disp, p2, p_t); the first
    two advance with p_t itself.
    """
    if params.n != 1:
        raise InvalidStateError('The standalone geodesic solver is only available for n=1')
    grid = w0.grid
    dt = config.dt
    n_steps = config.n_steps
    start = LagrangianState.identity(params, grid, pt=w0.stacked())
    Y = np.concatenate([f.values for f in (start.p1_disp, start.p2, start.pt) if f is not None])

    result = LagrangianTrajectory(params, dt)
    result.append(0.0, start)
    t0 = time.time()
    for step in range(1, n_steps + 1):
        k1 = _geodesic_rate(params, grid, Y)
        k2 = _geodesic_rate(params, grid, Y + 0.5 * dt * k1)
        k3 = _geodesic_rate(params, grid, Y + 0.5 * dt * k2)
        k4 = _geodesic_rate(params, grid, Y + dt * k3)
        Y = Y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = step * dt
        state = _lagrangian_from_array(params, grid, Y).validate(t)
        result.append(t, state)
        if step % 500 == 0:
            logger.info('Integrated %d of %d steps (%.f steps/sec)', step, n_steps,
                        step / max(time.time() - t0, 1e-9))
    return result


def covariant_derivative_id(w, v, params):
    """(D Y . X - Gamma(X, Y)) at the identity for right-invariant X = w o p1, Y = v o p1."""
    rho = advect(w.u, v.rho) if params.gamma else None
    moved = EulerState(params, advect(w.u, v.u), rho)
    return moved - christoffel_id(w, v, params).as_state(params)


def metric_compatibility_defect(w, v, z, params):
    """
    <nabla_X Y, Z> + <nabla_X Z, Y> at the identity for right-invariant
    fields. Their mutual inner product is constant, so the sum vanishes
    exactly when the connection preserves the metric.
    """
    return (metric_inner(covariant_derivative_id(w, v, params), z, params)
            + metric_inner(covariant_derivative_id(w, z, params), v, params))


def metric_compatibility_series(lagrangian_trajectory, v, z, params):
    """
    Along a 1D flow, compare d/dt <v, z>_p(t) (centered differences) with
    -<Gamma_p(p_t, v), z>_p - <Gamma_p(p_t, z), v>_p for the constant tangent
    fields v, z (stacked). Returns the absolute defect per sample, NaN at
    both ends.
    """
    states = lagrangian_trajectory.states
    dt = lagrangian_trajectory.dt
    norms = np.array([metric_at_p(v, z, state, params) for state in states])
    defect = np.full(len(states), np.nan)
    for i in range(1, len(states) - 1):
        state = states[i]
        inverse = invert_diffeo_1d(state.p1_disp)
        gamma_v = christoffel_at(state, state.pt, v, params, inverse)
        gamma_z = christoffel_at(state, state.pt, z, params, inverse)
        expected = -metric_at_p(gamma_v, z, state, params) - metric_at_p(gamma_z, v, state, params)
        difference = (norms[i + 1] - norms[i - 1]) / (2.0 * dt)
        defect[i] = abs(difference - expected)
    return defect
