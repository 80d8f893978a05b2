# encoding=utf8
"""
Right-invariant metric at the identity and at a point p, and the monitors
for the quantities conserved along trajectories.
"""

import logging
import numpy as np

from .error import DiffeomorphismError
from .inertia import apply_A
from .spectral import evaluate_at, gradient, inner, jacobian, mean_mu

logger = logging.getLogger(__name__)


def _stacked(w):
    return w.stacked() if hasattr(w, 'stacked') else w


def metric_inner(u, v, params):
    """
    <u, v> = sum_i [alpha mu(u_i) mu(v_i) + int(beta u_i v_i + grad u_i . grad v_i)]
             + gamma sum_{i > n} int u_i v_i

    u and v are Eulerian states or stacked fields.
    """
    u, v = _stacked(u), _stacked(v)
    n = params.n
    total = 0.0
    for i in range(n):
        ui, vi = u.component(i), v.component(i)
        total += params.alpha * mean_mu(ui)[0] * mean_mu(vi)[0]
        total += params.beta * inner(ui, vi)
        total += inner(gradient(ui), gradient(vi))
    if params.gamma:
        total += inner(u.components(n, 2 * n), v.components(n, 2 * n))
    return total


def metric_inner_operator(u, v, params):
    """<u, v> as int u . (block operator) v."""
    u, v = _stacked(u), _stacked(v)
    n = params.n
    total = inner(u.components(0, n), apply_A(v.components(0, n), params))
    if params.gamma:
        total += inner(u.components(n, 2 * n), v.components(n, 2 * n))
    return total


def _pointwise_inverse(J):
    # Pointwise inverse of grad p1, moved to shape (N, ..., N, n, n)
    matrices = np.moveaxis(J, (0, 1), (-2, -1))
    return np.linalg.inv(matrices)


def metric_at_p(u, v, lagrangian, params):
    """
    Metric at p for tangent fields u, v (stacked, params.components each):

        sum_i [alpha mu(u_i |grad p1|) mu(v_i |grad p1|) + beta int u_i v_i |grad p1|
               + int (grad u_i^T (grad p1)^-1) . (grad v_i^T (grad p1)^-1) |grad p1|]
        + gamma sum_{i > n} int u_i v_i |grad p1|
    """
    u, v = _stacked(u), _stacked(v)
    n = params.n
    det = lagrangian.det()
    if not np.all(det > 0):
        raise DiffeomorphismError('grad p1 is singular or orientation reversing (min det %.3g)' % np.min(det))
    inverse = _pointwise_inverse(lagrangian.jacobian())

    total = 0.0
    for i in range(n):
        ui, vi = u.values[i], v.values[i]
        total += params.alpha * np.mean(ui * det) * np.mean(vi * det)
        total += params.beta * np.mean(ui * vi * det)
        # Row vectors grad u_i^T (grad p1)^-1
        du = np.moveaxis(jacobian(u.component(i))[0], 0, -1)
        dv = np.moveaxis(jacobian(v.component(i))[0], 0, -1)
        ru = np.einsum('...j,...jk->...k', du, inverse)
        rv = np.einsum('...j,...jk->...k', dv, inverse)
        total += np.mean(np.sum(ru * rv, axis=-1) * det)
    if params.gamma:
        total += np.mean(np.sum(u.values[n:] * v.values[n:], axis=0) * det)
    return float(total)


def hs_energy(state):
    """int |grad u_1|^2 + ... + |grad u_n|^2 + gamma |rho|^2."""
    energy = 0.0
    for i in range(state.u.c):
        g = gradient(state.u.component(i))
        energy += inner(g, g)
    if state.rho is not None:
        energy += inner(state.rho, state.rho)
    return energy


def _compose(f, lagrangian):
    values = evaluate_at(f, lagrangian.positions())
    return values.reshape((f.c,) + f.grid.shape)


def lagrangian_momentum(state, lagrangian, params):
    """
    Lagrangian momentum densities at one instant:

        M = (grad p1)^T (m o p1) |grad p1| + gamma (grad p2)^T (rho o p1) |grad p1|
        R = (rho o p1) |grad p1|          (gamma = 1 only, else None)

    both returned as arrays of shape (n, N, ..., N).
    """
    det = lagrangian.det()
    J = lagrangian.jacobian()
    m_p = _compose(state.m, lagrangian)
    M = np.einsum('ij...,i...->j...', J, m_p) * det
    if not params.gamma:
        return M, None
    rho_p = _compose(state.rho, lagrangian)
    J2 = jacobian(lagrangian.p2)
    M = M + np.einsum('ij...,i...->j...', J2, rho_p) * det
    return M, rho_p * det


def _deviation(value, reference):
    scale = np.max(np.abs(reference))
    change = np.max(np.abs(value - reference))
    return float(change / scale) if scale > 0 else float(change)


class DiagnosticsRecord(object):
    """One row of the diagnostics table. Lagrangian deviations are NaN when no flow is tracked."""

    def __init__(self, t, hs_energy, mu_u, metric_norm, lagr_momentum_dev=float('nan'),
                 rho_mass_dev=float('nan'), extra=None):
        self.t = t
        self.hs_energy = hs_energy
        self.mu_u = list(mu_u)
        self.metric_norm = metric_norm
        self.lagr_momentum_dev = lagr_momentum_dev
        self.rho_mass_dev = rho_mass_dev
        self.extra = extra if extra is not None else {}

    def __repr__(self):
        return 'DiagnosticsRecord(t=%g, hs_energy=%g, metric_norm=%g)' % (self.t, self.hs_energy, self.metric_norm)

    def row(self, extra_columns=()):
        values = [self.t, self.hs_energy] + self.mu_u + [self.metric_norm, self.lagr_momentum_dev,
                                                          self.rho_mass_dev]
        return values + [self.extra.get(name, float('nan')) for name in extra_columns]


class DiagnosticsMonitor(object):
    """
    Turns (t, state[, lagrangian]) samples into DiagnosticsRecords. The first
    sample carrying a Lagrangian state fixes the reference for the
    conservation deviations.
    """

    def __init__(self, params):
        self.params = params
        self.reference = None

    def __call__(self, t, state, lagrangian=None):
        record = DiagnosticsRecord(
            t=t,
            hs_energy=hs_energy(state),
            mu_u=mean_mu(state.u),
            metric_norm=metric_inner(state, state, self.params),
        )
        if lagrangian is not None:
            M, R = lagrangian_momentum(state, lagrangian, self.params)
            if self.reference is None:
                self.reference = (M, R)
            record.lagr_momentum_dev = _deviation(M, self.reference[0])
            if R is not None:
                record.rho_mass_dev = _deviation(R, self.reference[1])
        return record


def collect_records(trajectory, params, lagrangian_trajectory=None):
    monitor = DiagnosticsMonitor(params)
    records = []
    for i, (t, state) in enumerate(zip(trajectory.times, trajectory.states)):
        lagrangian = None
        if lagrangian_trajectory is not None and i < len(lagrangian_trajectory):
            lagrangian = lagrangian_trajectory.states[i]
        records.append(monitor(t, state, lagrangian))
    return records


def relative_drift(values):
    """max |q(t) - q(0)| / |q(0)| over a scalar series (absolute when q(0) = 0)."""
    values = np.asarray(values, dtype=float)
    if len(values) == 0:
        return 0.0
    return _deviation(values, values[0])
