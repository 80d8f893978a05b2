# encoding=utf8
"""
Sectional curvature of the (1, 0, 0) system on the 2-torus and the mode
lattice identities showing that the mu-b-equation is an Euler equation for
a right-invariant metric only when b = 2.
"""

import itertools
import logging
import numpy as np

from .diagnostics import metric_inner
from .dynamics import EulerState
from .error import InvalidConfigError, VerificationError
from .geodesic import christoffel_id
from .inertia import ModelParams
from .spectral import TWO_PI, Grid, TorusField, advect

logger = logging.getLogger(__name__)

CURVATURE_PARAMS = ModelParams(alpha=1, beta=0, gamma=0, n=2)


def quadrature_grid(m_max):
    """
    Smallest power-of-two grid on which every curvature integrand built from
    modes |m_i| <= m_max is resolved and integrated exactly (N > 6 m_max).
    """
    N = 16
    while N <= 6 * m_max:
        N *= 2
    return Grid(2, N)


def unit_field(grid, i):
    e = np.zeros(2)
    e[i] = 1.0
    return TorusField.constant(grid, e)


def example_field(grid, m1, m2):
    """v = sin(k1 x) sin(k2 y) (1, 1) with k_i = 2 pi m_i."""
    x, y = grid.points()
    s = np.sin(TWO_PI * m1 * x) * np.sin(TWO_PI * m2 * y)
    return TorusField(grid, [s, s])


def closed_form_S(m1, m2, i):
    """(2 k_i^2 + k_j^2) / (8 (k1^2 + k2^2)) for S(e_i, v), j the other index."""
    k1, k2 = TWO_PI * m1, TWO_PI * m2
    if i == 0:
        return (2 * k1 ** 2 + k2 ** 2) / (8.0 * (k1 ** 2 + k2 ** 2))
    return (2 * k2 ** 2 + k1 ** 2) / (8.0 * (k1 ** 2 + k2 ** 2))


def curvature_R_term(u, v, params=CURVATURE_PARAMS):
    """
    The twelve-term part R(u, v) of the curvature formula. Writing
    grad a . b for (b . grad) a:

        <grad u.u, grad v.v> - <grad u.v, grad u.v> + <grad v.u, grad u.v> - <grad v.u, grad v.u>
        + <grad(grad u.u).v, v> - <grad(grad u.v).v, u> + <grad(grad v.u).v, u>
        - <grad(grad v.u).u, v> - <grad v (grad u.u), v> - <grad u (grad v.v), u>
        + <grad v (grad v.u), u> + <grad u (grad v.u), v>
    """
    uu = advect(u, u)
    vv = advect(v, v)
    uv = advect(v, u)
    vu = advect(u, v)

    def g(a, b):
        return metric_inner(a, b, params)

    return (g(uu, vv) - g(uv, uv) + g(vu, uv) - g(vu, vu)
            + g(advect(v, uu), v) - g(advect(v, uv), u) + g(advect(v, vu), u)
            - g(advect(u, vu), v) - g(advect(uu, v), v) - g(advect(vv, u), u)
            + g(advect(vu, v), u) + g(advect(vu, u), v))


def sectional_S(u, v, params=CURVATURE_PARAMS):
    """S(u, v) = <Gamma(u, v), Gamma(u, v)> - <Gamma(u, u), Gamma(v, v)> + R(u, v) at the identity."""
    wu = EulerState(params, u)
    wv = EulerState(params, v)
    g_uv = christoffel_id(wu, wv, params).first
    g_uu = christoffel_id(wu, wu, params).first
    g_vv = christoffel_id(wv, wv, params).first
    return (metric_inner(g_uv, g_uv, params) - metric_inner(g_uu, g_vv, params)
            + curvature_R_term(u, v, params))


def positivity_scan(m_values, params=CURVATURE_PARAMS):
    """
    S(e_1, v) and S(e_2, v) for v = sin(k1 x) sin(k2 y) (1, 1) over all
    k_i = 2 pi m_i with m_i in m_values. Returns one dict per (m1, m2);
    raises VerificationError if any value is not positive.
    """
    m_values = sorted(set(int(m) for m in m_values))
    if not m_values or m_values[0] < 1:
        raise InvalidConfigError('k_range needs positive integer multipliers of 2 pi', key='k_range')
    grid = quadrature_grid(m_values[-1])
    logger.debug('Curvature quadrature on %r', grid)
    e = [unit_field(grid, 0), unit_field(grid, 1)]

    rows = []
    for m1, m2 in itertools.product(m_values, m_values):
        v = example_field(grid, m1, m2)
        row = {'m1': m1, 'm2': m2, 'k1': TWO_PI * m1, 'k2': TWO_PI * m2}
        for i in (0, 1):
            row['S_e%d' % (i + 1)] = sectional_S(e[i], v, params)
            row['closed_form_e%d' % (i + 1)] = closed_form_S(m1, m2, i)
        rows.append(row)
        logger.debug('S(e1, v)=%.17g S(e2, v)=%.17g for m=(%d, %d)', row['S_e1'], row['S_e2'], m1, m2)

    failed = [r for r in rows if not (r['S_e1'] > 0 and r['S_e2'] > 0)]
    if failed:
        raise VerificationError('Non-positive sectional curvature at m=(%d, %d)' % (failed[0]['m1'], failed[0]['m2']),
                                check='positivity_scan')
    return rows


class GL3Coefficients(object):
    """
    Diagonal coefficient matrices of the single-mode identity
    grad v_n . 1 - i alpha_n v_n = -i beta_n u_n for the wave vector
    n = 2 pi (m1, m2) and the b-equation parameter b.
    """

    def __init__(self, n_vec, b):
        m = np.asarray(n_vec)
        if m.shape != (2,) or not np.all(m == np.round(m)) or not np.any(m):
            raise InvalidConfigError('n_vec must be a non-zero pair of integers, got %r' % (n_vec,), key='n_vec')
        self.m = tuple(int(x) for x in m)
        self.b = float(b)
        n1, n2 = TWO_PI * self.m[0], TWO_PI * self.m[1]
        self.n = np.array([n1, n2])
        self.n_sq = n1 ** 2 + n2 ** 2
        b = self.b
        self.alpha_n = np.diag([
            (b + 1) * n1 / self.n_sq + (b - 1) * n2 / self.n_sq + n1 + n2,
            (b + 1) * n2 / self.n_sq + (b - 1) * n1 / self.n_sq + n1 + n2,
        ])
        self.beta_n = np.diag([3 * n1 + n2, 3 * n2 + n1])


class ModeField(object):
    """
    Finite sum of complex modes a_m exp(i n.z), n = 2 pi m, with a_m in C^2.
    Products of mode fields are formed exactly on the mode lattice.
    """

    def __init__(self, modes=None):
        self.modes = {}
        for m, a in (modes or {}).items():
            self.modes[tuple(int(x) for x in m)] = np.asarray(a, dtype=complex) * np.ones(2)

    @classmethod
    def single(cls, m, amplitude=(1.0, 1.0)):
        return cls({tuple(m): amplitude})

    @staticmethod
    def wave(m):
        return TWO_PI * np.asarray(m, dtype=float)

    def _combine(self, other, sign):
        modes = dict(self.modes)
        for m, a in other.modes.items():
            modes[m] = modes.get(m, 0) + sign * a
        return ModeField(modes)

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def _bilinear(self, other, term):
        modes = {}
        for p, a in self.modes.items():
            for q, c in other.modes.items():
                m = (p[0] + q[0], p[1] + q[1])
                modes[m] = modes.get(m, 0) + term(p, a, q, c)
        return ModeField(modes)

    def advect(self, other):
        """(self . grad) other."""
        return self._bilinear(other, lambda p, a, q, c: 1j * np.dot(a, self.wave(q)) * c)

    def transpose_jacobian_dot(self, other):
        """(grad self)^T other."""
        return self._bilinear(other, lambda p, a, q, c: 1j * self.wave(p) * np.dot(a, c))

    def times_divergence_of(self, other):
        """self (div other)."""
        return other._bilinear(self, lambda p, a, q, c: 1j * np.dot(self.wave(p), a) * c)

    def directional(self, direction):
        """(direction . grad) self for a constant vector."""
        direction = np.asarray(direction, dtype=float)
        return ModeField(dict((m, 1j * np.dot(direction, self.wave(m)) * a) for m, a in self.modes.items()))

    def apply(self, multiplier):
        """Componentwise Fourier multiplier; multiplier(m) returns a 2-vector."""
        return ModeField(dict((m, np.asarray(multiplier(m)) * a) for m, a in self.modes.items()))

    def apply_inverse(self, multiplier):
        return ModeField(dict((m, a / np.asarray(multiplier(m))) for m, a in self.modes.items()))

    def max_abs(self):
        """Largest coefficient modulus (the sup norm for a single mode)."""
        return max([float(np.max(np.abs(a))) for a in self.modes.values()] or [0.0])


def solve_gl3(n_vec, b):
    """
    Componentwise solution a of the single-mode identity for v_n = a exp(i n.z):
    a_j = beta_j / (alpha_j - n1 - n2). For m1 != +-m2 both components agree
    only when b = 2.
    """
    coeffs = GL3Coefficients(n_vec, b)
    alpha = np.diag(coeffs.alpha_n)
    beta = np.diag(coeffs.beta_n)
    denominator = alpha - coeffs.n.sum()
    if np.any(np.abs(denominator) < 1e-12):
        raise VerificationError('Single-mode identity is degenerate for n=%r, b=%g' % (coeffs.m, b), check='gl3')
    return beta / denominator


def verify_gl3(n_vec, b, candidate):
    """
    Normalized residual of grad v . 1 - i alpha_n v + i beta_n u_n for a
    candidate v (ModeField or amplitude pair on mode n), divided by |beta_n 1|.
    """
    coeffs = GL3Coefficients(n_vec, b)
    if not isinstance(candidate, ModeField):
        candidate = ModeField.single(coeffs.m, candidate)
    u_n = ModeField.single(coeffs.m)
    lhs = candidate.directional(np.ones(2)) - ModeField(
        dict((m, 1j * coeffs.alpha_n.dot(a)) for m, a in candidate.modes.items()))
    residual = lhs + ModeField(dict((m, 1j * coeffs.beta_n.dot(a)) for m, a in u_n.modes.items()))
    return residual.max_abs() / np.max(np.abs(np.diag(coeffs.beta_n)))


def gl3_inertia_symbol(b):
    """Mode multiplier of the inertia operator singled out by the gl3 solutions; the mean mode maps to 1."""
    def symbol(m):
        if not any(m):
            return np.ones(2)
        return solve_gl3(m, b)
    return symbol


def _b_equation_bracket(u, Au, b):
    # u.grad(Au) + (grad u)^T Au + (b - 1) Au div u
    return u.advect(Au) + u.transpose_jacobian_dot(Au) + Au.times_divergence_of(u).apply(lambda m: (b - 1.0,) * 2)


def metric_b_residual(b, n_vec=(1, 1)):
    """
    Normalized difference of the two sides of

        Ab^-1 {u.grad(Ab u) + (grad u)^T Ab u + Ab u div u}
            = L^-1 {u.grad(L u) + (grad u)^T L u + (b - 1) L u div u}

    on u = exp(i n.z) (1, 1), with L = mu - Laplacian and Ab the inertia
    operator fixed by the gl3 solutions. Vanishes iff b = 2.
    """
    u = ModeField.single(n_vec)
    symbol = gl3_inertia_symbol(b)

    def laplace(m):
        return np.ones(2) * (np.sum(ModeField.wave(m) ** 2) if any(m) else 1.0)

    lhs = _b_equation_bracket(u, u.apply(symbol), 2.0).apply_inverse(symbol)
    rhs = _b_equation_bracket(u, u.apply(laplace), b).apply_inverse(laplace)
    scale = rhs.max_abs()
    difference = (lhs - rhs).max_abs()
    return difference / scale if scale > 0 else difference


def b_residual_curve(b_values, n_vec=(1, 1)):
    """(b, metric_b_residual(b)) for each b."""
    return [(float(b), metric_b_residual(b, n_vec)) for b in b_values]
