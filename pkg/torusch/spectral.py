# encoding=utf8
"""
Uniform grids on the flat torus R^n/Z^n (unit period per axis) and the
Fourier machinery used by every other module.

Fields are stored as real samples; spectra use the half-spectrum layout of
``numpy.fft.rfftn`` and are normalized as Fourier series coefficients, so the
coefficient of k is the weight of exp(2*pi*i*k.x). Wavenumbers are kept as
integers k; the physical frequency is 2*pi*k.
"""

import logging
import numpy as np

from .constants import Constants
from .error import InvalidFieldError
from .util import is_power_of_two

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi


class Grid(object):
    """Uniform grid with N points per axis; sample points are x_j = j/N."""

    def __init__(self, n, N):
        if int(n) != n or n < 1:
            raise InvalidFieldError('Grid dimension must be a positive integer, got %r' % (n,))
        if int(N) != N or N < 4 or not is_power_of_two(int(N)):
            raise InvalidFieldError('Points per axis must be a power of two >= 4, got %r' % (N,))
        self.n = int(n)
        self.N = int(N)
        self.spacing = 1.0 / self.N
        self.shape = (self.N,) * self.n
        self.size = self.N ** self.n
        self.axes = tuple(range(1, self.n + 1))
        self.half_shape = self.shape[:-1] + (self.N // 2 + 1,)

        full = np.fft.fftfreq(self.N, 1.0 / self.N)
        half = np.fft.rfftfreq(self.N, 1.0 / self.N)
        self.axis_wavenumbers = [full] * (self.n - 1) + [half]

        # Broadcastable against a half spectrum of shape half_shape
        self.wavenumbers = []
        for axis, k in enumerate(self.axis_wavenumbers):
            shape = [1] * self.n
            shape[axis] = len(k)
            self.wavenumbers.append(k.reshape(shape))

        self.k_squared = np.zeros(self.half_shape)
        for k in self.wavenumbers:
            self.k_squared = self.k_squared + (TWO_PI * k) ** 2

        # Each stored coefficient with 0 < k_last < N/2 stands for itself and its conjugate
        weights = np.full(len(half), 2.0)
        weights[0] = 1.0
        weights[-1] = 1.0
        self.half_weights = weights.reshape([1] * (self.n - 1) + [len(half)])

        self._derivative_symbols = {}

    def __eq__(self, other):
        return isinstance(other, Grid) and self.n == other.n and self.N == other.N

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.n, self.N))

    def __repr__(self):
        return 'Grid(n=%d, N=%d)' % (self.n, self.N)

    def points(self):
        """Sample coordinates, shape (n, N, ..., N)."""
        x = np.arange(self.N) * self.spacing
        return np.array(np.meshgrid(*([x] * self.n), indexing='ij'))

    def flat_points(self):
        """Sample coordinates as a (N**n, n) list of positions."""
        return self.points().reshape(self.n, -1).T

    def derivative_symbol(self, axis):
        # Multiplier 2*pi*i*k_axis; the Nyquist mode is dropped so odd derivatives stay real
        if axis not in self._derivative_symbols:
            k = self.wavenumbers[axis]
            symbol = 1j * TWO_PI * np.where(np.abs(k) == self.N // 2, 0.0, k)
            self._derivative_symbols[axis] = symbol
        return self._derivative_symbols[axis]

    def band_mask(self, kmax):
        """True on the half-spectrum coefficients with every |k_i| <= kmax."""
        mask = np.ones(self.half_shape, dtype=bool)
        for k in self.wavenumbers:
            mask = mask & (np.abs(k) <= kmax)
        return mask

    def origin_index(self):
        return (slice(None),) + (0,) * self.n


class TorusField(object):
    """Real vector-valued samples on a grid, shape (c, N, ..., N). Immutable."""

    def __init__(self, grid, values):
        values = np.array(values, dtype=float)
        if values.shape == grid.shape:
            values = values[np.newaxis]
        if values.ndim != grid.n + 1 or values.shape[1:] != grid.shape:
            raise InvalidFieldError('Samples of shape %s do not fit %r' % (values.shape, grid))
        if not np.all(np.isfinite(values)):
            raise InvalidFieldError('Field has non-finite samples')
        values.setflags(write=False)
        self.grid = grid
        self.values = values

    @classmethod
    def zeros(cls, grid, c=1):
        return cls(grid, np.zeros((c,) + grid.shape))

    @classmethod
    def constant(cls, grid, vector):
        vector = np.atleast_1d(np.asarray(vector, dtype=float))
        values = vector.reshape((-1,) + (1,) * grid.n) * np.ones((1,) + grid.shape)
        return cls(grid, values)

    @classmethod
    def from_function(cls, grid, fn):
        """Sample fn(x, y, ...) on the grid; fn returns one array or a list of component arrays."""
        values = fn(*grid.points())
        if isinstance(values, (list, tuple)):
            values = np.array([np.broadcast_to(v, grid.shape) for v in values])
        elif np.ndim(values) <= grid.n:
            values = np.broadcast_to(values, grid.shape)
        return cls(grid, values)

    @property
    def c(self):
        return self.values.shape[0]

    def __len__(self):
        return self.c

    def __repr__(self):
        return 'TorusField(%r, c=%d)' % (self.grid, self.c)

    def component(self, i):
        return TorusField(self.grid, self.values[i])

    def components(self, start, stop):
        return TorusField(self.grid, self.values[start:stop])

    def at_origin(self):
        return np.array(self.values[self.grid.origin_index()])

    def max_norm(self):
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def _other_values(self, other):
        if isinstance(other, TorusField):
            if other.grid != self.grid:
                raise InvalidFieldError('Fields live on different grids: %r and %r' % (self.grid, other.grid))
            return other.values
        return other

    def __add__(self, other):
        return TorusField(self.grid, self.values + self._other_values(other))

    __radd__ = __add__

    def __sub__(self, other):
        return TorusField(self.grid, self.values - self._other_values(other))

    def __rsub__(self, other):
        return TorusField(self.grid, self._other_values(other) - self.values)

    def __mul__(self, other):
        return TorusField(self.grid, self.values * self._other_values(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return TorusField(self.grid, self.values / self._other_values(other))

    def __neg__(self):
        return TorusField(self.grid, -self.values)


class SpectrumField(object):
    """Half-spectrum Fourier series coefficients, shape (c,) + grid.half_shape."""

    def __init__(self, grid, coeffs):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape[1:] != grid.half_shape:
            raise InvalidFieldError('Coefficients of shape %s do not fit %r' % (coeffs.shape, grid))
        self.grid = grid
        self.coeffs = coeffs

    @property
    def c(self):
        return self.coeffs.shape[0]

    def energy(self):
        return float(np.sum(self.grid.half_weights * np.abs(self.coeffs) ** 2))


def stack(fields):
    """Concatenate the components of fields sharing one grid."""
    grid = fields[0].grid
    for f in fields[1:]:
        if f.grid != grid:
            raise InvalidFieldError('Cannot stack fields on %r and %r' % (grid, f.grid))
    return TorusField(grid, np.concatenate([f.values for f in fields]))


def analyze(f):
    coeffs = np.fft.rfftn(f.values, axes=f.grid.axes) / f.grid.size
    return SpectrumField(f.grid, coeffs)


def synthesize(F):
    grid = F.grid
    return TorusField(grid, np.fft.irfftn(F.coeffs * grid.size, s=grid.shape, axes=grid.axes))


def _synthesize_values(grid, coeffs):
    return np.fft.irfftn(coeffs * grid.size, s=grid.shape, axes=grid.axes)


def differentiate(f, axis):
    """Exact derivative of the trigonometric interpolant along one axis."""
    if axis < 0 or axis >= f.grid.n:
        raise InvalidFieldError('Axis %d out of range for %r' % (axis, f.grid))
    F = analyze(f)
    return synthesize(SpectrumField(f.grid, F.coeffs * f.grid.derivative_symbol(axis)))


def jacobian(u):
    """Array J with J[i, j] = d u_i / d x_j, shape (c, n, N, ..., N)."""
    grid = u.grid
    coeffs = analyze(u).coeffs
    J = np.empty((u.c, grid.n) + grid.shape)
    for axis in range(grid.n):
        J[:, axis] = _synthesize_values(grid, coeffs * grid.derivative_symbol(axis))
    return J


def gradient(f):
    if f.c != 1:
        raise InvalidFieldError('gradient expects a scalar field, got %d components' % f.c)
    return TorusField(f.grid, jacobian(f)[0])


def divergence(u):
    if u.c != u.grid.n:
        raise InvalidFieldError('divergence expects %d components, got %d' % (u.grid.n, u.c))
    J = jacobian(u)
    return TorusField(u.grid, sum(J[j, j] for j in range(u.grid.n)))


def advect(a, f):
    """(a . nabla) f, i.e. the Jacobian of f applied to a."""
    if a.c != a.grid.n:
        raise InvalidFieldError('advecting field needs %d components, got %d' % (a.grid.n, a.c))
    J = jacobian(f)
    return TorusField(f.grid, np.einsum('j...,ij...->i...', a.values, J))


def transpose_jacobian_dot(u, m):
    """(nabla u)^T m, with components sum_i d_j u_i m_i."""
    if u.c != m.c:
        raise InvalidFieldError('Component mismatch: %d and %d' % (u.c, m.c))
    J = jacobian(u)
    return TorusField(u.grid, np.einsum('ij...,i...->j...', J, m.values))


def flux_divergence(a, f):
    """sum_j d_j (a_j f), the conservative form of (a . nabla) f + f (div a)."""
    grid = f.grid
    if a.c != grid.n:
        raise InvalidFieldError('flux needs %d components, got %d' % (grid.n, a.c))
    coeffs = np.zeros((f.c,) + grid.half_shape, dtype=complex)
    for j in range(grid.n):
        flux = f.values * a.values[j]
        coeffs += np.fft.rfftn(flux, axes=grid.axes) / grid.size * grid.derivative_symbol(j)
    return TorusField(grid, _synthesize_values(grid, coeffs))


def dot(f, g):
    """Pointwise sum over components of f_c g_c."""
    return TorusField(f.grid, np.sum(f.values * g.values, axis=0))


def mean_mu(f):
    """Mean value operator: the k=0 coefficient of each component."""
    return analyze(f).coeffs[f.grid.origin_index()].real


def integrate(f):
    """Integral over the torus of each component (grid quadrature)."""
    return np.mean(f.values.reshape(f.c, -1), axis=1)


def inner(f, g):
    """Integral of f . g; exact when the combined bandwidth stays below N."""
    return float(np.mean(np.sum(f.values * g.values, axis=0)))


def parseval_inner(F, G):
    return float(np.sum(F.grid.half_weights * (F.coeffs * np.conj(G.coeffs)).real))


def sobolev_norm(f, s):
    """Discrete H^s norm, weight (1 + 4 pi^2 |k|^2)^s per mode."""
    F = analyze(f)
    weight = F.grid.half_weights * (1.0 + F.grid.k_squared) ** s
    return float(np.sqrt(np.sum(weight * np.abs(F.coeffs) ** 2)))


def evaluate_at(f, points):
    """
    Evaluate the trigonometric interpolant of f at arbitrary positions.

    points has shape (P, n) (or (P,) on a 1D grid); positions are wrapped onto
    [0, 1) per axis. Returns an array of shape (c, P). Direct summation, cost
    O(N**n) per point.
    """
    grid = f.grid
    points = np.asarray(points, dtype=float)
    if grid.n == 1 and points.ndim == 1:
        points = points[:, np.newaxis]
    if points.ndim != 2 or points.shape[1] != grid.n:
        raise InvalidFieldError('Expected positions of shape (P, %d), got %s' % (grid.n, points.shape))
    points = np.mod(points, 1.0)

    weighted = analyze(f).coeffs * grid.half_weights
    phases = [np.exp(1j * TWO_PI * np.outer(points[:, axis], k))
              for axis, k in enumerate(grid.axis_wavenumbers)]

    values = np.empty((f.c, len(points)))
    for i in range(f.c):
        acc = np.dot(weighted[i], phases[-1].T)
        for axis in reversed(range(grid.n - 1)):
            acc = np.einsum('...kp,pk->...p', acc, phases[axis])
        values[i] = acc.real
    return values


def dealias(F):
    """2/3 rule: zero every coefficient with some |k_i| > N/3."""
    grid = F.grid
    mask = grid.band_mask(grid.N * Constants.DEALIAS_FRACTION)
    return SpectrumField(grid, F.coeffs * mask)


def dealias_field(f):
    return synthesize(dealias(analyze(f)))


def trig_polynomial(grid, terms, c):
    """
    Build a field from (component, k, amplitude, phase) terms, each adding
    amplitude * sin(2 pi k.x + phase) to the given component.
    """
    x = grid.points()
    values = np.zeros((c,) + grid.shape)
    for component, k, amplitude, phase in terms:
        k = np.atleast_1d(np.asarray(k, dtype=float))
        if len(k) != grid.n:
            raise InvalidFieldError('Wave vector %s does not match dimension %d' % (list(k), grid.n))
        if component < 0 or component >= c:
            raise InvalidFieldError('Component %d out of range 0..%d' % (component, c - 1))
        arg = TWO_PI * np.tensordot(k, x, axes=1) + phase
        values[component] += amplitude * np.sin(arg)
    return TorusField(grid, values)


def random_trig_field(grid, c, kmax, rng, amplitude=1.0):
    """Seeded random field with every |k_i| <= kmax, scaled to the given max-norm."""
    raw = rng.standard_normal((c,) + grid.shape)
    coeffs = np.fft.rfftn(raw, axes=grid.axes) * grid.band_mask(kmax)
    values = np.fft.irfftn(coeffs, s=grid.shape, axes=grid.axes)
    scale = np.max(np.abs(values))
    if scale == 0:
        return TorusField(grid, values)
    return TorusField(grid, values * (amplitude / scale))
