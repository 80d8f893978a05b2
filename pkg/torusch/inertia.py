# encoding=utf8
"""
The inertia operator A = alpha*mu + beta - Laplacian, applied and inverted as a
Fourier multiplier, and its block extension acting on (u, rho) states.
"""

import logging
import numpy as np

from .constants import Constants
from .error import InadmissibleParametersError, InvalidStateError, RangeError
from .spectral import SpectrumField, TorusField, analyze, synthesize

logger = logging.getLogger(__name__)


class ModelParams(object):
    """
    Equation selector: (alpha, beta, gamma), the dimension n and the
    b-equation parameter b (only read by the b-equation right-hand side).
    """

    def __init__(self, alpha, beta, gamma=0, n=1, b=2.0):
        for name, value in (('alpha', alpha), ('beta', beta), ('gamma', gamma)):
            if value not in (0, 1):
                msg = 'inadmissible parameters: %s must be 0 or 1, got %r' % (name, value)
                raise InadmissibleParametersError(alpha, beta, gamma, message=msg)
        if alpha + beta == 2:
            raise InadmissibleParametersError(alpha, beta, gamma)
        if int(n) != n or n < 1:
            raise InvalidStateError('Dimension must be a positive integer, got %r' % (n,))
        if n > 2:
            logger.warning('Dimension n=%d is accepted but untested', n)
        self.alpha = int(alpha)
        self.beta = int(beta)
        self.gamma = int(gamma)
        self.n = int(n)
        self.b = float(b)

    def __eq__(self, other):
        return isinstance(other, ModelParams) and self.as_tuple() == other.as_tuple()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return 'ModelParams(alpha=%d, beta=%d, gamma=%d, n=%d, b=%g)' % self.as_tuple()

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.n, self.b)

    def as_dict(self):
        return {'alpha': self.alpha, 'beta': self.beta, 'gamma': self.gamma, 'n': self.n, 'b': self.b}

    @property
    def is_hunter_saxton(self):
        return self.alpha == 0 and self.beta == 0

    @property
    def components(self):
        """Number of stacked state components: n, or 2n with rho."""
        return self.n * (1 + self.gamma)

    def replace(self, **kwargs):
        values = self.as_dict()
        values.update(kwargs)
        return ModelParams(**values)

    def symbol(self, grid):
        """Multiplier of A on the half spectrum: beta + 4 pi^2 |k|^2, and alpha + beta at k=0."""
        symbol = self.beta + grid.k_squared
        symbol[(0,) * grid.n] = self.alpha + self.beta
        return symbol


def _check_grid(u, params):
    if u.grid.n != params.n:
        raise InvalidStateError('Field on %r does not match dimension n=%d' % (u.grid, params.n))


def apply_A(u, params):
    """Componentwise A u."""
    _check_grid(u, params)
    F = analyze(u)
    return synthesize(SpectrumField(u.grid, F.coeffs * params.symbol(u.grid)))


def invert_A(v, params):
    """
    Componentwise A^-1 v.

    For alpha = beta = 0 the inverse of -Laplacian is taken on mean-free data
    and normalized so the result vanishes at the origin. Data whose mean
    exceeds 1e-10 is rejected with RangeError; above max|v| = 1 the bound
    scales with max|v|, as the roundoff of the FFT mean does.
    """
    _check_grid(v, params)
    grid = v.grid
    F = analyze(v)
    if not params.is_hunter_saxton:
        return synthesize(SpectrumField(grid, F.coeffs / params.symbol(grid)))

    mean = F.coeffs[grid.origin_index()].real
    scale = max(1.0, v.max_norm())
    if np.any(np.abs(mean) > Constants.HS_MEAN_TOLERANCE * scale):
        raise RangeError(mean=mean)

    inverse = np.zeros(grid.half_shape)
    nonzero = grid.k_squared > 0
    inverse[nonzero] = 1.0 / grid.k_squared[nonzero]
    w = synthesize(SpectrumField(grid, F.coeffs * inverse))
    origin = w.at_origin().reshape((-1,) + (1,) * grid.n)
    return TorusField(grid, w.values - origin)


def apply_block(w, params):
    """Block operator: A on the velocity part, identity on rho."""
    return w.replace(u=apply_A(w.u, params))


def invert_block(w, params):
    return w.replace(u=invert_A(w.u, params))
