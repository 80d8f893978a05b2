# encoding=utf-8
import unittest
import pytest
import numpy as np
import numpy.testing as npt
from torusch.error import InvalidFieldError
from torusch.spectral import (TWO_PI, Grid, TorusField, advect, analyze, dealias_field, differentiate, divergence,
                              evaluate_at, flux_divergence, gradient, inner, integrate, mean_mu, parseval_inner,
                              random_trig_field, sobolev_norm, synthesize, transpose_jacobian_dot, trig_polynomial)


class TestGrid(unittest.TestCase):

    def testShapes(self):
        grid = Grid(2, 16)
        assert grid.shape == (16, 16)
        assert grid.half_shape == (16, 9)
        assert grid.points().shape == (2, 16, 16)
        assert grid.flat_points().shape == (256, 2)

    def testRejectsNonPowerOfTwo(self):
        with pytest.raises(InvalidFieldError):
            Grid(1, 12)
        with pytest.raises(InvalidFieldError):
            Grid(0, 16)

    def testEquality(self):
        assert Grid(2, 16) == Grid(2, 16)
        assert Grid(2, 16) != Grid(1, 16)
        assert len(set([Grid(1, 8), Grid(1, 8)])) == 1

    def testBandMask(self):
        grid = Grid(1, 16)
        assert int(np.sum(grid.band_mask(2))) == 3


class TestTorusField(unittest.TestCase):

    def setUp(self):
        self.grid = Grid(2, 8)

    def testScalarSamplesGetComponentAxis(self):
        f = TorusField(self.grid, np.zeros((8, 8)))
        assert f.c == 1

    def testRejectsNonFinite(self):
        values = np.zeros((1, 8, 8))
        values[0, 3, 3] = np.nan
        with pytest.raises(InvalidFieldError):
            TorusField(self.grid, values)

    def testRejectsWrongShape(self):
        with pytest.raises(InvalidFieldError):
            TorusField(self.grid, np.zeros((2, 8, 4)))

    def testImmutable(self):
        f = TorusField.zeros(self.grid, 2)
        with pytest.raises(ValueError):
            f.values[0, 0, 0] = 1.0

    def testConstant(self):
        f = TorusField.constant(self.grid, [1.0, -2.0])
        npt.assert_allclose(f.at_origin(), [1.0, -2.0])
        assert f.max_norm() == 2.0

    def testFromFunctionBroadcastsScalars(self):
        f = TorusField.from_function(self.grid, lambda x, y: [np.sin(TWO_PI * x), 1.0])
        assert f.c == 2
        npt.assert_allclose(f.values[1], 1.0)

    def testMixedGridsRejected(self):
        with pytest.raises(InvalidFieldError):
            TorusField.zeros(self.grid) + TorusField.zeros(Grid(2, 16))


class TestTransforms(unittest.TestCase):

    def testRoundtrip(self):
        rng = np.random.default_rng(1)
        for n in (1, 2):
            f = TorusField(Grid(n, 16), rng.standard_normal((2,) + (16,) * n))
            npt.assert_allclose(synthesize(analyze(f)).values, f.values, atol=1e-13)

    def testCoefficientNormalization(self):
        grid = Grid(1, 16)
        f = TorusField.from_function(grid, lambda x: 3.0 + np.cos(TWO_PI * 2 * x))
        coeffs = analyze(f).coeffs[0]
        npt.assert_allclose(coeffs[0], 3.0, atol=1e-14)
        npt.assert_allclose(coeffs[2], 0.5, atol=1e-14)

    def testParseval(self):
        rng = np.random.default_rng(2)
        grid = Grid(2, 16)
        f = random_trig_field(grid, 2, 5, rng)
        g = random_trig_field(grid, 2, 5, rng)
        npt.assert_allclose(parseval_inner(analyze(f), analyze(g)), inner(f, g), atol=1e-13)
        npt.assert_allclose(analyze(f).energy(), inner(f, f), rtol=1e-12)


class TestDerivatives(unittest.TestCase):

    def testDifferentiateSine(self):
        grid = Grid(1, 32)
        f = TorusField.from_function(grid, lambda x: np.sin(TWO_PI * 3 * x))
        x = grid.points()[0]
        npt.assert_allclose(differentiate(f, 0).values[0], TWO_PI * 3 * np.cos(TWO_PI * 3 * x), atol=1e-11)

    def testNyquistDropped(self):
        grid = Grid(1, 8)
        f = TorusField.from_function(grid, lambda x: np.cos(TWO_PI * 4 * x))
        npt.assert_allclose(differentiate(f, 0).values, 0.0, atol=1e-13)

    def testBadAxis(self):
        with pytest.raises(InvalidFieldError):
            differentiate(TorusField.zeros(Grid(1, 8)), 1)

    def testGradientAndDivergence(self):
        grid = Grid(2, 16)
        x, y = grid.points()
        f = TorusField(grid, np.sin(TWO_PI * x) * np.cos(TWO_PI * 2 * y))
        g = gradient(f)
        npt.assert_allclose(g.values[0], TWO_PI * np.cos(TWO_PI * x) * np.cos(TWO_PI * 2 * y), atol=1e-11)
        npt.assert_allclose(g.values[1], -2 * TWO_PI * np.sin(TWO_PI * x) * np.sin(TWO_PI * 2 * y), atol=1e-11)
        laplacian = divergence(g)
        npt.assert_allclose(laplacian.values[0], -5 * TWO_PI ** 2 * f.values[0], atol=1e-9)

    def testGradientNeedsScalar(self):
        with pytest.raises(InvalidFieldError):
            gradient(TorusField.zeros(Grid(1, 8), 2))

    def testAdvectAgainstProductRule(self):
        grid = Grid(2, 16)
        x, y = grid.points()
        a = TorusField(grid, [np.ones_like(x), np.zeros_like(x)])
        f = TorusField(grid, [np.sin(TWO_PI * x), np.cos(TWO_PI * y)])
        adv = advect(a, f)
        npt.assert_allclose(adv.values[0], TWO_PI * np.cos(TWO_PI * x), atol=1e-11)
        npt.assert_allclose(adv.values[1], 0.0, atol=1e-11)

    def testTransposeJacobianDot(self):
        grid = Grid(2, 16)
        x, y = grid.points()
        u = TorusField(grid, [np.sin(TWO_PI * y), np.zeros_like(x)])
        m = TorusField(grid, [np.ones_like(x), np.zeros_like(x)])
        # components sum_i d_j u_i m_i = (d_x u_1, d_y u_1)
        out = transpose_jacobian_dot(u, m)
        npt.assert_allclose(out.values[0], 0.0, atol=1e-11)
        npt.assert_allclose(out.values[1], TWO_PI * np.cos(TWO_PI * y), atol=1e-11)

    def testFluxDivergenceMatchesExpandedForm(self):
        rng = np.random.default_rng(3)
        grid = Grid(2, 32)
        a = random_trig_field(grid, 2, 3, rng)
        f = random_trig_field(grid, 2, 3, rng)
        expanded = advect(a, f) + f * divergence(a).values
        npt.assert_allclose(flux_divergence(a, f).values, expanded.values, atol=1e-9)


class TestIntegrals(unittest.TestCase):

    def testMeanAndIntegral(self):
        grid = Grid(2, 16)
        f = TorusField.from_function(grid, lambda x, y: [2.0 + np.sin(TWO_PI * x), np.cos(TWO_PI * y) - 1.0])
        npt.assert_allclose(mean_mu(f), [2.0, -1.0], atol=1e-14)
        npt.assert_allclose(integrate(f), [2.0, -1.0], atol=1e-14)

    def testSobolevNorm(self):
        grid = Grid(1, 16)
        f = TorusField.from_function(grid, lambda x: np.sin(TWO_PI * x))
        npt.assert_allclose(sobolev_norm(f, 0), np.sqrt(0.5), rtol=1e-13)
        npt.assert_allclose(sobolev_norm(f, 1), np.sqrt(0.5 * (1 + TWO_PI ** 2)), rtol=1e-13)


class TestEvaluateAt(unittest.TestCase):

    def testMatchesClosedForm1D(self):
        grid = Grid(1, 16)
        f = TorusField.from_function(grid, lambda x: np.sin(TWO_PI * x) + 0.5 * np.cos(TWO_PI * 3 * x))
        points = np.array([0.013, 0.25, 0.77, 1.4, -0.2])
        expected = np.sin(TWO_PI * points) + 0.5 * np.cos(TWO_PI * 3 * points)
        npt.assert_allclose(evaluate_at(f, points)[0], expected, atol=1e-12)

    def testMatchesClosedForm2D(self):
        grid = Grid(2, 16)
        f = TorusField.from_function(grid, lambda x, y: [np.sin(TWO_PI * x) * np.cos(TWO_PI * 2 * y), 1.0])
        points = np.array([[0.1, 0.3], [0.55, 0.91], [0.0, 0.0]])
        expected = np.sin(TWO_PI * points[:, 0]) * np.cos(TWO_PI * 2 * points[:, 1])
        values = evaluate_at(f, points)
        npt.assert_allclose(values[0], expected, atol=1e-12)
        npt.assert_allclose(values[1], 1.0, atol=1e-12)

    def testReproducesGridSamples(self):
        rng = np.random.default_rng(4)
        grid = Grid(2, 8)
        f = random_trig_field(grid, 1, 3, rng)
        npt.assert_allclose(evaluate_at(f, grid.flat_points())[0], f.values[0].ravel(), atol=1e-12)

    def testBadShape(self):
        with pytest.raises(InvalidFieldError):
            evaluate_at(TorusField.zeros(Grid(2, 8)), np.zeros((3, 3)))


class TestDealias(unittest.TestCase):

    def testRemovesHighModes(self):
        grid = Grid(1, 32)
        f = TorusField.from_function(grid, lambda x: np.sin(TWO_PI * 2 * x) + np.sin(TWO_PI * 12 * x))
        kept = TorusField.from_function(grid, lambda x: np.sin(TWO_PI * 2 * x))
        npt.assert_allclose(dealias_field(f).values, kept.values, atol=1e-13)

    def testBandLimitedUnchanged(self):
        rng = np.random.default_rng(5)
        f = random_trig_field(Grid(2, 16), 2, 5, rng)
        npt.assert_allclose(dealias_field(f).values, f.values, atol=1e-13)


class TestTrigPolynomial(unittest.TestCase):

    def testTerms(self):
        grid = Grid(2, 8)
        f = trig_polynomial(grid, [(0, (1, 0), 2.0, 0.0), (1, (0, 1), 1.0, np.pi / 2)], 2)
        x, y = grid.points()
        npt.assert_allclose(f.values[0], 2.0 * np.sin(TWO_PI * x), atol=1e-14)
        npt.assert_allclose(f.values[1], np.cos(TWO_PI * y), atol=1e-14)

    def testBadComponent(self):
        with pytest.raises(InvalidFieldError):
            trig_polynomial(Grid(1, 8), [(2, (1,), 1.0, 0.0)], 1)

    def testRandomFieldScaling(self):
        rng = np.random.default_rng(6)
        f = random_trig_field(Grid(2, 16), 2, 2, rng, amplitude=0.3)
        npt.assert_allclose(f.max_norm(), 0.3)
