# encoding=utf-8
import unittest
import pytest
import numpy as np
import numpy.testing as npt
from torusch.curvature import (CURVATURE_PARAMS, GL3Coefficients, ModeField, b_residual_curve, closed_form_S,
                               curvature_R_term, example_field, gl3_inertia_symbol, metric_b_residual,
                               positivity_scan, quadrature_grid, sectional_S, solve_gl3, unit_field, verify_gl3)
from torusch.error import InvalidConfigError, VerificationError
from torusch.spectral import TWO_PI, random_trig_field


class TestQuadratureGrid(unittest.TestCase):

    def testSizes(self):
        assert quadrature_grid(1).N == 16
        assert quadrature_grid(2).N == 16
        assert quadrature_grid(3).N == 32
        assert quadrature_grid(4).N == 32
        assert quadrature_grid(6).N == 64


class TestClosedForm(unittest.TestCase):

    def testValues(self):
        npt.assert_allclose(closed_form_S(1, 1, 0), 3.0 / 16)
        npt.assert_allclose(closed_form_S(1, 1, 1), 3.0 / 16)
        npt.assert_allclose(closed_form_S(1, 2, 1), 9.0 / 40)
        npt.assert_allclose(closed_form_S(1, 2, 0), 6.0 / 40)


@pytest.mark.parametrize('m1,m2', [(1, 1), (1, 2), (2, 1), (2, 3), (1, 4), (4, 4)])
def test_sectional_curvature_closed_form(m1, m2):
    grid = quadrature_grid(max(m1, m2))
    v = example_field(grid, m1, m2)
    for i in (0, 1):
        npt.assert_allclose(sectional_S(unit_field(grid, i), v), closed_form_S(m1, m2, i), atol=1e-10)


class TestCurvatureTerm(unittest.TestCase):

    def testVanishesForConstantField(self):
        rng = np.random.default_rng(41)
        grid = quadrature_grid(4)
        for i in (0, 1):
            for _ in range(10):
                w = random_trig_field(grid, 2, 2, rng, 0.1)
                assert abs(curvature_R_term(unit_field(grid, i), w, CURVATURE_PARAMS)) < 1e-10

    def testSelfPairing(self):
        grid = quadrature_grid(2)
        v = example_field(grid, 1, 2)
        npt.assert_allclose(sectional_S(v, v), 0.0, atol=1e-9)


class TestPositivityScan(unittest.TestCase):

    def testRows(self):
        rows = positivity_scan([1, 2])
        assert len(rows) == 4
        assert [(r['m1'], r['m2']) for r in rows] == [(1, 1), (1, 2), (2, 1), (2, 2)]
        for row in rows:
            assert row['S_e1'] > 0 and row['S_e2'] > 0
            npt.assert_allclose(row['S_e1'], row['closed_form_e1'], atol=1e-10)
            npt.assert_allclose(row['S_e2'], row['closed_form_e2'], atol=1e-10)
            npt.assert_allclose(row['k1'], TWO_PI * row['m1'])

    def testDuplicatesCollapsed(self):
        assert len(positivity_scan([1, 1])) == 1

    def testRejectsNonPositive(self):
        with pytest.raises(InvalidConfigError):
            positivity_scan([0, 1])
        with pytest.raises(InvalidConfigError):
            positivity_scan([])


class TestGL3(unittest.TestCase):

    def testCoefficients(self):
        coeffs = GL3Coefficients((1, 2), 2)
        npt.assert_allclose(coeffs.n_sq, 5 * TWO_PI ** 2)
        npt.assert_allclose(np.diag(coeffs.beta_n), [5 * TWO_PI, 7 * TWO_PI])

    def testBadWaveVector(self):
        with pytest.raises(InvalidConfigError):
            GL3Coefficients((0, 0), 2)
        with pytest.raises(InvalidConfigError):
            GL3Coefficients((1, 2, 3), 2)

    @staticmethod
    def _n_sq(m):
        return TWO_PI ** 2 * (m[0] ** 2 + m[1] ** 2)

    def testDiagonalSolution(self):
        for b in (2.0, 3.0, 5.0):
            npt.assert_allclose(solve_gl3((1, 1), b), [2.0 / b * self._n_sq((1, 1))] * 2)

    def testGenericSolutionAtTwo(self):
        npt.assert_allclose(solve_gl3((1, 2), 2.0), [self._n_sq((1, 2))] * 2)

    def testGenericSolutionSplitsAwayFromTwo(self):
        a = solve_gl3((1, 2), 3.0)
        assert abs(a[0] - a[1]) > 1e-3 * abs(a[0])

    def testVerifyPrinted(self):
        n_sq = self._n_sq((1, 1))
        assert verify_gl3((1, 1), 3, (2.0 / 3 * n_sq,) * 2) < 1e-12
        assert verify_gl3((1, 2), 2, ModeField.single((1, 2), (self._n_sq((1, 2)),) * 2)) < 1e-12

    def testVerifyWrongCandidate(self):
        n_sq = self._n_sq((1, 1))
        npt.assert_allclose(verify_gl3((1, 1), 3, (n_sq, n_sq)), 0.5, rtol=1e-12)

    def testDegenerate(self):
        with pytest.raises(VerificationError):
            solve_gl3((1, -3), 2.0)

    def testInertiaSymbolMeanMode(self):
        npt.assert_allclose(gl3_inertia_symbol(2.0)((0, 0)), [1.0, 1.0])


class TestModeField(unittest.TestCase):

    def testAdvectSingleModes(self):
        u = ModeField.single((1, 0), (1.0, 0.0))
        f = ModeField.single((0, 1), (0.0, 2.0))
        # (u . grad) f = u_1 d_x f, and f does not depend on x
        assert u.advect(f).max_abs() == 0.0
        g = ModeField.single((1, 0), (0.0, 2.0))
        out = u.advect(g)
        assert list(out.modes) == [(2, 0)]
        npt.assert_allclose(out.modes[(2, 0)], [0.0, 2j * TWO_PI])

    def testArithmetic(self):
        a = ModeField.single((1, 1))
        assert (a - a).max_abs() == 0.0
        npt.assert_allclose((a + a).modes[(1, 1)], [2.0, 2.0])


@pytest.mark.parametrize('b,expected', [(2.0, 0.0), (3.0, 0.25), (4.0, 0.4), (5.0, 0.5)])
def test_metric_b_residual(b, expected):
    npt.assert_allclose(metric_b_residual(b), expected, atol=1e-12)


def test_b_residual_curve():
    curve = b_residual_curve([2, 3], (1, 1))
    assert [b for b, _ in curve] == [2.0, 3.0]
    assert curve[0][1] < 1e-10
    assert curve[1][1] > 1e-2
