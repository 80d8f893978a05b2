# encoding=utf-8
import unittest
import numpy as np
from torusch.selftest import CHECKS, Check, all_params, random_state, run_selftest
from torusch.spectral import Grid


class TestCheck(unittest.TestCase):

    def testUpperBound(self):
        assert Check('a', 1e-12, 1e-10).passed
        assert not Check('a', 1e-9, 1e-10).passed
        assert Check('a', 1e-12, 1e-10).row() == ['a', 1e-12, '<= 1e-10', 'pass']

    def testLowerBound(self):
        assert Check('b', 0.25, 1e-2, lower=True).passed
        assert not Check('b', 0.0, 1e-2, lower=True).passed

    def testNanFails(self):
        assert not Check('c', float('nan'), 1.0).passed


class TestHelpers(unittest.TestCase):

    def testAllParams(self):
        params = list(all_params())
        assert len(params) == 12
        assert len(set(params)) == 12

    def testRandomStateHunterSaxton(self):
        rng = np.random.default_rng(0)
        for params in all_params():
            w = random_state(params, Grid(params.n, 16), rng)
            if params.is_hunter_saxton:
                assert np.max(np.abs(w.u.at_origin())) == 0.0
            assert (w.rho is None) == (params.gamma == 0)


class TestRun(unittest.TestCase):

    def testAllChecksPass(self):
        results = run_selftest(seed=3)
        assert len(results) == len(CHECKS)
        failed = [(check.name, check.value) for check in results if not check.passed]
        assert failed == []
