# encoding=utf-8
import csv
import io
import json
import os
import unittest
import pytest
from torusch.constants import Constants
from torusch.diagnostics import DiagnosticsRecord
from torusch.dynamics import EulerState
from torusch.error import OutputError
from torusch.inertia import ModelParams
from torusch.spectral import Grid, TorusField
from torusch.util import format_number, is_power_of_two
from torusch.writer import (check_writable, diagnostics_header, state_document, write_diagnostics_csv, write_json,
                            write_outputs, write_table_csv)


class TestFormatting(unittest.TestCase):

    def testFullPrecision(self):
        assert float(format_number(0.1)) == 0.1
        assert format_number(1.0 / 3) == '0.33333333333333331'

    def testPowerOfTwo(self):
        assert [n for n in range(1, 20) if is_power_of_two(n)] == [1, 2, 4, 8, 16]
        assert not is_power_of_two(0)

    def testHeader(self):
        assert diagnostics_header(2, ['geodesic_residual']) == [
            't', 'hs_energy', 'mu_u_1', 'mu_u_2', 'metric_norm', 'consv1_dev', 'rho_mass_dev', 'geodesic_residual']


class TestFiles(unittest.TestCase):

    @pytest.fixture(autouse=True)
    def inject_tmpdir(self, tmpdir):
        self.tmpdir = tmpdir

    def _read(self, name):
        with io.open(str(self.tmpdir.join(name)), encoding='utf-8') as fp:
            return fp.read()

    def testTable(self):
        write_table_csv(str(self.tmpdir.join('t.csv')), ['name', 'n', 'x', 'ok'], [['a', 3, 0.5, True]])
        assert self._read('t.csv') == 'name,n,x,ok\na,3,0.5,true\n'

    def testCellWithCommaIsQuoted(self):
        path = str(self.tmpdir.join('t.csv'))
        write_table_csv(path, ['check', 'value', 'bound', 'status'], [['rhs_system vs B(w, w)', 1e-12, '<= 1e-10', 'pass']])
        with io.open(path, encoding='utf-8', newline='') as fp:
            rows = list(csv.reader(fp))
        assert rows[1][0] == 'rhs_system vs B(w, w)'
        assert len(rows[1]) == 4
        assert float(rows[1][1]) == 1e-12

    def testTruncatedMarker(self):
        write_table_csv(str(self.tmpdir.join('t.csv')), ['x'], [[1.5]], truncated_at=0.25)
        assert self._read('t.csv').splitlines()[-1] == '# truncated at t=0.25'

    def testDiagnostics(self):
        records = [DiagnosticsRecord(0.0, 2.0, [0.0], 4.0), DiagnosticsRecord(0.5, 2.0, [0.0], 4.0)]
        write_diagnostics_csv(str(self.tmpdir.join('d.csv')), records, 1)
        lines = self._read('d.csv').splitlines()
        assert lines[0] == 't,hs_energy,mu_u_1,metric_norm,consv1_dev,rho_mass_dev'
        assert lines[2] == '0.5,2,0,4,nan,nan'

    def testEmptyDiagnostics(self):
        write_diagnostics_csv(str(self.tmpdir.join('d.csv')), [], 1)
        assert self._read('d.csv') == 't,hs_energy,mu_u_1,metric_norm,consv1_dev,rho_mass_dev\n'

    def testWriteOutputs(self):
        out = str(self.tmpdir)
        write_outputs(out, [DiagnosticsRecord(0.0, 2.0, [0.0], 4.0)], 1, final_state={'t': 0.0})
        assert len(self._read(Constants.DIAGNOSTICS_FILE).splitlines()) == 2
        assert json.loads(self._read(Constants.FINAL_STATE_FILE)) == {'t': 0.0}

    def testJson(self):
        write_json(str(self.tmpdir.join('s.json')), {'b': 1, 'a': [0.5]})
        assert self._read('s.json').index('"a"') < self._read('s.json').index('"b"')
        assert json.loads(self._read('s.json')) == {'a': [0.5], 'b': 1}

    def testStateDocument(self):
        grid = Grid(1, 4)
        params = ModelParams(0, 1, 1)
        w = EulerState(params, TorusField.constant(grid, [1.0]), TorusField.constant(grid, [2.0]))
        document = state_document(0.5, w)
        assert document['params'] == {'alpha': 0, 'beta': 1, 'gamma': 1, 'n': 1, 'b': 2.0}
        assert document['u'] == [[1.0] * 4]
        assert document['rho'] == [[2.0] * 4]
        json.dumps(document)

    def testCreatesOutputDirectory(self):
        path = str(self.tmpdir.join('a', 'b'))
        assert check_writable(path) == path
        assert os.path.isdir(path)

    def testOutputBlocked(self):
        blocker = self.tmpdir.join('blocker')
        blocker.write('')
        with pytest.raises(OutputError):
            check_writable(str(blocker.join('sub')))
