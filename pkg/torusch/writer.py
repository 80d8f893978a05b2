# encoding=utf8
"""CSV and JSON output. Numbers are written with 17 significant digits."""

import csv
import io
import json
import logging
import os

from .constants import Constants
from .error import OutputError
from .util import format_number

logger = logging.getLogger(__name__)


def diagnostics_header(n, extra_columns=()):
    return (['t', 'hs_energy'] + ['mu_u_%d' % (i + 1) for i in range(n)]
            + ['metric_norm', 'consv1_dev', 'rho_mass_dev'] + list(extra_columns))


def _format_cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return '%d' % value
    return format_number(value)


def check_writable(out_dir):
    """Create out_dir if needed; raise OutputError unless files can be written there."""
    try:
        if not os.path.isdir(out_dir):
            os.makedirs(out_dir)
    except OSError as error:
        raise OutputError('Cannot create output directory %s: %s' % (out_dir, error), key='out_dir')
    if not os.access(out_dir, os.W_OK):
        raise OutputError('Output directory %s is not writable' % out_dir, key='out_dir')
    return out_dir


def write_table_csv(path, header, rows, truncated_at=None):
    """Comma-separated table, quoted where needed; a trailing '# truncated at t=...' line marks an interrupted run."""
    with io.open(path, 'w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(value) for value in row])
        if truncated_at is not None:
            fp.write(u'# truncated at t=%s\n' % format_number(truncated_at))
    logger.info('Wrote %d rows: %s', len(rows), path)


def write_diagnostics_csv(path, records, n, extra_columns=(), truncated_at=None):
    header = diagnostics_header(n, extra_columns)
    rows = [record.row(extra_columns) for record in records]
    write_table_csv(path, header, rows, truncated_at)


def write_json(path, data):
    with io.open(path, 'w', encoding='utf-8') as fp:
        fp.write(json.dumps(data, sort_keys=True, indent=2))
        fp.write(u'\n')
    logger.info('Wrote json: %s', path)


def state_document(t, state):
    """Final Eulerian state as a JSON-ready dict of nested sample lists."""
    document = {
        't': t,
        'params': state.params.as_dict(),
        'grid': {'n': state.grid.n, 'N': state.grid.N},
        'u': state.u.values.tolist(),
    }
    if state.rho is not None:
        document['rho'] = state.rho.values.tolist()
    return document


def write_outputs(out_dir, records, n, extra_columns=(), truncated_at=None, final_state=None):
    """
    Diagnostics table of a dynamics run, plus final_state.json when a final state is given.
    The summary is written separately by the runner once the mode has finished.
    """
    write_diagnostics_csv(os.path.join(out_dir, Constants.DIAGNOSTICS_FILE), records, n, extra_columns,
                          truncated_at)
    if final_state is not None:
        write_json(os.path.join(out_dir, Constants.FINAL_STATE_FILE), final_state)
