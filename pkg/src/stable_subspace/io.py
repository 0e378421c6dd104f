"""CSV data matrices and one-id-per-line label files.

Data files hold one row per point; in memory the matrix is ``d x n`` with
points as columns. Floats are written with 17 significant digits so a
save/load round trip is exact.
"""

import csv
import logging

import numpy as np

from .errors import InvalidLabels, NonFinite, Parse, RaggedRows

log = logging.getLogger(__name__)


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def load_data(path, fmt="csv"):
    """Read a point-per-row CSV into a ``d x n`` float matrix.

    A first row containing any non-numeric cell is treated as a header.
    """
    if fmt != "csv":
        raise ValueError(f"unsupported data format {fmt!r}")
    rows = []
    width = None
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if lineno == 1 and not all(_is_number(c) for c in row):
                continue
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise RaggedRows(path, lineno, len(row), f"expected {width} columns, found {len(row)}")
            values = []
            for col, cell in enumerate(row, start=1):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise Parse(path, lineno, col, f"not a number: {cell!r}") from None
            rows.append(values)
    if not rows:
        raise Parse(path, 1, 1, "no data rows")
    m = np.array(rows, dtype=np.float64).T
    if not np.all(np.isfinite(m)):
        raise NonFinite(f"{path} contains NaN or Inf entries")
    return m


def save_data(path, data, header=None):
    m = np.asarray(data, dtype=np.float64)
    with open(path, "w", newline="") as fh:
        if header:
            fh.write(",".join(header) + "\n")
        for point in m.T:
            fh.write(",".join(format(v, ".17g") for v in point) + "\n")


def load_labels(path, return_mapping=False):
    """Read one integer id per line.

    Ids that are not exactly ``0..K-1`` are remapped in sorted order with a
    warning; ``return_mapping`` also returns the ``{original: new}`` map.
    """
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(int(text))
            except ValueError:
                raise Parse(path, lineno, 1, f"not an integer label: {text!r}") from None
    if not values:
        raise InvalidLabels(f"{path} contains no labels")
    labels = np.array(values, dtype=np.int64)
    ids = np.unique(labels)
    mapping = {int(v): i for i, v in enumerate(ids)}
    if not np.array_equal(ids, np.arange(ids.size)):
        log.warning("%s: label ids %s are not 0..%d; remapped", path, ids.tolist(), ids.size - 1)
        labels = np.searchsorted(ids, labels)
    if return_mapping:
        return labels, mapping
    return labels


def save_labels(path, labels):
    with open(path, "w") as fh:
        for v in np.asarray(labels, dtype=np.int64):
            fh.write(f"{int(v)}\n")
