"""Dense matrix and label file formats.

Matrices are dense float64 arrays oriented features x samples; a matrix on
disk is either a headerless CSV or the binary ``.dlrm`` format (magic
``DLRM``, little-endian u32 rows/cols header, row-major float64 payload).
Both directions reject non-finite entries.
"""

import struct

import numpy as np

MAGIC = b"DLRM"
_HEADER = struct.Struct("<4sII")


class MatrixIOError(Exception):
    """Base class for matrix/label file errors."""


class BadHeaderError(MatrixIOError):
    """Magic bytes wrong or header truncated."""


class DimensionError(MatrixIOError):
    """Declared dimensions empty, inconsistent, or payload size mismatch."""


class NonNumericError(MatrixIOError):
    """Token that does not parse as a number."""


class NonFiniteError(MatrixIOError):
    """NaN or infinite entry encountered."""


def as_data_matrix(values):
    """Validate and return a 2-D finite float64 array (features x samples)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError("empty dimension")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("matrix contains NaN or Inf entries")
    return np.ascontiguousarray(arr)


def format_value(v):
    """Shortest decimal rendering that round-trips; integral floats drop
    the ".0"."""
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def _infer_format(path):
    name = str(path)
    if name.endswith(".dlrm"):
        return "binary"
    if name.endswith(".csv"):
        return "csv"
    raise MatrixIOError(f"cannot infer format from {name!r}; pass format explicitly")


def read_matrix(path, fmt=None):
    """Read a matrix from ``path`` in the given format ("csv" or "binary").

    With ``fmt=None`` the format is inferred from the file extension.
    """
    if fmt is None:
        fmt = _infer_format(path)
    if fmt == "binary":
        return _read_binary(path)
    if fmt == "csv":
        return _read_csv(path)
    raise MatrixIOError(f"unknown matrix format {fmt!r}")


def write_matrix(m, path, fmt=None):
    """Write a matrix to ``path``; the binary format round-trips bit-exactly."""
    m = as_data_matrix(m)
    if fmt is None:
        fmt = _infer_format(path)
    if fmt == "binary":
        _write_binary(m, path)
    elif fmt == "csv":
        _write_csv(m, path)
    else:
        raise MatrixIOError(f"unknown matrix format {fmt!r}")


def _read_binary(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise BadHeaderError("file too short for header")
    magic, rows, cols = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise BadHeaderError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if rows == 0 or cols == 0:
        raise DimensionError("empty dimension")
    payload = raw[_HEADER.size:]
    expected = rows * cols * 8
    if len(payload) != expected:
        raise DimensionError(
            f"payload is {len(payload)} bytes, header {rows}x{cols} needs {expected}"
        )
    values = np.frombuffer(payload, dtype="<f8").reshape(rows, cols)
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("matrix contains NaN or Inf entries")
    return values.astype(np.float64, copy=True)


def _write_binary(m, path):
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, m.shape[0], m.shape[1]))
        fh.write(m.astype("<f8", copy=False).tobytes(order="C"))


def _read_csv(path):
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln for ln in (line.strip() for line in fh) if ln]
    if not lines:
        raise DimensionError("empty dimension")
    rows = []
    width = None
    for i, line in enumerate(lines):
        tokens = line.split(",")
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise DimensionError(f"row {i} has {len(tokens)} fields, expected {width}")
        row = []
        for tok in tokens:
            try:
                row.append(float(tok))
            except ValueError:
                raise NonNumericError(f"row {i}: bad token {tok.strip()!r}") from None
        rows.append(row)
    values = np.array(rows, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("matrix contains NaN or Inf entries")
    return values


def _write_csv(m, path):
    with open(path, "w", encoding="ascii") as fh:
        for row in m:
            fh.write(",".join(format_value(v) for v in row))
            fh.write("\n")


def read_labels(path):
    """Read 0-based integer labels, one per line."""
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln for ln in (line.strip() for line in fh) if ln]
    labels = []
    for i, line in enumerate(lines):
        try:
            value = int(line)
        except ValueError:
            raise NonNumericError(f"line {i}: bad label {line!r}") from None
        if value < 0:
            raise MatrixIOError(f"line {i}: negative label {value}")
        labels.append(value)
    if not labels:
        raise DimensionError("empty label file")
    return np.array(labels, dtype=np.int64)


def write_labels(labels, path):
    labels = np.asarray(labels)
    with open(path, "w", encoding="ascii") as fh:
        for value in labels:
            fh.write(f"{int(value)}\n")
