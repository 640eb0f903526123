"""JSON matrix files with complex entries stored as ``[re, im]`` pairs.

Schema::

    {"n": 3, "data": [[[1.0, 0.0], [0.0, -2.5], ...], ...]}

Rectangular output matrices carry ``"rows"`` and ``"cols"`` instead of
``"n"``. A ``.csv`` file is read as a real matrix.
"""

import csv
import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .numerics import InputError


def encode_matrix(M):
    M = np.asarray(M, dtype=complex)
    rows, cols = M.shape
    data = [[[float(z.real), float(z.imag)] for z in row] for row in M]
    if rows == cols:
        return {"n": rows, "data": data}
    return {"rows": rows, "cols": cols, "data": data}


def _entry(value, where):
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise InputError(f"{where}: expected an [re, im] pair of numbers, got {value!r}")
    re, im = value
    if not (math.isfinite(re) and math.isfinite(im)):
        raise InputError(f"{where}: entries must be finite")
    return complex(re, im)


def decode_matrix(obj, square=True):
    """Validate a decoded JSON object and return its matrix.

    Error messages name the offending field.
    """
    if not isinstance(obj, dict):
        raise InputError("top level: expected a JSON object")
    if "data" not in obj:
        raise InputError("data: missing field")
    data = obj["data"]
    if not isinstance(data, list) or not data:
        raise InputError("data: expected a nonempty list of rows")
    for i, row in enumerate(data):
        if not isinstance(row, list):
            raise InputError(f"data[{i}]: expected a list of [re, im] pairs")
    widths = {len(row) for row in data}
    if len(widths) != 1:
        raise InputError(f"data: rows have different lengths {sorted(widths)}")
    cols = widths.pop()
    if square and cols != len(data):
        raise InputError(f"data: matrix not square ({len(data)}x{cols})")
    M = np.array(
        [[_entry(v, f"data[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(data)],
        dtype=complex,
    )
    if "n" in obj:
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InputError(f"n: expected a positive integer, got {n!r}")
        if square and n != M.shape[0]:
            raise InputError(f"n: declared {n} but data is {M.shape[0]}x{M.shape[1]}")
    elif square:
        raise InputError("n: missing field")
    return M


def _read_csv(path):
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
        values = [[float(c) for c in r] for r in rows]
    except ValueError as exc:
        raise InputError(f"{path}: bad CSV number ({exc})") from None
    if not values:
        raise InputError(f"{path}: empty CSV")
    widths = {len(r) for r in values}
    if len(widths) != 1 or widths.pop() != len(values):
        raise InputError(f"{path}: matrix not square")
    M = np.array(values, dtype=complex)
    if not np.all(np.isfinite(M)):
        raise InputError(f"{path}: entries must be finite")
    return M


def read_matrix(path):
    """Read a square matrix from a MatrixFile JSON (or real CSV) path."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _read_csv(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return decode_matrix(obj)


def write_matrix(path, M, **extra):
    obj = encode_matrix(M)
    obj.update(extra)
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def digest(M):
    """SHA-256 of the shape and little-endian complex128 bytes of ``M``."""
    M = np.ascontiguousarray(M, dtype="<c16")
    h = hashlib.sha256(f"{M.shape[0]}x{M.shape[1]}:".encode())
    h.update(M.tobytes())
    return h.hexdigest()
