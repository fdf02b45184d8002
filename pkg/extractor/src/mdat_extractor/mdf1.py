"""Writer for the MDF1 feature-file format consumed by the classifier package.

Wire format: 4-byte magic "MDF1"; row count and column count as unsigned
32-bit little-endian; then rows*cols IEEE-754 float32 little-endian values in
row-major order.  No padding, no trailing bytes.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"MDF1"
_HEADER = struct.Struct("<4sII")


class Mdf1Error(ValueError):
    pass


def write_mdf1(matrix: np.ndarray, path: str | Path) -> None:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise Mdf1Error(f"matrix must be T x D with T,D >= 1, got shape {matrix.shape}")
    if not np.isfinite(matrix).all():
        raise Mdf1Error("matrix contains non-finite values")
    payload = np.ascontiguousarray(matrix, dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, matrix.shape[0], matrix.shape[1]))
        fh.write(payload.tobytes())


def read_mdf1(path: str | Path) -> np.ndarray:
    """Reader used for idempotence checks; the classifier package is the consumer of record."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise Mdf1Error(f"{path}: truncated header")
    magic, rows, cols = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise Mdf1Error(f"{path}: bad magic {magic!r}")
    expected = _HEADER.size + rows * cols * 4
    if len(raw) != expected:
        raise Mdf1Error(f"{path}: size {len(raw)} != header-implied {expected}")
    return np.frombuffer(raw, dtype="<f4", offset=_HEADER.size).reshape(rows, cols).copy()
