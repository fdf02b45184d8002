"""Binary checkpoint container ("MDM1") for both model kinds.

Layout: 4-byte magic "MDM1"; u32 format version; a length-prefixed UTF-8
model-kind tag; a length-prefixed UTF-8 JSON block holding the config and
label names; u32 tensor count; then per tensor a length-prefixed UTF-8 name,
u32 rank, the dims as u32s, and the row-major float32 payload.  All integers
little-endian.  Round-trips are byte-exact.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from . import numerics as nm
from .numerics import Tensor

MAGIC = b"MDM1"
VERSION = 1
KINDS = ("mdat", "baseline")


class CheckpointError(ValueError):
    """An MDM1 checkpoint failed to parse."""


def _pack_str(s: str) -> bytes:
    raw = s.encode("utf-8")
    return struct.pack("<I", len(raw)) + raw


class _Reader:
    def __init__(self, raw: bytes, name: str):
        self.raw = raw
        self.pos = 0
        self.name = name

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.raw):
            raise CheckpointError(f"{self.name}: truncated at byte {self.pos} (wanted {n} more)")
        chunk = self.raw[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def string(self) -> str:
        return self.take(self.u32()).decode("utf-8")


def save_checkpoint(
    path: str | Path, kind: str, config_dict: dict, labels: list[str], params: dict[str, Tensor]
) -> None:
    if kind not in KINDS:
        raise ValueError(f"model kind must be one of {KINDS}, got {kind!r}")
    meta = json.dumps({"config": config_dict, "labels": list(labels)}, sort_keys=True)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", VERSION))
        fh.write(_pack_str(kind))
        fh.write(_pack_str(meta))
        fh.write(struct.pack("<I", len(params)))
        for name in sorted(params):
            arr = np.ascontiguousarray(params[name].data, dtype="<f4")
            fh.write(_pack_str(name))
            fh.write(struct.pack("<I", arr.ndim))
            fh.write(struct.pack(f"<{arr.ndim}I", *arr.shape))
            fh.write(arr.tobytes())


def load_checkpoint(path: str | Path) -> tuple[str, dict, list[str], dict[str, Tensor]]:
    """Returns (kind, config dict, labels, named parameter tensors)."""
    raw = Path(path).read_bytes()
    r = _Reader(raw, str(path))
    if r.take(4) != MAGIC:
        raise CheckpointError(f"{path}: bad magic {raw[:4]!r}, expected {MAGIC!r}")
    version = r.u32()
    if version != VERSION:
        raise CheckpointError(f"{path}: unsupported format version {version}")
    kind = r.string()
    if kind not in KINDS:
        raise CheckpointError(f"{path}: unknown model kind {kind!r}")
    try:
        meta = json.loads(r.string())
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"{path}: malformed metadata: {exc}") from None
    n_tensors = r.u32()
    params: dict[str, Tensor] = {}
    for _ in range(n_tensors):
        name = r.string()
        rank = r.u32()
        dims = struct.unpack(f"<{rank}I", r.take(4 * rank))
        count = int(np.prod(dims)) if rank else 1
        payload = r.take(4 * count)
        arr = np.frombuffer(payload, dtype="<f4").reshape(dims).copy()
        params[name] = nm.tensor(arr, dtype=np.float32, requires_grad=True)
    if r.pos != len(raw):
        raise CheckpointError(f"{path}: {len(raw) - r.pos} trailing bytes")
    return kind, meta["config"], meta["labels"], params


def describe_checkpoint(path: str | Path) -> dict:
    """Header summary for the inspect command (no tensor payload copies)."""
    kind, config, labels, params = load_checkpoint(path)
    return {
        "kind": kind,
        "labels": labels,
        "config": config,
        "tensors": {name: list(t.shape) for name, t in params.items()},
    }
