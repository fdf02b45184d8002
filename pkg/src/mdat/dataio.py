"""Feature-file and manifest I/O, length alignment, and synthetic datasets.

Feature sequences live in MDF1 files: 4-byte magic "MDF1", then row and
column counts as unsigned 32-bit little-endian, then the row-major float32
payload, nothing else.  Manifests are JSON lines, one utterance per line,
with feature paths relative to the manifest's directory.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MAGIC = b"MDF1"
_HEADER = struct.Struct("<4sII")

LANGUAGES = ("en", "de", "it", "ur", "synthetic")


class FeatureFileError(ValueError):
    """An MDF1 file failed to parse."""


class ManifestError(ValueError):
    """A manifest record failed validation."""


@dataclass(frozen=True)
class FeatureSequence:
    """T x D float32 embedding matrix for one utterance in one modality."""

    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError(f"feature sequence must be T x D with T,D >= 1, got shape {v.shape}")
        if v.dtype != np.float32:
            object.__setattr__(self, "values", v.astype(np.float32))
        if not np.isfinite(self.values).all():
            raise ValueError("feature sequence contains non-finite values")

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class LabelVocabulary:
    """Ordered emotion class names; index mapping is positional."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate class names in vocabulary: {self.names}")
        if not self.names:
            raise ValueError("vocabulary must contain at least one class")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise KeyError(f"label {label!r} not in vocabulary {self.names}") from None

    def __contains__(self, label: str) -> bool:
        return label in self.names

    @classmethod
    def canonical_four(cls) -> "LabelVocabulary":
        return cls(("angry", "happy", "neutral", "sad"))

    @classmethod
    def emodb_seven(cls) -> "LabelVocabulary":
        return cls(("angry", "boredom", "disgust", "fear", "happy", "neutral", "sad"))

    @classmethod
    def emovo_six(cls) -> "LabelVocabulary":
        return cls(("angry", "disgust", "fear", "happy", "sad", "surprise"))


# Per-corpus class counts usable as manifest validators (the corpora
# themselves are licensed and never shipped).  The English-corpus subset size
# is nominal only; published experiments varied it.
CORPUS_CLASS_COUNTS: dict[str, dict[str, int]] = {
    "urdu": {"angry": 100, "happy": 100, "neutral": 100, "sad": 100},
    "emodb_four": {"angry": 127, "sad": 143, "neutral": 79, "happy": 71},
    "emovo_four": {"angry": 84, "happy": 84, "neutral": 84, "sad": 84},
}


@dataclass(frozen=True)
class Sample:
    id: str
    language: str
    label: str
    speech_features: Path
    text_features: Path
    split: str = "unassigned"

    def __post_init__(self):
        if self.language not in LANGUAGES:
            raise ValueError(f"unknown language tag {self.language!r}; expected one of {LANGUAGES}")
        if self.split not in ("train", "test", "unassigned"):
            raise ValueError(f"unknown split tag {self.split!r}")


# ---------------------------------------------------------------------------
# MDF1 feature files


def write_feature_file(seq: FeatureSequence, path: str | Path) -> None:
    rows, cols = seq.values.shape
    if rows >= 2**32 or cols >= 2**32:
        raise FeatureFileError(f"dimensions {rows} x {cols} exceed the 32-bit header fields")
    payload = np.ascontiguousarray(seq.values, dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, rows, cols))
        fh.write(payload.tobytes())


def read_feature_file(path: str | Path) -> FeatureSequence:
    with open(path, "rb") as fh:
        raw = fh.read()
    return decode_feature_bytes(raw, str(path))


def decode_feature_bytes(raw: bytes, name: str = "<bytes>") -> FeatureSequence:
    if len(raw) < _HEADER.size:
        raise FeatureFileError(f"{name}: truncated header ({len(raw)} bytes)")
    magic, rows, cols = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FeatureFileError(f"{name}: bad magic {magic!r}, expected {MAGIC!r}")
    if rows < 1 or cols < 1:
        raise FeatureFileError(f"{name}: invalid dimensions {rows} x {cols}")
    expected = rows * cols * 4  # python ints: the header product cannot overflow here
    got = len(raw) - _HEADER.size
    if got < expected:
        raise FeatureFileError(f"{name}: truncated payload, expected {expected} bytes, found {got}")
    if got > expected:
        raise FeatureFileError(f"{name}: {got - expected} trailing bytes after payload")
    values = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size).reshape(rows, cols)
    if not np.isfinite(values).all():
        raise FeatureFileError(f"{name}: payload contains non-finite values")
    return FeatureSequence(values.copy())


def validate_feature_header(path: str | Path) -> tuple[int, int]:
    """Check magic, dimensions and exact file size without loading the payload."""
    p = Path(path)
    size = p.stat().st_size
    with open(p, "rb") as fh:
        head = fh.read(_HEADER.size)
    if len(head) < _HEADER.size:
        raise FeatureFileError(f"{p}: truncated header ({len(head)} bytes)")
    magic, rows, cols = _HEADER.unpack(head)
    if magic != MAGIC:
        raise FeatureFileError(f"{p}: bad magic {magic!r}, expected {MAGIC!r}")
    if rows < 1 or cols < 1:
        raise FeatureFileError(f"{p}: invalid dimensions {rows} x {cols}")
    expected = _HEADER.size + rows * cols * 4
    if size != expected:
        raise FeatureFileError(f"{p}: file is {size} bytes, header implies {expected}")
    return rows, cols


def align_length(seq: FeatureSequence, target_length: int) -> FeatureSequence:
    """Pad with trailing zero rows or keep the first `target_length` rows."""
    if target_length < 1:
        raise ValueError(f"target length must be >= 1, got {target_length}")
    t = seq.length
    if t == target_length:
        return seq
    if t > target_length:
        return FeatureSequence(seq.values[:target_length].copy())
    padded = np.zeros((target_length, seq.dim), dtype=np.float32)
    padded[:t] = seq.values
    return FeatureSequence(padded)


# ---------------------------------------------------------------------------
# manifests


_MANIFEST_FIELDS = ("id", "language", "label", "speech_features", "text_features", "split")


def write_manifest(samples: list[Sample], path: str | Path) -> None:
    base = Path(path).parent
    with open(path, "w", encoding="utf-8") as fh:
        for s in samples:
            record = {
                "id": s.id,
                "language": s.language,
                "label": s.label,
                "speech_features": _relative(s.speech_features, base),
                "text_features": _relative(s.text_features, base),
                "split": s.split,
            }
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def _relative(p: Path, base: Path) -> str:
    try:
        return Path(p).relative_to(base).as_posix()
    except ValueError:
        return Path(p).as_posix()


def load_manifest(path: str | Path, vocab: LabelVocabulary, check_files: bool = True) -> list[Sample]:
    """Parse and validate a JSON-lines manifest; order-preserving."""
    path = Path(path)
    base = path.parent
    samples: list[Sample] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ManifestError(f"{path}:{lineno}: malformed record: {exc}") from None
            if not isinstance(record, dict):
                raise ManifestError(f"{path}:{lineno}: record is not an object")
            missing = [k for k in _MANIFEST_FIELDS if k not in record]
            if missing:
                raise ManifestError(f"{path}:{lineno}: missing fields {missing}")
            unknown = [k for k in record if k not in _MANIFEST_FIELDS]
            if unknown:
                raise ManifestError(f"{path}:{lineno}: unknown fields {unknown}")
            if record["label"] not in vocab:
                raise ManifestError(
                    f"{path}:{lineno}: label {record['label']!r} not in vocabulary {vocab.names}"
                )
            try:
                sample = Sample(
                    id=record["id"],
                    language=record["language"],
                    label=record["label"],
                    speech_features=base / record["speech_features"],
                    text_features=base / record["text_features"],
                    split=record["split"],
                )
            except ValueError as exc:
                raise ManifestError(f"{path}:{lineno}: {exc}") from None
            if check_files:
                for fpath in (sample.speech_features, sample.text_features):
                    if not fpath.is_file():
                        raise ManifestError(f"{path}:{lineno}: feature file missing: {fpath}")
                    validate_feature_header(fpath)
            samples.append(sample)
    return samples


def class_counts(samples: list[Sample]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for s in samples:
        counts[s.label] = counts.get(s.label, 0) + 1
    return counts


def validate_corpus_counts(samples: list[Sample], corpus: str) -> None:
    expected = CORPUS_CLASS_COUNTS.get(corpus)
    if expected is None:
        raise KeyError(f"no count profile for corpus {corpus!r}; known: {sorted(CORPUS_CLASS_COUNTS)}")
    actual = class_counts(samples)
    if actual != expected:
        raise ManifestError(f"corpus {corpus!r} counts {actual} do not match expected {expected}")


# ---------------------------------------------------------------------------
# splits


def split_dataset(
    samples: list[Sample], train_fraction: float, seed: int
) -> tuple[list[Sample], list[Sample]]:
    """Stratified, seed-deterministic partition into train/test sample lists.

    Per class the train share is round(fraction * n), clamped so neither side
    is empty.  Returned samples carry retagged split fields; input order is
    preserved within each side.
    """
    if not (0.0 < train_fraction < 1.0):
        raise ValueError(f"train fraction must lie in (0, 1), got {train_fraction}")
    by_label: dict[str, list[int]] = {}
    for i, s in enumerate(samples):
        by_label.setdefault(s.label, []).append(i)
    for label, idx in by_label.items():
        if len(idx) < 2:
            raise ValueError(f"class {label!r} has {len(idx)} sample(s); need at least 2 to split")
    rng = np.random.default_rng(seed)
    train_idx: set[int] = set()
    for label in sorted(by_label):
        idx = by_label[label]
        n_train = int(round(train_fraction * len(idx)))
        n_train = min(max(n_train, 1), len(idx) - 1)
        chosen = rng.permutation(len(idx))[:n_train]
        train_idx.update(idx[c] for c in chosen)
    train = [_retag(samples[i], "train") for i in range(len(samples)) if i in train_idx]
    test = [_retag(samples[i], "test") for i in range(len(samples)) if i not in train_idx]
    return train, test


def _retag(s: Sample, split: str) -> Sample:
    return Sample(s.id, s.language, s.label, s.speech_features, s.text_features, split)


# ---------------------------------------------------------------------------
# synthetic stand-in data


def synth_dataset(
    out_dir: str | Path,
    n_classes: int = 4,
    per_class: int = 20,
    seq_len: int = 8,
    speech_dim: int = 16,
    text_dim: int = 12,
    shift: float = 0.0,
    noise: float = 0.1,
    seed: int = 0,
    anchor_seed: int | None = None,
    vocab: LabelVocabulary | None = None,
) -> tuple[list[Sample], Path]:
    """Write a balanced synthetic corpus of feature files plus its manifest.

    Rows of a class-c sample are drawn around a fixed per-class anchor; all
    classes additionally drift by `shift` along a unit direction, emulating a
    domain gap between corpora.  Anchors and drift derive from `anchor_seed`
    (defaults to `seed`) so two corpora can share class geometry while their
    sample noise differs.  Fully deterministic per argument tuple.
    """
    if min(n_classes, per_class, seq_len, speech_dim, text_dim) < 1:
        raise ValueError("all counts must be positive")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if vocab is None:
        if n_classes == 4:
            vocab = LabelVocabulary.canonical_four()
        else:
            vocab = LabelVocabulary(tuple(f"class{i}" for i in range(n_classes)))
    if len(vocab) != n_classes:
        raise ValueError(f"vocabulary size {len(vocab)} != n_classes {n_classes}")

    anchor_rng = np.random.default_rng(seed if anchor_seed is None else anchor_seed)
    anchors_s = _unit_rows(anchor_rng, n_classes, speech_dim)
    anchors_t = _unit_rows(anchor_rng, n_classes, text_dim)
    drift_s = _unit_rows(anchor_rng, 1, speech_dim)[0]
    drift_t = _unit_rows(anchor_rng, 1, text_dim)[0]

    rng = np.random.default_rng(seed)
    samples: list[Sample] = []
    for c, label in enumerate(vocab.names):
        mean_s = anchors_s[c] + shift * drift_s
        mean_t = anchors_t[c] + shift * drift_t
        for j in range(per_class):
            sid = f"{label}_{j:04d}"
            speech = (mean_s + noise * rng.standard_normal((seq_len, speech_dim))).astype(np.float32)
            text = (mean_t + noise * rng.standard_normal((seq_len, text_dim))).astype(np.float32)
            sp = out_dir / f"{sid}.speech.mdf1"
            tp = out_dir / f"{sid}.text.mdf1"
            write_feature_file(FeatureSequence(speech), sp)
            write_feature_file(FeatureSequence(text), tp)
            samples.append(Sample(sid, "synthetic", label, sp, tp))
    manifest_path = out_dir / "manifest.jsonl"
    write_manifest(samples, manifest_path)
    return samples, manifest_path


def _unit_rows(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    rows = rng.standard_normal((n, dim))
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)
