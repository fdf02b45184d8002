"""Extraction jobs: corpus scan, encoding, MDF1 emission, manifest assembly.

The emitted manifest matches the classifier package's schema: JSON lines with
id, language, label, speech_features, text_features, split, paths relative to
the manifest's directory.  Re-running a job over unchanged inputs rewrites
byte-identical outputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .audio import load_wav_mono_16k
from .corpora import CORPUS_LANGUAGE, Utterance, read_transcript, scan_corpus
from .encoders import (
    DEFAULT_SPEECH_CHECKPOINT,
    DEFAULT_TEXT_CHECKPOINT,
    SpeechEncoder,
    TextEncoder,
)
from .mdf1 import write_mdf1


@dataclass(frozen=True)
class ExtractionJob:
    corpus: str
    audio_dir: Path
    transcripts_dir: Path
    out_dir: Path
    speech_checkpoint: str = DEFAULT_SPEECH_CHECKPOINT
    text_checkpoint: str = DEFAULT_TEXT_CHECKPOINT
    speech_layer: int = -1  # index into hidden states; -1 is the final layer
    text_layer: int = -1
    label_mode: str = "all"
    language: str | None = None  # only needed for the generic corpus


def extract_speech(audio_path: str | Path, encoder: SpeechEncoder, out_path: str | Path) -> int:
    """Encode one audio file to an MDF1 of frame embeddings; returns frame count."""
    frames = encoder.encode(load_wav_mono_16k(audio_path))
    write_mdf1(frames, out_path)
    return frames.shape[0]


def extract_text(transcript: str, encoder: TextEncoder, out_path: str | Path) -> int:
    """Encode one transcript to an MDF1 of token embeddings; returns token count."""
    tokens = encoder.encode(transcript)
    write_mdf1(tokens, out_path)
    return tokens.shape[0]


def build_manifest(
    utterances: list[Utterance], language: str, out_dir: Path, manifest_name: str = "manifest.jsonl"
) -> Path:
    path = out_dir / manifest_name
    with open(path, "w", encoding="utf-8") as fh:
        for u in sorted(utterances, key=lambda u: u.id):
            record = {
                "id": u.id,
                "language": language,
                "label": u.label,
                "speech_features": f"{u.id}.speech.mdf1",
                "text_features": f"{u.id}.text.mdf1",
                "split": "unassigned",
            }
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    return path


def run_extraction(job: ExtractionJob, log=print) -> Path:
    """Process every utterance in the corpus; returns the manifest path."""
    utterances = scan_corpus(job.corpus, job.audio_dir, job.label_mode)
    language = job.language or CORPUS_LANGUAGE.get(job.corpus)
    if language is None:
        raise ValueError(f"corpus {job.corpus!r} needs an explicit language tag")
    job.out_dir.mkdir(parents=True, exist_ok=True)
    speech_encoder = SpeechEncoder(job.speech_checkpoint, job.speech_layer)
    text_encoder = TextEncoder(job.text_checkpoint, job.text_layer)
    for u in sorted(utterances, key=lambda u: u.id):
        transcript = read_transcript(job.transcripts_dir, u.id)
        n_frames = extract_speech(u.audio_path, speech_encoder, job.out_dir / f"{u.id}.speech.mdf1")
        n_tokens = extract_text(transcript, text_encoder, job.out_dir / f"{u.id}.text.mdf1")
        log(f"{u.id}: {n_frames} frames x {speech_encoder.width}, {n_tokens} tokens x {text_encoder.width}")
    return build_manifest(utterances, language, job.out_dir)
