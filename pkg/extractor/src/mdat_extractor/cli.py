"""Command-line interface of the extractor."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .audio import AudioError
from .corpora import CORPORA, CorpusError
from .encoders import (
    CheckpointError,
    DEFAULT_SPEECH_CHECKPOINT,
    DEFAULT_TEXT_CHECKPOINT,
)
from .extract import ExtractionJob, run_extraction
from .mdf1 import Mdf1Error


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdat-extract",
        description="Convert a labelled audio corpus plus transcripts into MDF1 feature files and a manifest.",
    )
    parser.add_argument("--corpus", required=True, choices=CORPORA, help="corpus layout convention")
    parser.add_argument("--audio-dir", required=True, help="directory holding the corpus WAV files")
    parser.add_argument("--transcripts", required=True, help="directory of <utterance id>.txt transcripts")
    parser.add_argument("--out", required=True, help="output directory for MDF1 files and manifest.jsonl")
    parser.add_argument(
        "--speech-ckpt", default=DEFAULT_SPEECH_CHECKPOINT,
        help="speech encoder checkpoint (hub id or local directory)",
    )
    parser.add_argument(
        "--text-ckpt", default=DEFAULT_TEXT_CHECKPOINT,
        help="text encoder checkpoint (hub id or local directory)",
    )
    parser.add_argument("--speech-layer", type=int, default=-1, help="hidden-state index for speech embeddings")
    parser.add_argument("--text-layer", type=int, default=-1, help="hidden-state index for text embeddings")
    parser.add_argument("--labels", choices=("all", "four"), default="all", help="keep all corpus labels or the shared 4-class subset")
    parser.add_argument("--language", help="language tag for the generic corpus (en|de|it|ur|synthetic)")
    parser.add_argument("--quiet", action="store_true", help="suppress per-utterance progress lines")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = ExtractionJob(
        corpus=args.corpus,
        audio_dir=Path(args.audio_dir),
        transcripts_dir=Path(args.transcripts),
        out_dir=Path(args.out),
        speech_checkpoint=args.speech_ckpt,
        text_checkpoint=args.text_ckpt,
        speech_layer=args.speech_layer,
        text_layer=args.text_layer,
        label_mode=args.labels,
        language=args.language,
    )
    log = (lambda *_: None) if args.quiet else print
    try:
        manifest = run_extraction(job, log=log)
    except (CorpusError, AudioError, CheckpointError, Mdf1Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {manifest}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
