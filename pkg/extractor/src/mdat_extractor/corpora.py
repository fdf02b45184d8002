"""Per-corpus file-layout conventions mapping audio files to labelled utterances.

Conventions (audio under --audio-dir, one UTF-8 transcript per utterance as
<utterance id>.txt under --transcripts):

- emodb: flat WAVs named like 03a01Wa.wav; the sixth character encodes the
  emotion (W anger, L boredom, E disgust, A fear, F happiness, T sadness,
  N neutral).
- emovo: WAVs named like rab-f1-b1.wav; the prefix before the first dash is
  the emotion code (rab, dis, pau, gio, tri, sor, neu).
- urdu: one subdirectory per emotion (Angry/Happy/Neutral/Sad, any case)
  holding that emotion's WAVs.
- iemocap / generic: a labels.csv in the audio dir with `utterance_id,label`
  lines (no header), labels already in canonical names; WAVs may be nested.

Utterance ids are the audio file stems.  Labels normalize onto the shared
names: angry, boredom, disgust, fear, happy, neutral, sad, surprise.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

CORPORA = ("iemocap", "emodb", "emovo", "urdu", "generic")

CANONICAL_FOUR = ("angry", "happy", "neutral", "sad")

CORPUS_LANGUAGE = {"iemocap": "en", "emodb": "de", "emovo": "it", "urdu": "ur"}

EMODB_CODES = {
    "W": "angry",
    "L": "boredom",
    "E": "disgust",
    "A": "fear",
    "F": "happy",
    "T": "sad",
    "N": "neutral",
}

EMOVO_CODES = {
    "rab": "angry",
    "dis": "disgust",
    "pau": "fear",
    "gio": "happy",
    "tri": "sad",
    "sor": "surprise",
    "neu": "neutral",
}

URDU_DIRS = {"angry": "angry", "happy": "happy", "neutral": "neutral", "sad": "sad"}

KNOWN_LABELS = ("angry", "boredom", "disgust", "fear", "happy", "neutral", "sad", "surprise")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Utterance:
    id: str
    audio_path: Path
    label: str


def _wavs(audio_dir: Path) -> list[Path]:
    files = sorted(audio_dir.rglob("*.wav")) + sorted(audio_dir.rglob("*.WAV"))
    if not files:
        raise CorpusError(f"no WAV files under {audio_dir}")
    return files


def _scan_emodb(audio_dir: Path) -> list[Utterance]:
    utterances = []
    for wav in _wavs(audio_dir):
        stem = wav.stem
        if len(stem) < 6:
            raise CorpusError(f"{wav.name}: name too short for the emodb convention")
        code = stem[5].upper()
        if code not in EMODB_CODES:
            raise CorpusError(f"{wav.name}: unknown emodb emotion code {code!r}")
        utterances.append(Utterance(stem, wav, EMODB_CODES[code]))
    return utterances


def _scan_emovo(audio_dir: Path) -> list[Utterance]:
    utterances = []
    for wav in _wavs(audio_dir):
        code = wav.stem.split("-", 1)[0].lower()
        if code not in EMOVO_CODES:
            raise CorpusError(f"{wav.name}: unknown emovo emotion code {code!r}")
        utterances.append(Utterance(wav.stem, wav, EMOVO_CODES[code]))
    return utterances


def _scan_urdu(audio_dir: Path) -> list[Utterance]:
    utterances = []
    for wav in _wavs(audio_dir):
        label = wav.parent.name.lower()
        if label not in URDU_DIRS:
            raise CorpusError(f"{wav}: parent directory {wav.parent.name!r} is not an urdu emotion")
        utterances.append(Utterance(wav.stem, wav, URDU_DIRS[label]))
    return utterances


def _scan_labels_csv(audio_dir: Path) -> list[Utterance]:
    labels_path = audio_dir / "labels.csv"
    if not labels_path.is_file():
        raise CorpusError(f"expected {labels_path} mapping utterance_id,label")
    by_id: dict[str, str] = {}
    for lineno, line in enumerate(labels_path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise CorpusError(f"{labels_path}:{lineno}: expected `utterance_id,label`")
        uid, label = parts[0].strip(), parts[1].strip().lower()
        if label not in KNOWN_LABELS:
            raise CorpusError(f"{labels_path}:{lineno}: unknown label {label!r}")
        by_id[uid] = label
    utterances = []
    for wav in _wavs(audio_dir):
        if wav.stem not in by_id:
            raise CorpusError(f"{wav.name}: no label in {labels_path}")
        utterances.append(Utterance(wav.stem, wav, by_id[wav.stem]))
    return utterances


_SCANNERS = {
    "emodb": _scan_emodb,
    "emovo": _scan_emovo,
    "urdu": _scan_urdu,
    "iemocap": _scan_labels_csv,
    "generic": _scan_labels_csv,
}


def scan_corpus(corpus: str, audio_dir: str | Path, label_mode: str = "all") -> list[Utterance]:
    """Enumerate labelled utterances; `four` keeps only the shared 4-class set."""
    if corpus not in CORPORA:
        raise CorpusError(f"unknown corpus {corpus!r}; expected one of {CORPORA}")
    if label_mode not in ("all", "four"):
        raise CorpusError(f"label mode must be 'all' or 'four', got {label_mode!r}")
    utterances = _SCANNERS[corpus](Path(audio_dir))
    if label_mode == "four":
        utterances = [u for u in utterances if u.label in CANONICAL_FOUR]
        if not utterances:
            raise CorpusError("no utterances left after restricting to the 4-class set")
    return utterances


def read_transcript(transcripts_dir: str | Path, utterance_id: str) -> str:
    path = Path(transcripts_dir) / f"{utterance_id}.txt"
    if not path.is_file():
        raise CorpusError(f"missing transcript {path}")
    text = path.read_text(encoding="utf-8").strip()
    if not text:
        raise CorpusError(f"empty transcript {path}")
    return text
