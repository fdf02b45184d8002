"""Pre-trained speech and text encoders producing per-frame / per-token embeddings.

Checkpoints load through the transformers auto classes, so identifiers may be
hub names (the defaults are the smallest public multilingual checkpoints) or
local directories.  Extraction always runs in eval mode under no_grad on CPU,
making outputs deterministic for fixed inputs and checkpoints.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SPEECH_CHECKPOINT = "facebook/wav2vec2-xls-r-300m"
DEFAULT_TEXT_CHECKPOINT = "xlm-roberta-base"


class CheckpointError(RuntimeError):
    pass


class SpeechEncoder:
    """Frame embeddings from a wav2vec2-family encoder (XLS-R by default)."""

    def __init__(self, checkpoint: str = DEFAULT_SPEECH_CHECKPOINT, layer: int = -1):
        import torch
        from transformers import AutoModel

        self.layer = layer
        try:
            self.model = AutoModel.from_pretrained(checkpoint)
        except Exception as exc:
            raise CheckpointError(f"cannot load speech checkpoint {checkpoint!r}: {exc}") from None
        self.model.eval()
        self._torch = torch

    @property
    def width(self) -> int:
        return int(self.model.config.hidden_size)

    def encode(self, samples_16k: np.ndarray) -> np.ndarray:
        torch = self._torch
        batch = torch.from_numpy(np.ascontiguousarray(samples_16k, dtype=np.float32)).unsqueeze(0)
        with torch.no_grad():
            out = self.model(batch, output_hidden_states=True)
        frames = out.hidden_states[self.layer][0]
        return frames.numpy().astype(np.float32)


class TextEncoder:
    """Token embeddings from a RoBERTa-family encoder (multilingual by default)."""

    def __init__(self, checkpoint: str = DEFAULT_TEXT_CHECKPOINT, layer: int = -1):
        import torch
        from transformers import AutoModel, AutoTokenizer

        self.layer = layer
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(checkpoint)
            self.model = AutoModel.from_pretrained(checkpoint)
        except Exception as exc:
            raise CheckpointError(f"cannot load text checkpoint {checkpoint!r}: {exc}") from None
        self.model.eval()
        self._torch = torch

    @property
    def width(self) -> int:
        return int(self.model.config.hidden_size)

    def encode(self, transcript: str) -> np.ndarray:
        if not transcript or not transcript.strip():
            raise ValueError("transcript is empty")
        torch = self._torch
        batch = self.tokenizer(transcript.strip(), return_tensors="pt", truncation=True)
        with torch.no_grad():
            out = self.model(**batch, output_hidden_states=True)
        tokens = out.hidden_states[self.layer][0]
        return tokens.numpy().astype(np.float32)
