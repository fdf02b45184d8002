"""WAV decoding and conversion to the 16 kHz mono float stream encoders expect."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import scipy.io.wavfile
import scipy.signal

TARGET_RATE = 16_000


class AudioError(ValueError):
    pass


def load_wav_mono_16k(path: str | Path) -> np.ndarray:
    """Decode a WAV file to float32 mono at 16 kHz, resampling if needed."""
    try:
        rate, data = scipy.io.wavfile.read(path)
    except (ValueError, OSError) as exc:
        raise AudioError(f"cannot decode {path}: {exc}") from None
    if data.size == 0:
        raise AudioError(f"{path}: empty audio stream")
    if data.ndim == 2:
        data = data.mean(axis=1)
    if np.issubdtype(data.dtype, np.integer):
        scale = float(np.iinfo(data.dtype).max)
        samples = data.astype(np.float32) / scale
    else:
        samples = data.astype(np.float32)
    if rate != TARGET_RATE:
        samples = scipy.signal.resample_poly(samples, TARGET_RATE, rate).astype(np.float32)
    if samples.size == 0 or not np.isfinite(samples).all():
        raise AudioError(f"{path}: decoding produced no usable samples")
    return samples
