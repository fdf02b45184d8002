"""Shared fixtures: tiny synthetic corpora and matching model configs."""

import pytest

from mdat import baseline as bl
from mdat import dataio as dio
from mdat import model as md
from mdat.experiments import TrainConfig

SEQ_LEN = 6
SPEECH_DIM = 12
TEXT_DIM = 9


def tiny_mdat_config(**kw):
    base = dict(
        d_model=SPEECH_DIM, d_text=TEXT_DIM, seq_len=SEQ_LEN, n_classes=4,
        n_heads=2, d_ff=16, dropout=0.1,
    )
    base.update(kw)
    return md.MdatConfig(**base)


def tiny_baseline_config(**kw):
    base = dict(
        d_model=SPEECH_DIM, d_text=TEXT_DIM, seq_len=SEQ_LEN, n_classes=4,
        hidden=6, head_width=12, dropout=0.1,
    )
    base.update(kw)
    return bl.BaselineConfig(**base)


def quick_train_config(**kw):
    base = dict(learning_rate=1e-3, epochs=10, seed=0, use_dropout=False, batch_size=16)
    base.update(kw)
    return TrainConfig(**base)


def make_synth(tmp_path, name="corpus", per_class=10, shift=0.0, noise=0.1, seed=0, anchor_seed=None):
    samples, manifest = dio.synth_dataset(
        tmp_path / name,
        n_classes=4,
        per_class=per_class,
        seq_len=SEQ_LEN,
        speech_dim=SPEECH_DIM,
        text_dim=TEXT_DIM,
        shift=shift,
        noise=noise,
        seed=seed,
        anchor_seed=anchor_seed,
    )
    return samples, manifest


@pytest.fixture
def vocab4():
    return dio.LabelVocabulary.canonical_four()


@pytest.fixture
def separable_corpus(tmp_path):
    samples, manifest = make_synth(tmp_path, per_class=10, noise=0.1, seed=0)
    return samples, manifest
