"""Fixtures: tiny local checkpoints at the default widths, plus small WAV corpora.

The real default checkpoints are multi-GB downloads; these stand-ins share
the exact architectures and output widths (1024 speech / 768 text) so the
conformance tests exercise the same code paths offline.
"""

import os

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")

import numpy as np
import pytest
import scipy.io.wavfile


@pytest.fixture(scope="session")
def speech_checkpoint(tmp_path_factory):
    from transformers import Wav2Vec2Config, Wav2Vec2Model

    path = tmp_path_factory.mktemp("ckpt") / "speech-1024"
    config = Wav2Vec2Config(
        hidden_size=1024,
        num_hidden_layers=1,
        num_attention_heads=4,
        intermediate_size=256,
        conv_dim=[64] * 7,
    )
    import torch

    torch.manual_seed(0)
    Wav2Vec2Model(config).save_pretrained(path)
    return str(path)


@pytest.fixture(scope="session")
def text_checkpoint(tmp_path_factory):
    from tokenizers import Tokenizer, models, pre_tokenizers, processors, trainers
    from transformers import PreTrainedTokenizerFast, XLMRobertaConfig, XLMRobertaModel

    path = tmp_path_factory.mktemp("ckpt") / "text-768"
    tok = Tokenizer(models.WordPiece(unk_token="<unk>"))
    tok.pre_tokenizer = pre_tokenizers.Whitespace()
    trainer = trainers.WordPieceTrainer(vocab_size=200, special_tokens=["<s>", "</s>", "<pad>", "<unk>"])
    tok.train_from_iterator(
        ["ich bin heute sehr froh", "hello there how are you", "sono molto felice oggi", "one two three"],
        trainer,
    )
    tok.post_processor = processors.TemplateProcessing(
        single="<s> $A </s>",
        special_tokens=[("<s>", tok.token_to_id("<s>")), ("</s>", tok.token_to_id("</s>"))],
    )
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tok, bos_token="<s>", eos_token="</s>", pad_token="<pad>", unk_token="<unk>"
    )
    config = XLMRobertaConfig(
        hidden_size=768,
        num_hidden_layers=1,
        num_attention_heads=4,
        intermediate_size=256,
        vocab_size=fast.vocab_size,
        max_position_embeddings=64,
    )
    import torch

    torch.manual_seed(1)
    XLMRobertaModel(config).save_pretrained(path)
    fast.save_pretrained(path)
    return str(path)


def write_tone(path, seconds=0.6, rate=16_000, freq=330.0, amplitude=0.3):
    t = np.arange(int(seconds * rate)) / rate
    wav = (np.sin(2 * np.pi * freq * t) * amplitude * 32767).astype(np.int16)
    scipy.io.wavfile.write(path, rate, wav)


@pytest.fixture
def emodb_corpus(tmp_path):
    """Four emodb-convention utterances (one anger, happiness, sadness, neutral)."""
    audio = tmp_path / "audio"
    transcripts = tmp_path / "transcripts"
    audio.mkdir()
    transcripts.mkdir()
    names = ["03a01Wa", "08a02Fb", "09b01Tc", "11b02Nd"]
    texts = [
        "ich bin heute sehr froh",
        "hello there how are you",
        "sono molto felice oggi",
        "one two three",
    ]
    for i, (name, text) in enumerate(zip(names, texts)):
        write_tone(audio / f"{name}.wav", freq=220.0 + 110.0 * i)
        (transcripts / f"{name}.txt").write_text(text, encoding="utf-8")
    return audio, transcripts
