"""Comparison model: per-modality bidirectional LSTM encoders with late fusion.

Text is projected onto the speech width with the same kernel-1 map the main
model uses, each modality runs through a single BiLSTM layer, the per-step
outputs are mean-pooled over time, concatenated across modalities, and pushed
through a regularized dense+dropout head to the softmax output.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from . import numerics as nm
from .model import glorot, zeros_param
from .numerics import Tensor

# gate block order inside the fused 4h weight matrices
GATES = ("input", "forget", "cell", "output")


@dataclass(frozen=True)
class BaselineConfig:
    d_model: int  # speech feature dim; text is projected onto it
    d_text: int
    seq_len: int
    n_classes: int = 4
    hidden: int = 16  # per-direction LSTM width
    head_width: int = 32
    dropout: float = 0.1
    l2_head: float = 1e-4  # weight decay on the head dense layer

    def __post_init__(self):
        if min(self.d_model, self.d_text, self.seq_len, self.n_classes, self.hidden, self.head_width) < 1:
            raise ValueError("all dimensions must be positive")
        if not (0.0 <= self.dropout < 1.0):
            raise ValueError(f"dropout must lie in [0, 1), got {self.dropout}")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, d: dict) -> "BaselineConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)


def init_params(config: BaselineConfig, rng: np.random.Generator, dtype=np.float32) -> dict[str, Tensor]:
    d, h = config.d_model, config.hidden
    p: dict[str, Tensor] = {}
    p["text_proj.weight"] = glorot(rng, config.d_text, d, (config.d_text, d), dtype)
    p["text_proj.bias"] = zeros_param((d,), dtype)
    for modality in ("speech", "text"):
        for direction in ("fwd", "bwd"):
            prefix = f"lstm.{modality}.{direction}"
            p[f"{prefix}.w_input"] = glorot(rng, d, 4 * h, (d, 4 * h), dtype)
            p[f"{prefix}.w_hidden"] = glorot(rng, h, 4 * h, (h, 4 * h), dtype)
            p[f"{prefix}.bias"] = zeros_param((4 * h,), dtype)
    p["head.dense.weight"] = glorot(rng, 4 * h, config.head_width, (4 * h, config.head_width), dtype)
    p["head.dense.bias"] = zeros_param((config.head_width,), dtype)
    p["head.out.weight"] = glorot(
        rng, config.head_width, config.n_classes, (config.head_width, config.n_classes), dtype
    )
    p["head.out.bias"] = zeros_param((config.n_classes,), dtype)
    return p


def _lstm_direction(
    rows: list[Tensor], params: dict[str, Tensor], prefix: str, hidden: int, dtype
) -> list[Tensor]:
    """Run one direction over already-ordered 1 x D input rows; returns per-step 1 x h outputs."""
    w_in = params[f"{prefix}.w_input"]
    w_hid = params[f"{prefix}.w_hidden"]
    bias = params[f"{prefix}.bias"]
    h_prev = nm.tensor(np.zeros((1, hidden)), dtype=dtype)
    c_prev = nm.tensor(np.zeros((1, hidden)), dtype=dtype)
    outputs: list[Tensor] = []
    for x_t in rows:
        gates = nm.add(nm.matmul(x_t, w_in), nm.affine(h_prev, w_hid, bias))
        i = nm.sigmoid(nm.slice_cols(gates, 0, hidden))
        f = nm.sigmoid(nm.slice_cols(gates, hidden, 2 * hidden))
        g = nm.tanh(nm.slice_cols(gates, 2 * hidden, 3 * hidden))
        o = nm.sigmoid(nm.slice_cols(gates, 3 * hidden, 4 * hidden))
        c_prev = nm.add(nm.multiply(f, c_prev), nm.multiply(i, g))
        h_prev = nm.multiply(o, nm.tanh(c_prev))
        outputs.append(h_prev)
    return outputs


def bilstm_encode(x: Tensor, params: dict[str, Tensor], modality: str, hidden: int) -> Tensor:
    """T x D -> T x 2h: forward and backward recurrences, feature-concatenated."""
    dtype = x.dtype
    t_len = x.shape[0]
    if x.requires_grad:
        # keep row extraction inside the graph (x may be a projected tensor)
        picks = np.eye(t_len)
        rows = [nm.matmul(nm.tensor(picks[t : t + 1], dtype=dtype), x) for t in range(t_len)]
    else:
        rows = [nm.tensor(x.data[t].reshape(1, -1), dtype=dtype) for t in range(t_len)]
    fwd = _lstm_direction(rows, params, f"lstm.{modality}.fwd", hidden, dtype)
    bwd = _lstm_direction(rows[::-1], params, f"lstm.{modality}.bwd", hidden, dtype)
    bwd = bwd[::-1]  # re-align so step t pairs forward past with backward future
    return nm.concat_cols([nm.concat_rows(fwd), nm.concat_rows(bwd)])


def head_weight_penalty(params: dict[str, Tensor], coeff: float) -> Tensor:
    """coeff * sum of squares of the head dense weights, as a 1 x 1 tensor."""
    w = params["head.dense.weight"]
    sq = nm.multiply(w, w)
    ones_left = nm.tensor(np.ones((1, w.shape[0])), dtype=w.dtype)
    ones_right = nm.tensor(np.ones((w.shape[1], 1)), dtype=w.dtype)
    return nm.scale(nm.matmul(nm.matmul(ones_left, sq), ones_right), coeff)


def forward(
    speech: Tensor | np.ndarray,
    text: Tensor | np.ndarray,
    params: dict[str, Tensor],
    config: BaselineConfig,
    rng: np.random.Generator | None = None,
    training: bool = False,
    lengths: tuple[int, int] | None = None,  # accepted for interface parity; unused
) -> Tensor:
    """Probability row over classes for one utterance."""
    dtype = params["head.out.weight"].dtype
    if not isinstance(speech, Tensor):
        speech = nm.tensor(speech, dtype=dtype)
    if not isinstance(text, Tensor):
        text = nm.tensor(text, dtype=dtype)
    if speech.shape[0] != config.seq_len or text.shape[0] != config.seq_len:
        raise nm.ShapeError(
            f"inputs must be aligned to length {config.seq_len}, got {speech.shape[0]} and {text.shape[0]}"
        )
    text = nm.affine(text, params["text_proj.weight"], params["text_proj.bias"])
    enc_s = bilstm_encode(speech, params, "speech", config.hidden)
    enc_t = bilstm_encode(text, params, "text", config.hidden)
    pooled = nm.concat_cols([nm.mean_rows(enc_s), nm.mean_rows(enc_t)])
    dense = nm.relu(nm.affine(pooled, params["head.dense.weight"], params["head.dense.bias"]))
    dense = nm.dropout(dense, config.dropout, rng, training)
    logits = nm.affine(dense, params["head.out.weight"], params["head.out.bias"])
    return nm.softmax_rows(logits)
