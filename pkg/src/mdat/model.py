"""The multimodal dual-attention classifier.

Pipeline per utterance: project the text sequence onto the speech width with
a kernel-1 convolution, run one joint graph-attention update over the stacked
speech+text positions, cross-attend the two modalities, refine each modality
with a single post-norm transformer encoder layer, then mean-pool, concatenate
and classify.  Each of the three attention stages can be switched off
independently, which yields the seven ablation wirings; the classifier input
width follows whatever stack is active.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import numerics as nm
from .numerics import Tensor

COATT_MODES = ("context", "gate")

# (use_graph, use_coatt, use_transformer) for ablation models 1..7
ABLATION_FLAGS: dict[int, tuple[bool, bool, bool]] = {
    1: (True, True, True),
    2: (True, True, False),
    3: (True, False, False),
    4: (False, True, False),
    5: (False, False, True),
    6: (False, True, True),
    7: (True, False, True),
}

LAYER_NORM_EPS = 1e-5
MASK_FILL = -1e9


@dataclass(frozen=True)
class MdatConfig:
    """Architecture hyperparameters and module switches."""

    d_model: int  # shared width after projection; equals the speech feature dim
    d_text: int  # raw text feature dim before projection
    seq_len: int  # aligned sequence length for both modalities
    n_classes: int = 4
    graph_dim: int | None = None  # graph-attention output width; defaults to d_model
    n_heads: int = 4
    d_ff: int | None = None  # feed-forward width; defaults to 4x encoder width
    leaky_slope: float = 0.2
    dropout: float = 0.1
    coatt_mode: str = "context"
    use_graph: bool = True
    use_coatt: bool = True
    use_transformer: bool = True
    mask_padding: bool = False

    def __post_init__(self):
        if min(self.d_model, self.d_text, self.seq_len, self.n_classes, self.n_heads) < 1:
            raise ValueError("all dimensions must be positive")
        if self.coatt_mode not in COATT_MODES:
            raise ValueError(f"coatt_mode must be one of {COATT_MODES}, got {self.coatt_mode!r}")
        if not (0.0 <= self.dropout < 1.0):
            raise ValueError(f"dropout must lie in [0, 1), got {self.dropout}")
        if not (0.0 < self.leaky_slope <= 1.0):
            raise ValueError(f"leaky_slope must lie in (0, 1], got {self.leaky_slope}")
        if self.use_transformer and self.encoder_width % self.n_heads != 0:
            raise ValueError(
                f"encoder width {self.encoder_width} not divisible by n_heads {self.n_heads}"
            )

    @property
    def graph_width(self) -> int:
        return self.d_model if self.graph_dim is None else self.graph_dim

    @property
    def coatt_width(self) -> int:
        """Per-modality width entering co-attention."""
        return self.graph_width if self.use_graph else self.d_model

    @property
    def encoder_width(self) -> int:
        """Per-modality width entering the transformer encoder (and classifier pooling)."""
        base = self.coatt_width
        return 2 * base if self.use_coatt else base

    @property
    def ff_width(self) -> int:
        return 4 * self.encoder_width if self.d_ff is None else self.d_ff

    def with_ablation(self, model_number: int) -> "MdatConfig":
        if model_number not in ABLATION_FLAGS:
            raise ValueError(f"ablation model must be 1..7, got {model_number}")
        g, c, t = ABLATION_FLAGS[model_number]
        return replace(self, use_graph=g, use_coatt=c, use_transformer=t)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, d: dict) -> "MdatConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)


@dataclass
class AttentionTrace:
    """Optional capture of attention intermediates for tests and inspection."""

    graph_nodes: np.ndarray | None = None  # stacked inputs, 2T x D
    graph_hidden: np.ndarray | None = None  # transformed nodes, 2T x U
    graph_scores: np.ndarray | None = None  # pairwise scores after LeakyReLU
    graph_attention: np.ndarray | None = None  # row-stochastic 2T x 2T
    coatt_speech_hidden: np.ndarray | None = None
    coatt_text_hidden: np.ndarray | None = None
    coatt_similarity: np.ndarray | None = None  # T x T
    coatt_speech_attention: np.ndarray | None = None
    coatt_text_attention: np.ndarray | None = None
    coatt_speech_context: np.ndarray | None = None
    coatt_text_context: np.ndarray | None = None
    self_attention: dict[str, list[np.ndarray]] = field(default_factory=dict)  # per modality, per head


# ---------------------------------------------------------------------------
# parameter initialization


def glorot(rng: np.random.Generator, fan_in: int, fan_out: int, shape, dtype) -> Tensor:
    bound = math.sqrt(6.0 / (fan_in + fan_out))
    return nm.tensor(rng.uniform(-bound, bound, size=shape), dtype=dtype, requires_grad=True)


def zeros_param(shape, dtype) -> Tensor:
    return nm.tensor(np.zeros(shape), dtype=dtype, requires_grad=True)


def ones_param(shape, dtype) -> Tensor:
    return nm.tensor(np.ones(shape), dtype=dtype, requires_grad=True)


def _encoder_params(prefix: str, d: int, d_ff: int, rng, dtype) -> dict[str, Tensor]:
    p: dict[str, Tensor] = {}
    for name in ("q", "k", "v", "out"):
        p[f"{prefix}.attn.{name}.weight"] = glorot(rng, d, d, (d, d), dtype)
        if name != "k":
            # a key bias shifts every score in a row equally and the row
            # softmax cancels it exactly, so it would be a dead parameter
            p[f"{prefix}.attn.{name}.bias"] = zeros_param((d,), dtype)
    p[f"{prefix}.norm1.scale"] = ones_param((d,), dtype)
    p[f"{prefix}.norm1.shift"] = zeros_param((d,), dtype)
    p[f"{prefix}.ff.w1"] = glorot(rng, d, d_ff, (d, d_ff), dtype)
    p[f"{prefix}.ff.b1"] = zeros_param((d_ff,), dtype)
    p[f"{prefix}.ff.w2"] = glorot(rng, d_ff, d, (d_ff, d), dtype)
    p[f"{prefix}.ff.b2"] = zeros_param((d,), dtype)
    p[f"{prefix}.norm2.scale"] = ones_param((d,), dtype)
    p[f"{prefix}.norm2.shift"] = zeros_param((d,), dtype)
    return p


def init_params(config: MdatConfig, rng: np.random.Generator, dtype=np.float32) -> dict[str, Tensor]:
    """Fresh named parameter tensors for the given wiring; seed-deterministic."""
    d, u = config.d_model, config.graph_width
    p: dict[str, Tensor] = {}
    p["text_proj.weight"] = glorot(rng, config.d_text, d, (config.d_text, d), dtype)
    p["text_proj.bias"] = zeros_param((d,), dtype)
    if config.use_graph:
        p["gat.weight"] = glorot(rng, d, u, (d, u), dtype)
        p["gat.attn_src"] = glorot(rng, u, 1, (u, 1), dtype)
        p["gat.attn_dst"] = glorot(rng, u, 1, (u, 1), dtype)
    if config.use_coatt:
        w = config.coatt_width
        p["coatt.speech.weight"] = glorot(rng, w, w, (w, w), dtype)
        p["coatt.speech.bias"] = zeros_param((w,), dtype)
        p["coatt.text.weight"] = glorot(rng, w, w, (w, w), dtype)
        p["coatt.text.bias"] = zeros_param((w,), dtype)
    if config.use_transformer:
        enc_w = config.encoder_width
        p.update(_encoder_params("enc.speech", enc_w, config.ff_width, rng, dtype))
        p.update(_encoder_params("enc.text", enc_w, config.ff_width, rng, dtype))
    p["head.weight"] = glorot(
        rng, 2 * config.encoder_width, config.n_classes, (2 * config.encoder_width, config.n_classes), dtype
    )
    p["head.bias"] = zeros_param((config.n_classes,), dtype)
    return p


def cast_params(params: dict[str, Tensor], dtype) -> dict[str, Tensor]:
    return {
        name: nm.tensor(t.data.astype(dtype), dtype=dtype, requires_grad=t.requires_grad)
        for name, t in params.items()
    }


# ---------------------------------------------------------------------------
# building blocks


def _const(arr: np.ndarray, dtype) -> Tensor:
    return nm.tensor(arr, dtype=dtype)


def _row_selector(total: int, start: int, stop: int, dtype) -> Tensor:
    """(stop-start) x total selector so matmul(sel, x) picks a row block."""
    sel = np.zeros((stop - start, total))
    sel[np.arange(stop - start), np.arange(start, stop)] = 1.0
    return _const(sel, dtype)


def _key_mask(valid: np.ndarray, n_rows: int, dtype) -> Tensor | None:
    """Additive mask sending attention scores at padded key columns to -inf."""
    if valid.all():
        return None
    row = np.where(valid, 0.0, MASK_FILL)
    return _const(np.tile(row, (n_rows, 1)), dtype)


def _valid_rows(n: int, length: int | None) -> np.ndarray:
    v = np.ones(n, dtype=bool)
    if length is not None and length < n:
        v[length:] = False
    return v


def project_inputs(speech: Tensor, text: Tensor, params: dict[str, Tensor]) -> tuple[Tensor, Tensor]:
    """Speech passes through; text is mapped position-wise onto the speech width."""
    w = params["text_proj.weight"]
    if speech.shape[1] != w.shape[1]:
        raise nm.ShapeError(
            f"speech width {speech.shape[1]} != model width {w.shape[1]}"
        )
    projected = nm.affine(text, w, params["text_proj.bias"])
    return speech, projected


def graph_node_update(
    nodes: Tensor,
    params: dict[str, Tensor],
    leaky_slope: float,
    key_mask: Tensor | None = None,
    trace: AttentionTrace | None = None,
) -> Tensor:
    """One attention update over a complete self-looped graph of feature rows.

    Score of edge i->j is LeakyReLU(a_src . h_i + a_dst . h_j); each node
    aggregates the transformed features of all nodes under its softmaxed
    score row.  Permutation-equivariant over node order by construction.
    """
    n = nodes.shape[0]
    dtype = nodes.dtype
    hidden = nm.matmul(nodes, params["gat.weight"])
    src = nm.matmul(hidden, params["gat.attn_src"])  # n x 1
    dst = nm.matmul(hidden, params["gat.attn_dst"])  # n x 1
    ones_row = _const(np.ones((1, n)), dtype)
    ones_col = _const(np.ones((n, 1)), dtype)
    pairwise = nm.add(nm.matmul(src, ones_row), nm.matmul(ones_col, nm.transpose(dst)))
    scores = nm.leaky_relu(pairwise, leaky_slope)
    if key_mask is not None:
        scores = nm.add(scores, key_mask)
    attention = nm.softmax_rows(scores)
    updated = nm.matmul(attention, hidden)
    if trace is not None:
        trace.graph_nodes = nodes.data
        trace.graph_hidden = hidden.data
        trace.graph_scores = scores.data
        trace.graph_attention = attention.data
    return updated


def graph_attention(
    speech: Tensor,
    text: Tensor,
    params: dict[str, Tensor],
    config: MdatConfig,
    lengths: tuple[int, int] | None = None,
    trace: AttentionTrace | None = None,
) -> tuple[Tensor, Tensor]:
    """Joint graph update over the 2T stacked positions, split back per modality."""
    if speech.shape != text.shape:
        raise nm.ShapeError(f"modalities must agree before graph attention: {speech.shape} vs {text.shape}")
    t = speech.shape[0]
    dtype = speech.dtype
    stacked = nm.concat_rows([speech, text])
    mask = None
    if config.mask_padding and lengths is not None:
        valid = np.concatenate([_valid_rows(t, lengths[0]), _valid_rows(t, lengths[1])])
        mask = _key_mask(valid, 2 * t, dtype)
    updated = graph_node_update(stacked, params, config.leaky_slope, mask, trace)
    g_speech = nm.matmul(_row_selector(2 * t, 0, t, dtype), updated)
    g_text = nm.matmul(_row_selector(2 * t, t, 2 * t, dtype), updated)
    return g_speech, g_text


def co_attention(
    in_speech: Tensor,
    in_text: Tensor,
    params: dict[str, Tensor],
    config: MdatConfig,
    lengths: tuple[int, int] | None = None,
    trace: AttentionTrace | None = None,
) -> tuple[Tensor, Tensor]:
    """Cross-modal attention; outputs concatenate inputs with attended context.

    `context` mode: each speech position attends over text positions (and
    vice versa) through the shared similarity matrix.  `gate` mode instead
    rescales each position by the average attention it receives from the
    other modality.
    """
    if in_speech.shape != in_text.shape:
        raise nm.ShapeError(f"co-attention widths differ: {in_speech.shape} vs {in_text.shape}")
    t, d = in_speech.shape
    dtype = in_speech.dtype
    h_s = nm.affine(in_speech, params["coatt.speech.weight"], params["coatt.speech.bias"])
    h_t = nm.affine(in_text, params["coatt.text.weight"], params["coatt.text.bias"])
    similarity = nm.matmul(h_s, nm.transpose(h_t))  # T x T: speech rows vs text cols

    mask_t = mask_s = None
    if config.mask_padding and lengths is not None:
        mask_t = _key_mask(_valid_rows(t, lengths[1]), t, dtype)  # text keys padded
        mask_s = _key_mask(_valid_rows(t, lengths[0]), t, dtype)  # speech keys padded

    scores_s = similarity if mask_t is None else nm.add(similarity, mask_t)
    attn_s = nm.softmax_rows(scores_s)
    sim_t = nm.transpose(similarity)
    scores_t = sim_t if mask_s is None else nm.add(sim_t, mask_s)
    attn_t = nm.softmax_rows(scores_t)

    if config.coatt_mode == "context":
        ctx_s = nm.matmul(attn_s, in_text)
        ctx_t = nm.matmul(attn_t, in_speech)
    else:  # gate: scale each row by the mean attention it receives
        ones_wide = _const(np.ones((1, d)), dtype)
        gate_s = nm.transpose(nm.mean_rows(attn_t))  # T x 1: column means of attn_t
        gate_t = nm.transpose(nm.mean_rows(attn_s))
        ctx_s = nm.multiply(nm.matmul(gate_s, ones_wide), in_speech)
        ctx_t = nm.multiply(nm.matmul(gate_t, ones_wide), in_text)

    out_s = nm.concat_cols([in_speech, ctx_s])
    out_t = nm.concat_cols([in_text, ctx_t])
    if trace is not None:
        trace.coatt_speech_hidden = h_s.data
        trace.coatt_text_hidden = h_t.data
        trace.coatt_similarity = similarity.data
        trace.coatt_speech_attention = attn_s.data
        trace.coatt_text_attention = attn_t.data
        trace.coatt_speech_context = ctx_s.data
        trace.coatt_text_context = ctx_t.data
    return out_s, out_t


def transformer_encode(
    x: Tensor,
    params: dict[str, Tensor],
    prefix: str,
    config: MdatConfig,
    rng: np.random.Generator | None = None,
    training: bool = False,
    key_mask: Tensor | None = None,
    trace_heads: list[np.ndarray] | None = None,
) -> Tensor:
    """One post-norm encoder layer: multi-head self-attention then feed-forward."""
    t, d = x.shape
    if d % config.n_heads != 0:
        raise nm.ShapeError(f"width {d} not divisible by n_heads {config.n_heads}")
    dtype = x.dtype
    head_w = d // config.n_heads
    q = nm.affine(x, params[f"{prefix}.attn.q.weight"], params[f"{prefix}.attn.q.bias"])
    k = nm.matmul(x, params[f"{prefix}.attn.k.weight"])
    v = nm.affine(x, params[f"{prefix}.attn.v.weight"], params[f"{prefix}.attn.v.bias"])
    heads = []
    for h in range(config.n_heads):
        lo, hi = h * head_w, (h + 1) * head_w
        qh, kh, vh = nm.slice_cols(q, lo, hi), nm.slice_cols(k, lo, hi), nm.slice_cols(v, lo, hi)
        scores = nm.scale(nm.matmul(qh, nm.transpose(kh)), 1.0 / math.sqrt(head_w))
        if key_mask is not None:
            scores = nm.add(scores, key_mask)
        attn = nm.softmax_rows(scores)
        if trace_heads is not None:
            trace_heads.append(attn.data)
        heads.append(nm.matmul(attn, vh))
    attended = nm.affine(
        nm.concat_cols(heads), params[f"{prefix}.attn.out.weight"], params[f"{prefix}.attn.out.bias"]
    )
    attended = nm.dropout(attended, config.dropout, rng, training)
    x1 = nm.layer_norm(
        nm.add(x, attended), params[f"{prefix}.norm1.scale"], params[f"{prefix}.norm1.shift"], LAYER_NORM_EPS
    )
    ff = nm.affine(
        nm.relu(nm.affine(x1, params[f"{prefix}.ff.w1"], params[f"{prefix}.ff.b1"])),
        params[f"{prefix}.ff.w2"],
        params[f"{prefix}.ff.b2"],
    )
    ff = nm.dropout(ff, config.dropout, rng, training)
    return nm.layer_norm(
        nm.add(x1, ff), params[f"{prefix}.norm2.scale"], params[f"{prefix}.norm2.shift"], LAYER_NORM_EPS
    )


def classify(enc_speech: Tensor, enc_text: Tensor, params: dict[str, Tensor]) -> Tensor:
    """Mean-pool each modality over time, concatenate, project to class probabilities."""
    if enc_speech.shape[1] != enc_text.shape[1]:
        raise nm.ShapeError(f"pooled widths differ: {enc_speech.shape} vs {enc_text.shape}")
    pooled = nm.concat_cols([nm.mean_rows(enc_speech), nm.mean_rows(enc_text)])
    logits = nm.affine(pooled, params["head.weight"], params["head.bias"])
    return nm.softmax_rows(logits)


def forward(
    speech: Tensor | np.ndarray,
    text: Tensor | np.ndarray,
    params: dict[str, Tensor],
    config: MdatConfig,
    rng: np.random.Generator | None = None,
    training: bool = False,
    lengths: tuple[int, int] | None = None,
    trace: AttentionTrace | None = None,
) -> Tensor:
    """Full model forward pass; returns a 1 x n_classes probability row."""
    dtype = params["head.weight"].dtype
    if not isinstance(speech, Tensor):
        speech = nm.tensor(speech, dtype=dtype)
    if not isinstance(text, Tensor):
        text = nm.tensor(text, dtype=dtype)
    if speech.shape[0] != config.seq_len or text.shape[0] != config.seq_len:
        raise nm.ShapeError(
            f"inputs must be aligned to length {config.seq_len}, got {speech.shape[0]} and {text.shape[0]}"
        )
    cur_s, cur_t = project_inputs(speech, text, params)
    if config.use_graph:
        cur_s, cur_t = graph_attention(cur_s, cur_t, params, config, lengths, trace)
    if config.use_coatt:
        cur_s, cur_t = co_attention(cur_s, cur_t, params, config, lengths, trace)
    if config.use_transformer:
        mask_s = mask_t = None
        if config.mask_padding and lengths is not None:
            t = config.seq_len
            mask_s = _key_mask(_valid_rows(t, lengths[0]), t, cur_s.dtype)
            mask_t = _key_mask(_valid_rows(t, lengths[1]), t, cur_t.dtype)
        heads_s: list[np.ndarray] | None = [] if trace is not None else None
        heads_t: list[np.ndarray] | None = [] if trace is not None else None
        cur_s = transformer_encode(cur_s, params, "enc.speech", config, rng, training, mask_s, heads_s)
        cur_t = transformer_encode(cur_t, params, "enc.text", config, rng, training, mask_t, heads_t)
        if trace is not None:
            trace.self_attention = {"speech": heads_s, "text": heads_t}
    return classify(cur_s, cur_t, params)
