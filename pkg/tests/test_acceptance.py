"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run as `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
Tolerances are fixed here and match the package's contracts; the synthetic
corpora make every criterion runnable without any real dataset.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from test_model import co_attention_oracle, encoder_oracle, encoder_param_arrays
from test_experiments import recall_mean_oracle
from mdat import baseline as bl
from mdat import dataio as dio
from mdat import experiments as xp
from mdat import model as md
from mdat import numerics as nm
from mdat.cli import main as cli_main
from mdat.dataio import LabelVocabulary, split_dataset


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"\n[ACCEPTANCE] {name}: FAIL")
        raise
    print(f"\n[ACCEPTANCE] {name}: PASS")


VOCAB = LabelVocabulary.canonical_four()
ANCHOR_SEED = 777


def synth(tmp, name, per_class, shift, noise, seed, seq_len=6, speech_dim=16, text_dim=12):
    samples, _ = dio.synth_dataset(
        tmp / name, n_classes=4, per_class=per_class, seq_len=seq_len,
        speech_dim=speech_dim, text_dim=text_dim, shift=shift, noise=noise,
        seed=seed, anchor_seed=ANCHOR_SEED,
    )
    return samples


def trend_model_config():
    return md.MdatConfig(d_model=16, d_text=12, seq_len=6, n_classes=4, n_heads=2, d_ff=32, dropout=0.0)


def trend_train_config(seed, epochs=25):
    return xp.TrainConfig(learning_rate=3e-3, epochs=epochs, seed=seed, use_dropout=False, kshot_epochs=20)


# ---------------------------------------------------------------------------


def test_01_gradient_fidelity():
    """All 7 ablation wirings and the baseline: analytic vs central differences."""
    with criterion("gradient fidelity (err64 < 1e-5, err32 < 1e-3, < 60 s)"):
        start = time.time()
        results = xp.gradient_fidelity_suite(eps=1e-4)
        elapsed = time.time() - start
        for name, errs in sorted(results.items()):
            print(f"  {name}: err64={errs['err64']:.2e} err32={errs['err32']:.2e}")
            assert errs["err64"] < 1e-5, f"{name} 64-bit error {errs['err64']}"
            assert errs["err32"] < 1e-3, f"{name} 32-bit error {errs['err32']}"
        assert len(results) == 8
        assert elapsed < 60.0, f"suite took {elapsed:.1f}s"


def test_02_attention_normalization():
    """Every attention row over 1000 random draws sums to 1 and is nonnegative."""
    with criterion("attention normalization (1e-5 over 1000 draws, < 30 s)"):
        start = time.time()
        cfg = md.MdatConfig(d_model=8, d_text=6, seq_len=6, n_classes=4, n_heads=2, d_ff=16, dropout=0.0)
        rng = np.random.default_rng(0)
        for draw in range(1000):
            params = md.init_params(cfg, rng)
            speech = (rng.normal(scale=rng.uniform(0.2, 3.0), size=(6, 8))).astype(np.float32)
            text = (rng.normal(scale=rng.uniform(0.2, 3.0), size=(6, 6))).astype(np.float32)
            trace = md.AttentionTrace()
            md.forward(speech, text, params, cfg, trace=trace)
            mats = [trace.graph_attention, trace.coatt_speech_attention, trace.coatt_text_attention]
            mats += trace.self_attention["speech"] + trace.self_attention["text"]
            for m in mats:
                assert (m >= 0).all()
                assert np.abs(m.sum(axis=1) - 1.0).max() < 1e-5
        elapsed = time.time() - start
        assert elapsed < 30.0, f"took {elapsed:.1f}s"


def test_03_oracle_equivalence():
    """Co-attention (context) and the encoder match straight-line loop oracles."""
    with criterion("oracle equivalence (200 instances each, 1e-4)"):
        rng = np.random.default_rng(1)
        for _ in range(200):
            t, d = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            cfg = md.MdatConfig(
                d_model=d, d_text=d, seq_len=t, n_heads=1, coatt_mode="context",
                use_graph=False, use_transformer=False,
            )
            params = md.init_params(cfg, rng, dtype=np.float64)
            in_s = nm.tensor(rng.normal(size=(t, d)), dtype=np.float64)
            in_t = nm.tensor(rng.normal(size=(t, d)), dtype=np.float64)
            out_s, out_t = md.co_attention(in_s, in_t, params, cfg)
            exp_s, exp_t = co_attention_oracle(
                in_s.data, in_t.data,
                params["coatt.speech.weight"].data, params["coatt.speech.bias"].data,
                params["coatt.text.weight"].data, params["coatt.text.bias"].data,
            )
            np.testing.assert_allclose(out_s.data, exp_s, atol=1e-4)
            np.testing.assert_allclose(out_t.data, exp_t, atol=1e-4)
        for _ in range(200):
            t = int(rng.integers(1, 5))
            d = int(rng.choice([2, 4]))
            heads = int(rng.choice([1, 2]))
            cfg = md.MdatConfig(
                d_model=d, d_text=d, seq_len=t, n_heads=heads, d_ff=6, dropout=0.0,
                use_graph=False, use_coatt=False,
            )
            params = md.init_params(cfg, rng, dtype=np.float64)
            x = nm.tensor(rng.normal(size=(t, d)), dtype=np.float64)
            out = md.transformer_encode(x, params, "enc.speech", cfg)
            expected = encoder_oracle(
                x.data, encoder_param_arrays(params, "enc.speech"), heads, md.LAYER_NORM_EPS
            )
            np.testing.assert_allclose(out.data, expected, atol=1e-4)


def test_04_graph_permutation_equivariance():
    """Permuting the stacked node order permutes the outputs identically."""
    with criterion("graph attention permutation equivariance (1e-5, 100 permutations)"):
        cfg = md.MdatConfig(d_model=8, d_text=6, seq_len=6, n_classes=4, n_heads=2, d_ff=16, dropout=0.0)
        rng = np.random.default_rng(2)
        params = md.init_params(cfg, rng, dtype=np.float64)
        nodes = nm.tensor(rng.normal(size=(12, 8)), dtype=np.float64)
        base = md.graph_node_update(nodes, params, cfg.leaky_slope).data
        for _ in range(100):
            perm = rng.permutation(12)
            permuted = nm.tensor(nodes.data[perm], dtype=np.float64)
            out = md.graph_node_update(permuted, params, cfg.leaky_slope).data
            np.testing.assert_allclose(out, base[perm], atol=1e-5)


def _train_until(kind, samples, config, target_ua, max_epochs=300, chunk=20):
    """Chunked training with early exit; returns (best train UA, epochs used, seconds)."""
    start = time.time()
    model = None
    best = 0.0
    used = 0
    while used < max_epochs:
        tcfg = xp.TrainConfig(
            learning_rate=3e-3, epochs=min(chunk, max_epochs - used),
            seed=used, use_dropout=False, batch_size=16,
        )
        model, history = xp.train(kind, samples, VOCAB, config, tcfg, start_model=model)
        used += tcfg.epochs
        best = max(best, max(h["ua"] for h in history))
        if best >= target_ua:
            break
    return best, used, time.time() - start


def test_05_learning_sanity(tmp_path):
    """Both models fit the separable synthetic task within the epoch budget."""
    with criterion("learning sanity (MDAT >= 0.95, baseline >= 0.90, <= 300 epochs, < 2 min each)"):
        samples, _ = dio.synth_dataset(
            tmp_path / "ls", n_classes=4, per_class=20, seq_len=8,
            speech_dim=16, text_dim=12, shift=0.0, noise=0.1, seed=0,
        )
        mdat_cfg = md.MdatConfig(d_model=16, d_text=12, seq_len=8, n_classes=4, n_heads=2, d_ff=32, dropout=0.0)
        ua, epochs, secs = _train_until("mdat", samples, mdat_cfg, 0.95)
        print(f"  mdat: train UA {ua:.3f} after {epochs} epochs ({secs:.1f}s)")
        assert ua >= 0.95 and epochs <= 300 and secs < 120.0
        base_cfg = bl.BaselineConfig(d_model=16, d_text=12, seq_len=8, n_classes=4, hidden=8, head_width=16, dropout=0.0)
        ua, epochs, secs = _train_until("baseline", samples, base_cfg, 0.90)
        print(f"  baseline: train UA {ua:.3f} after {epochs} epochs ({secs:.1f}s)")
        assert ua >= 0.90 and epochs <= 300 and secs < 120.0


def test_06_cross_language_trend(tmp_path):
    """Shift-2 targets score strictly below within-corpus; shift-0 agrees to 0.05."""
    with criterion("cross-language trend (shift 2 strictly below within; shift 0 within 0.05)"):
        cfg = trend_model_config()
        within_uas, cross0_uas, cross2_uas = [], [], []
        for seed in range(5):
            source = synth(tmp_path, f"src{seed}", per_class=16, shift=0.0, noise=0.25, seed=seed)
            target0 = synth(tmp_path, f"t0{seed}", per_class=16, shift=0.0, noise=0.25, seed=seed + 500)
            target2 = synth(tmp_path, f"t2{seed}", per_class=16, shift=2.0, noise=0.25, seed=seed + 500)
            tcfg = trend_train_config(seed)
            train_split, test_split = split_dataset(source, 0.8, seed)
            model_within, _ = xp.train("mdat", train_split, VOCAB, cfg, tcfg)
            within_uas.append(xp.evaluate(model_within, test_split, VOCAB).ua)
            model_full, _ = xp.train("mdat", source, VOCAB, cfg, tcfg)
            cross0_uas.append(xp.evaluate(model_full, target0, VOCAB).ua)
            cross2_uas.append(xp.evaluate(model_full, target2, VOCAB).ua)
        within, cross0, cross2 = map(lambda v: float(np.mean(v)), (within_uas, cross0_uas, cross2_uas))
        print(f"  within={within:.3f} cross@shift0={cross0:.3f} cross@shift2={cross2:.3f}")
        assert cross2 < within, f"no degradation: cross2={cross2} within={within}"
        assert abs(cross0 - within) <= 0.05


def test_07_kshot_trend(tmp_path):
    """Mean target UA is non-decreasing in k; k=0 equals pure transfer."""
    with criterion("k-shot trend (non-decreasing over k=0,5,10,15, tol 0.02; k=0 = transfer)"):
        cfg = trend_model_config()
        uas = {k: [] for k in (0, 5, 10, 15)}
        for seed in range(5):
            source = synth(tmp_path, f"ks{seed}", per_class=16, shift=0.0, noise=0.25, seed=seed)
            target = synth(tmp_path, f"kt{seed}", per_class=24, shift=1.0, noise=0.25, seed=seed + 500)
            target_train, target_test = split_dataset(target, 0.625, seed)  # 15 + 9 per class
            tagged = target_train + target_test
            tcfg = trend_train_config(seed)
            source_model, _ = xp.train("mdat", source, VOCAB, cfg, tcfg)
            pure_transfer = xp.evaluate(source_model, target_test, VOCAB).ua
            for k in (0, 5, 10, 15):
                adapted, eval_pool = xp.kshot_adapt(source_model, tagged, k, VOCAB, tcfg, seed)
                ua = xp.evaluate(adapted, eval_pool, VOCAB).ua
                uas[k].append(ua)
                if k == 0:
                    assert ua == pure_transfer
        means = {k: float(np.mean(v)) for k, v in uas.items()}
        print(f"  mean UA per k: {means}")
        ordered = sorted(means)
        for lo, hi in zip(ordered, ordered[1:]):
            assert means[hi] >= means[lo] - 0.02, f"UA dropped from k={lo} to k={hi}: {means}"


def test_08_metric_oracle():
    """UA matches an independent per-class recall computation everywhere."""
    with criterion("metric oracle (1e4 random confusions within 1e-12; hand cases exact)"):
        assert xp.unweighted_accuracy(np.diag([3, 1, 7, 2])) == 1.0
        assert xp.unweighted_accuracy(np.array([[1, 1], [0, 2]])) == 0.75
        rng = np.random.default_rng(3)
        checked = 0
        while checked < 10_000:
            c = int(rng.integers(1, 7))
            confusion = rng.integers(0, 25, size=(c, c))
            if not (confusion.sum(axis=1) > 0).any():
                continue
            expected = recall_mean_oracle(confusion)
            assert abs(xp.unweighted_accuracy(confusion) - expected) < 1e-12
            checked += 1


def test_09_bit_exactness(tmp_path):
    """MDF1 and checkpoint round-trips are byte-identical; training is seed-stable."""
    with criterion("bit-exactness (file round-trips byte-identical; same-seed runs identical)"):
        rng = np.random.default_rng(4)
        path = tmp_path / "roundtrip.mdf1"
        for _ in range(200):
            seq = dio.FeatureSequence(
                rng.normal(size=(int(rng.integers(1, 7)), int(rng.integers(1, 7)))).astype(np.float32)
            )
            dio.write_feature_file(seq, path)
            assert dio.read_feature_file(path).values.tobytes() == seq.values.tobytes()

        samples = synth(tmp_path, "bits", per_class=6, shift=0.0, noise=0.1, seed=9)
        cfg = trend_model_config()
        tcfg = trend_train_config(seed=1, epochs=3)
        model1, hist1 = xp.train("mdat", samples, VOCAB, cfg, tcfg)
        model2, hist2 = xp.train("mdat", samples, VOCAB, cfg, tcfg)
        assert hist1[-1]["loss"] == hist2[-1]["loss"]
        for name in model1.params:
            assert model1.params[name].data.tobytes() == model2.params[name].data.tobytes()

        ckpt_a, ckpt_b = tmp_path / "a.mdm1", tmp_path / "b.mdm1"
        model1.save(ckpt_a)
        xp.TrainedModel.load(ckpt_a).save(ckpt_b)
        assert ckpt_a.read_bytes() == ckpt_b.read_bytes()


def test_10_ablation_wiring(tmp_path, capsys):
    """Model 1 reproduces the default wiring bit-for-bit; ablate emits the 7-row grid."""
    with criterion("ablation wiring (model 1 == default bitwise; ablate grid has the 7 rows)"):
        cfg = md.MdatConfig(d_model=8, d_text=6, seq_len=6, n_classes=4, n_heads=2, d_ff=16, dropout=0.0)
        rng = np.random.default_rng(5)
        params = md.init_params(cfg, rng)
        s = rng.normal(size=(6, 8)).astype(np.float32)
        t = rng.normal(size=(6, 6)).astype(np.float32)
        default_out = md.forward(s, t, params, cfg).data
        model1_out = md.forward(s, t, params, cfg.with_ablation(1)).data
        assert default_out.tobytes() == model1_out.tobytes()

        data_dir = tmp_path / "abl"
        status = cli_main(
            ["synth", "--out", str(data_dir), "--per-class", "6", "--seq-len", "6",
             "--speech-dim", "10", "--text-dim", "7", "--seed", "0"]
        )
        assert status == 0
        out_dir = tmp_path / "report"
        status = cli_main(
            ["ablate", "--manifest", str(data_dir / "manifest.jsonl"), "--out", str(out_dir),
             "--epochs", "1", "--seq-len", "6", "--no-dropout"]
        )
        capsys.readouterr()
        assert status == 0
        lines = (out_dir / "table.csv").read_text().strip().splitlines()
        assert len(lines) == 8
        grid = [tuple(line.split(",")[1:4]) for line in lines[1:]]
        expected = [
            ("True", "True", "True"), ("True", "True", "False"), ("True", "False", "False"),
            ("False", "True", "False"), ("False", "False", "True"), ("False", "True", "True"),
            ("True", "False", "True"),
        ]
        assert grid == expected
