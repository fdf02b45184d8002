"""Metric oracle, training loop behaviour, and the protocol harnesses."""

import numpy as np
import pytest

from conftest import make_synth, quick_train_config, tiny_baseline_config, tiny_mdat_config
from mdat import experiments as xp
from mdat import numerics as nm
from mdat.dataio import split_dataset


def recall_mean_oracle(confusion):
    """Independent per-class recall computation with explicit loops."""
    recalls = []
    for i in range(confusion.shape[0]):
        row_total = sum(confusion[i])
        if row_total > 0:
            recalls.append(confusion[i][i] / row_total)
    return sum(recalls) / len(recalls)


class TestUnweightedAccuracy:
    def test_perfect_diagonal(self):
        assert xp.unweighted_accuracy(np.diag([5, 3, 9])) == 1.0

    def test_hand_case(self):
        # true [A,A,B,B], predicted [A,B,B,B]: recalls 0.5 and 1.0
        confusion = np.array([[1, 1], [0, 2]])
        assert xp.unweighted_accuracy(confusion) == pytest.approx(0.75)

    def test_single_class_predictor_on_balanced_data(self):
        c = 5
        confusion = np.zeros((c, c), dtype=int)
        confusion[:, 0] = 7  # everything predicted as class 0
        assert xp.unweighted_accuracy(confusion) == pytest.approx(1.0 / c)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            xp.unweighted_accuracy(np.zeros((3, 3)))

    def test_matches_recall_oracle_on_random_matrices(self):
        rng = np.random.default_rng(0)
        for _ in range(2000):
            c = int(rng.integers(2, 6))
            confusion = rng.integers(0, 20, size=(c, c))
            if confusion.sum() == 0:
                continue
            if not (confusion.sum(axis=1) > 0).any():
                continue
            assert xp.unweighted_accuracy(confusion) == pytest.approx(
                recall_mean_oracle(confusion), abs=1e-12
            )

    def test_permutation_and_relabel_invariance(self):
        rng = np.random.default_rng(1)
        true = rng.integers(0, 4, size=100)
        pred = rng.integers(0, 4, size=100)
        base = xp.unweighted_accuracy(xp.confusion_from_pairs(true, pred, 4))
        order = rng.permutation(100)
        shuffled = xp.unweighted_accuracy(xp.confusion_from_pairs(true[order], pred[order], 4))
        assert shuffled == pytest.approx(base)
        relabel = rng.permutation(4)
        relabeled = xp.unweighted_accuracy(xp.confusion_from_pairs(relabel[true], relabel[pred], 4))
        assert relabeled == pytest.approx(base)

    def test_equals_plain_accuracy_on_balanced_data(self):
        rng = np.random.default_rng(2)
        true = np.repeat(np.arange(4), 25)
        pred = rng.integers(0, 4, size=100)
        confusion = xp.confusion_from_pairs(true, pred, 4)
        assert xp.unweighted_accuracy(confusion) == pytest.approx((true == pred).mean())

    def test_report_counts(self):
        report = xp.MetricsReport(np.array([[2, 1], [0, 3]]))
        assert report.sample_count == 6
        np.testing.assert_allclose(report.per_class_recall, [2 / 3, 1.0])


class TestTrain:
    def test_zero_epochs_returns_initialization(self, separable_corpus, vocab4):
        samples, _ = separable_corpus
        cfg = tiny_mdat_config()
        tcfg = quick_train_config(epochs=0, seed=3)
        model, history = xp.train("mdat", samples, vocab4, cfg, tcfg)
        reference = xp.init_model("mdat", cfg, vocab4.names, seed=3)
        assert history == []
        for name in model.params:
            np.testing.assert_array_equal(model.params[name].data, reference.params[name].data)

    def test_loss_decreases_on_separable_data(self, separable_corpus, vocab4):
        samples, _ = separable_corpus
        model, history = xp.train("mdat", samples, vocab4, tiny_mdat_config(), quick_train_config())
        losses = [h["loss"] for h in history]
        assert len(losses) == 10
        assert all(b < a for a, b in zip(losses, losses[1:]))

    def test_same_seed_bit_identical(self, separable_corpus, vocab4):
        samples, _ = separable_corpus
        tcfg = quick_train_config(epochs=3, seed=11)
        m1, h1 = xp.train("baseline", samples, vocab4, tiny_baseline_config(), tcfg)
        m2, h2 = xp.train("baseline", samples, vocab4, tiny_baseline_config(), tcfg)
        assert h1[-1]["loss"] == h2[-1]["loss"]
        for name in m1.params:
            assert m1.params[name].data.tobytes() == m2.params[name].data.tobytes()

    def test_empty_dataset_rejected(self, vocab4):
        with pytest.raises(ValueError, match="non-empty"):
            xp.train("mdat", [], vocab4, tiny_mdat_config(), quick_train_config())

    def test_divergence_reports_epoch(self, separable_corpus, vocab4):
        samples, _ = separable_corpus
        tcfg = quick_train_config(epochs=3, learning_rate=1e12)
        with np.errstate(all="ignore"), pytest.raises(xp.TrainingDiverged, match="epoch"):
            xp.train("mdat", samples, vocab4, tiny_mdat_config(), tcfg)


class TestEvaluate:
    def test_overfit_model_reaches_ua_one(self, separable_corpus, vocab4):
        samples, _ = separable_corpus
        model, history = xp.train("mdat", samples, vocab4, tiny_mdat_config(), quick_train_config(epochs=25))
        report = xp.evaluate(model, samples, vocab4)
        assert report.ua == 1.0

    def test_confusion_sums_to_dataset_size(self, separable_corpus, vocab4):
        samples, _ = separable_corpus
        model = xp.init_model("mdat", tiny_mdat_config(), vocab4.names, seed=0)
        report = xp.evaluate(model, samples, vocab4)
        assert report.sample_count == len(samples)

    def test_random_init_near_chance_over_seeds(self, tmp_path, vocab4):
        samples, _ = make_synth(tmp_path, per_class=20, noise=0.5, seed=9)
        uas = []
        for seed in range(10):
            model = xp.init_model("mdat", tiny_mdat_config(), vocab4.names, seed=seed)
            uas.append(xp.evaluate(model, samples, vocab4).ua)
        assert abs(float(np.mean(uas)) - 0.25) < 0.1

    def test_vocab_mismatch_rejected(self, separable_corpus, vocab4):
        samples, _ = separable_corpus
        model = xp.init_model("mdat", tiny_mdat_config(), ("a", "b", "c", "d"), seed=0)
        with pytest.raises(xp.VocabularyMismatch):
            xp.evaluate(model, samples, vocab4)


class TestCheckpointRoundTrip:
    def test_forward_bit_identical_after_reload(self, tmp_path, separable_corpus, vocab4):
        samples, _ = separable_corpus
        model, _ = xp.train("mdat", samples, vocab4, tiny_mdat_config(), quick_train_config(epochs=2))
        path = tmp_path / "model.mdm1"
        model.save(path)
        clone = xp.TrainedModel.load(path)
        assert clone.kind == "mdat"
        assert clone.labels == vocab4.names
        item = xp.load_features(samples[:3], vocab4, model.config.seq_len)
        for it in item:
            a = xp.model_forward(model, it.speech, it.text).data
            b = xp.model_forward(clone, it.speech, it.text).data
            assert a.tobytes() == b.tobytes()

    def test_baseline_kind_tag_and_round_trip(self, tmp_path, separable_corpus, vocab4):
        samples, _ = separable_corpus
        model, _ = xp.train("baseline", samples, vocab4, tiny_baseline_config(), quick_train_config(epochs=1))
        path = tmp_path / "b.mdm1"
        model.save(path)
        clone = xp.TrainedModel.load(path)
        assert clone.kind == "baseline"
        item = xp.load_features(samples[:2], vocab4, model.config.seq_len)
        for it in item:
            a = xp.model_forward(model, it.speech, it.text).data
            b = xp.model_forward(clone, it.speech, it.text).data
            assert a.tobytes() == b.tobytes()

    def test_checkpoint_bytes_stable(self, tmp_path, separable_corpus, vocab4):
        samples, _ = separable_corpus
        model, _ = xp.train("mdat", samples, vocab4, tiny_mdat_config(), quick_train_config(epochs=1))
        p1, p2 = tmp_path / "a.mdm1", tmp_path / "b.mdm1"
        model.save(p1)
        xp.TrainedModel.load(p1).save(p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestKshot:
    def test_zero_shot_returns_source_model(self, tmp_path, vocab4):
        target, _ = make_synth(tmp_path, "tgt", per_class=6, seed=4)
        source_model = xp.init_model("mdat", tiny_mdat_config(), vocab4.names, seed=1)
        adapted, eval_pool = xp.kshot_adapt(source_model, target, 0, vocab4, quick_train_config(), seed=5)
        assert adapted is source_model
        assert len(eval_pool) == len(target)

    def test_pools_disjoint_and_stratified(self, tmp_path, vocab4):
        target, _ = make_synth(tmp_path, "tgt", per_class=8, seed=4)
        pool, eval_pool = xp.select_kshot_pool(target, 3, seed=6)
        assert len(pool) == 12
        counts = {}
        for s in pool:
            counts[s.label] = counts.get(s.label, 0) + 1
        assert counts == {label: 3 for label in vocab4.names}
        assert not {s.id for s in pool} & {s.id for s in eval_pool}
        assert len(pool) + len(eval_pool) == len(target)

    def test_split_target_uses_test_pool(self, tmp_path, vocab4):
        target, _ = make_synth(tmp_path, "tgt", per_class=8, seed=4)
        train_split, test_split = split_dataset(target, 0.5, seed=0)
        tagged = train_split + test_split
        pool, eval_pool = xp.select_kshot_pool(tagged, 2, seed=6)
        assert all(s.split == "train" for s in pool)
        assert {s.id for s in eval_pool} == {s.id for s in test_split}

    def test_insufficient_candidates_rejected(self, tmp_path, vocab4):
        target, _ = make_synth(tmp_path, "tgt", per_class=2, seed=4)
        with pytest.raises(ValueError, match="need k"):
            xp.select_kshot_pool(target, 3, seed=0)

    def test_deterministic_pool(self, tmp_path, vocab4):
        target, _ = make_synth(tmp_path, "tgt", per_class=8, seed=4)
        p1, _ = xp.select_kshot_pool(target, 3, seed=7)
        p2, _ = xp.select_kshot_pool(target, 3, seed=7)
        assert [s.id for s in p1] == [s.id for s in p2]


class TestProtocols:
    def test_within_row_count(self, tmp_path, vocab4):
        d1, _ = make_synth(tmp_path, "one", per_class=6, seed=1)
        d2, _ = make_synth(tmp_path, "two", per_class=6, seed=2)
        result = xp.run_within(
            [("one", d1, vocab4), ("two", d2, vocab4)],
            ["mdat", "baseline"],
            tiny_mdat_config(),
            tiny_baseline_config(),
            quick_train_config(epochs=2),
        )
        assert len(result.rows) == 4
        assert {(r["dataset"], r["model"]) for r in result.rows} == {
            ("one", "mdat"), ("one", "baseline"), ("two", "mdat"), ("two", "baseline"),
        }

    def test_within_beats_chance_on_separable_data(self, tmp_path, vocab4):
        data, _ = make_synth(tmp_path, "sep", per_class=10, noise=0.1, seed=3)
        result = xp.run_within(
            [("sep", data, vocab4)],
            ["mdat", "baseline"],
            tiny_mdat_config(),
            tiny_baseline_config(),
            quick_train_config(epochs=40, learning_rate=3e-3),
        )
        for row in result.rows:
            assert row["ua"] >= 0.9, row

    def test_cross_source_equals_target_degenerate(self, tmp_path, vocab4):
        data, _ = make_synth(tmp_path, "src", per_class=8, noise=0.1, seed=5)
        result = xp.run_cross_language(
            ("src", data), ("src", data), vocab4, ["mdat"],
            tiny_mdat_config(), tiny_baseline_config(), quick_train_config(epochs=25),
        )
        assert result.rows[0]["ua"] >= 0.95  # train pool evaluated on itself

    def test_ablation_grid_has_seven_rows(self, tmp_path, vocab4):
        data, _ = make_synth(tmp_path, "abl", per_class=6, seed=6)
        result = xp.run_ablation(data, vocab4, tiny_mdat_config(), quick_train_config(epochs=1))
        assert [r["model"] for r in result.rows] == list(range(1, 8))
        flags = [(r["graph_attention"], r["co_attention"], r["transformer_encoder"]) for r in result.rows]
        assert flags == [
            (True, True, True), (True, True, False), (True, False, False), (False, True, False),
            (False, False, True), (False, True, True), (True, False, True),
        ]
        assert all("ua_within" in r for r in result.rows)

    def test_ablation_configs_pass_quick_grad_check(self, vocab4):
        # sampled-entry sweep across the seven wirings before any training
        rng_inputs = np.random.default_rng(0)
        s = rng_inputs.normal(size=(6, 8))
        t = rng_inputs.normal(size=(6, 6))
        from mdat import model as md

        for model_number in range(1, 8):
            cfg = md.MdatConfig(
                d_model=8, d_text=6, seq_len=6, n_classes=4, n_heads=2, d_ff=16, dropout=0.0
            ).with_ablation(model_number)
            params = md.init_params(cfg, np.random.default_rng(2), dtype=np.float64)

            def loss(p):
                return nm.cross_entropy(md.forward(s, t, p, cfg), 1)

            err = nm.grad_check(loss, params, eps=1e-4, max_entries_per_param=3, rng=np.random.default_rng(1))
            assert err < 1e-5, f"model {model_number}: {err}"


class TestReferenceMetadata:
    def test_tables_complete(self):
        assert len(xp.REFERENCE_UA["cross"]) == 12
        assert len(xp.REFERENCE_UA["kshot"]) == 12
        assert set(xp.REFERENCE_UA["ablation"]) == set(range(1, 8))
        assert xp.REFERENCE_UA["within"]["iemocap"]["mdat"] == 75.58
