"""Command-line entry point: every capability as a subcommand.

Configuration precedence is defaults < config file < explicit flags; the
config file is one JSON document with model / train / data / experiment
sections and unknown keys are rejected.  Every report lands under --out as
report.json (full detail, single created_at timestamp field) plus table.csv
(flat export).  All randomness follows --seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path


from . import baseline as bl
from . import checkpoint as ckpt
from . import dataio as dio
from . import experiments as xp
from . import model as md

VOCABULARIES = {
    "four": dio.LabelVocabulary.canonical_four,
    "emodb7": dio.LabelVocabulary.emodb_seven,
    "emovo6": dio.LabelVocabulary.emovo_six,
}

CONFIG_DEFAULTS = {
    "model": {
        "n_heads": 2,
        "d_ff": None,
        "graph_dim": None,
        "leaky_slope": 0.2,
        "dropout": 0.1,
        "coatt_mode": "context",
        "use_graph": True,
        "use_coatt": True,
        "use_transformer": True,
        "mask_padding": False,
        "baseline_hidden": 16,
        "baseline_head_width": 32,
        "baseline_l2_head": 1e-4,
    },
    "train": {
        "learning_rate": 1e-3,
        "beta1": 0.9,
        "beta2": 0.999,
        "adam_eps": 1e-8,
        "batch_size": 16,
        "epochs": 30,
        "kshot_epochs": 20,
        "use_dropout": True,
        "train_fraction": 0.8,
    },
    "data": {
        "seq_len": 128,
        "speech_dim": None,  # None: read the widths from the manifest's first record
        "text_dim": None,
        "vocabulary": "four",
    },
    "experiment": {
        "k": [0, 5, 10, 15],
        "seeds": 1,
        "models": ["mdat"],
    },
}


class CliError(Exception):
    """User-facing error with a distinct message; maps to exit status 1."""


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


# ---------------------------------------------------------------------------
# config plumbing


def load_config_file(path: str) -> dict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliError(f"config file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CliError("config file must hold a JSON object")
    unknown = set(doc) - set(CONFIG_DEFAULTS)
    if unknown:
        raise CliError(f"unknown config sections: {sorted(unknown)}")
    for section, values in doc.items():
        if not isinstance(values, dict):
            raise CliError(f"config section {section!r} must be an object")
        bad = set(values) - set(CONFIG_DEFAULTS[section])
        if bad:
            raise CliError(f"unknown keys in config section {section!r}: {sorted(bad)}")
    return doc


def merge_config(args: argparse.Namespace) -> dict:
    """defaults < config file < explicit command-line flags."""
    merged = {section: dict(values) for section, values in CONFIG_DEFAULTS.items()}
    if getattr(args, "config", None):
        for section, values in load_config_file(args.config).items():
            merged[section].update(values)
    flag_map = {
        "seq_len": ("data", "seq_len"),
        "speech_dim": ("data", "speech_dim"),
        "text_dim": ("data", "text_dim"),
        "vocabulary": ("data", "vocabulary"),
        "epochs": ("train", "epochs"),
        "learning_rate": ("train", "learning_rate"),
        "batch_size": ("train", "batch_size"),
        "kshot_epochs": ("train", "kshot_epochs"),
        "train_fraction": ("train", "train_fraction"),
        "no_dropout": ("train", "use_dropout"),
        "n_heads": ("model", "n_heads"),
        "coatt_mode": ("model", "coatt_mode"),
        "mask_padding": ("model", "mask_padding"),
    }
    for flag, (section, key) in flag_map.items():
        value = getattr(args, flag, None)
        if value is not None:
            merged[section][key] = (not value) if flag == "no_dropout" else value
    return merged


def dataset_name(manifest_path: str) -> str:
    """Human name for a manifest: the file stem, or the directory for manifest.jsonl."""
    path = Path(manifest_path)
    return path.parent.name if path.stem == "manifest" and path.parent.name else path.stem


def resolve_vocab(spec) -> dio.LabelVocabulary:
    if isinstance(spec, list):
        return dio.LabelVocabulary(tuple(spec))
    if spec in VOCABULARIES:
        return VOCABULARIES[spec]()
    raise CliError(f"unknown vocabulary {spec!r}; expected one of {sorted(VOCABULARIES)} or a name list")


def load_samples(manifest: str, vocab: dio.LabelVocabulary) -> list[dio.Sample]:
    path = Path(manifest)
    if not path.is_file():
        raise CliError(f"manifest not found: {path}")
    try:
        return dio.load_manifest(path, vocab)
    except dio.ManifestError as exc:
        raise CliError(str(exc)) from None


def infer_dims(samples: list[dio.Sample], data_cfg: dict) -> tuple[int, int]:
    speech_dim, text_dim = data_cfg["speech_dim"], data_cfg["text_dim"]
    if speech_dim is None or text_dim is None:
        if not samples:
            raise CliError("cannot infer feature widths from an empty manifest")
        _, s_cols = dio.validate_feature_header(samples[0].speech_features)
        _, t_cols = dio.validate_feature_header(samples[0].text_features)
        speech_dim = speech_dim or s_cols
        text_dim = text_dim or t_cols
    return speech_dim, text_dim


def build_model_configs(merged: dict, speech_dim: int, text_dim: int, n_classes: int):
    m = merged["model"]
    mdat_config = md.MdatConfig(
        d_model=speech_dim,
        d_text=text_dim,
        seq_len=merged["data"]["seq_len"],
        n_classes=n_classes,
        graph_dim=m["graph_dim"],
        n_heads=m["n_heads"],
        d_ff=m["d_ff"],
        leaky_slope=m["leaky_slope"],
        dropout=m["dropout"],
        coatt_mode=m["coatt_mode"],
        use_graph=m["use_graph"],
        use_coatt=m["use_coatt"],
        use_transformer=m["use_transformer"],
        mask_padding=m["mask_padding"],
    )
    baseline_config = bl.BaselineConfig(
        d_model=speech_dim,
        d_text=text_dim,
        seq_len=merged["data"]["seq_len"],
        n_classes=n_classes,
        hidden=m["baseline_hidden"],
        head_width=m["baseline_head_width"],
        dropout=m["dropout"],
        l2_head=m["baseline_l2_head"],
    )
    return mdat_config, baseline_config


def build_train_config(merged: dict, seed: int, checkpoint_path: str | None = None) -> xp.TrainConfig:
    t = dict(merged["train"])
    t["seed"] = seed
    t["checkpoint_path"] = checkpoint_path
    return xp.TrainConfig(**t)


# ---------------------------------------------------------------------------
# reports


def write_report(out_dir: str, command: str, seed: int, merged: dict, result: xp.ExperimentResult) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    document = {
        "created_at": _utc_now(),
        "command": command,
        "seed": seed,
        "config": merged,
        "result": result.to_dict(),
    }
    report_path = out / "report.json"
    report_path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    with open(out / "table.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=result.columns, extrasaction="ignore")
        writer.writeheader()
        for row in result.rows:
            writer.writerow(row)
    return report_path


# ---------------------------------------------------------------------------
# subcommands


def cmd_synth(args) -> int:
    if args.vocabulary is not None:
        vocab = resolve_vocab(args.vocabulary)
    elif args.classes == 4:
        vocab = dio.LabelVocabulary.canonical_four()
    else:
        vocab = None
    _, manifest = dio.synth_dataset(
        args.out,
        n_classes=args.classes,
        per_class=args.per_class,
        seq_len=args.seq_len if args.seq_len is not None else 8,
        speech_dim=args.speech_dim if args.speech_dim is not None else 16,
        text_dim=args.text_dim if args.text_dim is not None else 12,
        shift=args.shift,
        noise=args.noise,
        seed=args.seed,
        anchor_seed=args.anchor_seed,
        vocab=vocab,
    )
    print(f"wrote {manifest}")
    return 0


def cmd_train(args) -> int:
    merged = merge_config(args)
    vocab = resolve_vocab(merged["data"]["vocabulary"])
    samples = load_samples(args.manifest, vocab)
    speech_dim, text_dim = infer_dims(samples, merged["data"])
    mdat_config, baseline_config = build_model_configs(merged, speech_dim, text_dim, len(vocab))
    config = mdat_config if args.model == "mdat" else baseline_config
    train_config = build_train_config(merged, args.seed, args.save_checkpoint)
    model, history = xp.train(args.model, samples, vocab, config, train_config)
    report = xp.evaluate(model, samples, vocab)
    result = xp.ExperimentResult(
        "train",
        ["model", "epochs", "final_loss", "train_ua"],
        [
            {
                "model": args.model,
                "epochs": train_config.epochs,
                "final_loss": history[-1]["loss"] if history else None,
                "train_ua": report.ua,
            }
        ],
        {"history": history, "train_metrics": report.to_dict()},
    )
    write_report(args.out, "train", args.seed, merged, result)
    print(f"train UA {report.ua:.4f}")
    return 0


def cmd_eval(args) -> int:
    merged = merge_config(args)
    try:
        model = xp.TrainedModel.load(args.checkpoint)
    except (OSError, ckpt.CheckpointError) as exc:
        raise CliError(f"cannot load checkpoint: {exc}") from None
    vocab = dio.LabelVocabulary(tuple(model.labels))
    samples = load_samples(args.manifest, vocab)
    report = xp.evaluate(model, samples, vocab)
    result = xp.ExperimentResult(
        "eval",
        ["model", "samples", "ua"],
        [{"model": model.kind, "samples": report.sample_count, "ua": report.ua}],
        {"metrics": report.to_dict()},
    )
    write_report(args.out, "eval", args.seed, merged, result)
    print(f"UA {report.ua:.4f} over {report.sample_count} samples")
    return 0


def cmd_cross(args) -> int:
    merged = merge_config(args)
    if args.models is not None:
        merged["experiment"]["models"] = args.models.split(",")
    vocab = resolve_vocab(merged["data"]["vocabulary"])
    source = load_samples(args.source, vocab)
    target = load_samples(args.target, vocab)
    speech_dim, text_dim = infer_dims(source, merged["data"])
    mdat_config, baseline_config = build_model_configs(merged, speech_dim, text_dim, len(vocab))
    train_config = build_train_config(merged, args.seed)
    result = xp.run_cross_language(
        (dataset_name(args.source), source),
        (dataset_name(args.target), target),
        vocab,
        merged["experiment"]["models"],
        mdat_config,
        baseline_config,
        train_config,
    )
    write_report(args.out, "cross", args.seed, merged, result)
    for row in result.rows:
        print(f"{row['model']}: {row['source']} -> {row['target']} UA {row['ua']:.4f}")
    return 0


def _kshot_cell(payload) -> dict:
    """One (kind, seed) cell of the k-shot grid; runs in a worker when --jobs > 1."""
    (kind, seed, source, target, vocab_names, config, baseline_config, train_dict, k_values) = payload
    vocab = dio.LabelVocabulary(tuple(vocab_names))
    train_config = xp.TrainConfig(**train_dict)
    seeded = replace(train_config, seed=seed)
    cfg = config if kind == "mdat" else baseline_config
    source_model, history = xp.train(kind, source, vocab, cfg, seeded)
    rows, details = [], {f"{kind}/seed{seed}/source_history": history}
    for k in sorted(k_values):
        adapted, eval_pool = xp.kshot_adapt(source_model, target, k, vocab, seeded, seed)
        report = xp.evaluate(adapted, eval_pool, vocab)
        rows.append({"model": kind, "k": k, "seed": seed, "ua": report.ua})
        details[f"{kind}/seed{seed}/k{k}"] = {"metrics": report.to_dict()}
    return {"rows": rows, "details": details}


def cmd_kshot(args) -> int:
    merged = merge_config(args)
    if args.models is not None:
        merged["experiment"]["models"] = args.models.split(",")
    if args.k is not None:
        merged["experiment"]["k"] = [int(v) for v in args.k.split(",")]
    if args.seeds is not None:
        merged["experiment"]["seeds"] = args.seeds
    vocab = resolve_vocab(merged["data"]["vocabulary"])
    source = load_samples(args.source, vocab)
    target = load_samples(args.target, vocab)
    speech_dim, text_dim = infer_dims(source, merged["data"])
    mdat_config, baseline_config = build_model_configs(merged, speech_dim, text_dim, len(vocab))
    train_config = build_train_config(merged, args.seed)
    seeds = [args.seed + i for i in range(merged["experiment"]["seeds"])]
    k_values = merged["experiment"]["k"]

    cells = [
        (kind, seed, source, target, vocab.names, mdat_config, baseline_config, train_config.to_dict(), k_values)
        for kind in merged["experiment"]["models"]
        for seed in seeds
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_kshot_cell, cells))
    else:
        outcomes = [_kshot_cell(c) for c in cells]

    source_name, target_name = dataset_name(args.source), dataset_name(args.target)
    rows, details = [], {}
    for outcome in outcomes:  # submission order keeps the merge deterministic
        for row in outcome["rows"]:
            rows.append({"source": source_name, "target": target_name, **row})
        details.update(outcome["details"])
    result = xp.ExperimentResult("kshot", ["source", "target", "model", "k", "seed", "ua"], rows, details)
    write_report(args.out, "kshot", args.seed, merged, result)
    for row in rows:
        print(f"{row['model']} seed {row['seed']} k={row['k']}: UA {row['ua']:.4f}")
    return 0


def _ablate_cell(payload) -> dict:
    (model_number, samples, vocab_names, config, train_dict, targets) = payload
    vocab = dio.LabelVocabulary(tuple(vocab_names))
    train_config = xp.TrainConfig(**train_dict)
    train_split, test_split = dio.split_dataset(samples, train_config.train_fraction, train_config.seed)
    cfg = config.with_ablation(model_number)
    model, history = xp.train("mdat", train_split, vocab, cfg, train_config)
    g, c, t = md.ABLATION_FLAGS[model_number]
    within = xp.evaluate(model, test_split, vocab)
    row = {
        "model": model_number,
        "graph_attention": g,
        "co_attention": c,
        "transformer_encoder": t,
        "ua_within": within.ua,
    }
    details = {"history": history, "metrics_within": within.to_dict()}
    for name, target_samples in targets:
        target_report = xp.evaluate(model, target_samples, vocab)
        row[f"ua_{name}"] = target_report.ua
        details[f"metrics_{name}"] = target_report.to_dict()
    return {"row": row, "details": details}


def cmd_ablate(args) -> int:
    merged = merge_config(args)
    vocab = resolve_vocab(merged["data"]["vocabulary"])
    samples = load_samples(args.manifest, vocab)
    targets = []
    for spec in args.target or []:
        if "=" not in spec:
            raise CliError(f"--target must look like name=manifest.jsonl, got {spec!r}")
        name, path = spec.split("=", 1)
        targets.append((name, load_samples(path, vocab)))
    speech_dim, text_dim = infer_dims(samples, merged["data"])
    mdat_config, _ = build_model_configs(merged, speech_dim, text_dim, len(vocab))
    train_config = build_train_config(merged, args.seed)

    cells = [
        (n, samples, vocab.names, mdat_config, train_config.to_dict(), targets)
        for n in sorted(md.ABLATION_FLAGS)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_ablate_cell, cells))
    else:
        outcomes = [_ablate_cell(c) for c in cells]
    rows = [o["row"] for o in outcomes]
    details = {f"model{o['row']['model']}": o["details"] for o in outcomes}
    columns = ["model", "graph_attention", "co_attention", "transformer_encoder", "ua_within"]
    columns += [f"ua_{name}" for name, _ in targets]
    result = xp.ExperimentResult("ablate", columns, rows, details)
    write_report(args.out, "ablate", args.seed, merged, result)
    for row in rows:
        print(
            f"model {row['model']} (graph={row['graph_attention']}, co={row['co_attention']}, "
            f"transformer={row['transformer_encoder']}): UA {row['ua_within']:.4f}"
        )
    return 0


def cmd_gradcheck(args) -> int:
    entries = None if args.full else args.entries
    results = xp.gradient_fidelity_suite(eps=args.eps, max_entries_per_param=entries)
    key = "err64" if args.mode == "64" else "err32"
    worst = 0.0
    for name, errs in results.items():
        print(f"{name}: err64={errs['err64']:.3e} err32={errs['err32']:.3e}")
        worst = max(worst, errs[key])
    print(f"max relative error ({args.mode}-bit mode): {worst:.3e}")
    tolerance = 1e-5 if args.mode == "64" else 1e-3
    if worst >= tolerance:
        print(f"exceeds tolerance {tolerance:g}", file=sys.stderr)
        return 1
    return 0


def cmd_inspect(args) -> int:
    path = Path(args.path)
    if not path.is_file():
        raise CliError(f"file not found: {path}")
    magic = path.read_bytes()[:4]
    if magic == dio.MAGIC:
        rows, cols = dio.validate_feature_header(path)
        print(f"MDF1 feature file: rows={rows} cols={cols}")
        return 0
    if magic == ckpt.MAGIC:
        info = ckpt.describe_checkpoint(path)
        print(f"MDM1 checkpoint: kind={info['kind']} labels={','.join(info['labels'])}")
        print(f"config: {json.dumps(info['config'], sort_keys=True)}")
        for name, shape in info["tensors"].items():
            print(f"  {name}: {'x'.join(map(str, shape))}")
        return 0
    raise CliError(f"unrecognized magic {magic!r}; expected an MDF1 feature file or MDM1 checkpoint")


# ---------------------------------------------------------------------------
# argument wiring


def _add_common(p: argparse.ArgumentParser, out_required: bool = True) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed governing all randomness in this command")
    p.add_argument("--config", help="JSON config file with model/train/data/experiment sections")
    if out_required:
        p.add_argument("--out", required=True, help="directory for report.json and table.csv")


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seq-len", dest="seq_len", type=int, help="aligned sequence length for both modalities")
    p.add_argument("--speech-dim", dest="speech_dim", type=int, help="speech feature width (default: from manifest)")
    p.add_argument("--text-dim", dest="text_dim", type=int, help="text feature width (default: from manifest)")
    p.add_argument("--vocabulary", choices=sorted(VOCABULARIES), help="label vocabulary name")


def _add_train_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epochs", type=int, help="training epoch count")
    p.add_argument("--learning-rate", dest="learning_rate", type=float, help="Adam learning rate")
    p.add_argument("--batch-size", dest="batch_size", type=int, help="mini-batch size")
    p.add_argument("--train-fraction", dest="train_fraction", type=float, help="stratified train share for splits")
    p.add_argument("--no-dropout", dest="no_dropout", action="store_const", const=True, help="disable dropout during training")
    p.add_argument("--n-heads", dest="n_heads", type=int, help="self-attention head count")
    p.add_argument("--coatt-mode", dest="coatt_mode", choices=md.COATT_MODES, help="co-attention variant")
    p.add_argument("--mask-padding", dest="mask_padding", action="store_const", const=True, help="mask padded positions in attention")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="emit a synthetic dataset (feature files + manifest)")
    p.add_argument("--out", required=True, help="output directory for feature files and manifest")
    p.add_argument("--seed", type=int, default=0, help="seed governing generation")
    p.add_argument("--classes", type=int, default=4, help="number of emotion classes")
    p.add_argument("--per-class", dest="per_class", type=int, default=20, help="samples per class")
    p.add_argument("--seq-len", dest="seq_len", type=int, help="rows per feature sequence (default 8)")
    p.add_argument("--speech-dim", dest="speech_dim", type=int, help="speech feature width (default 16)")
    p.add_argument("--text-dim", dest="text_dim", type=int, help="text feature width (default 12)")
    p.add_argument("--shift", type=float, default=0.0, help="domain drift applied to every class mean")
    p.add_argument("--noise", type=float, default=0.1, help="per-row noise scale")
    p.add_argument("--anchor-seed", dest="anchor_seed", type=int, help="separate seed for class anchors (shared geometry across corpora)")
    p.add_argument("--vocabulary", choices=sorted(VOCABULARIES), help="label vocabulary for 4-class sets")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("train", help="train one model on a manifest")
    _add_common(p)
    p.add_argument("--manifest", required=True, help="training manifest (JSON lines)")
    p.add_argument("--model", choices=xp.MODEL_KINDS, default="mdat", help="model kind to train")
    p.add_argument("--save-checkpoint", dest="save_checkpoint", help="write the trained model to this MDM1 path")
    _add_data_flags(p)
    _add_train_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a checkpoint on a manifest")
    _add_common(p)
    p.add_argument("--checkpoint", required=True, help="MDM1 checkpoint to load")
    p.add_argument("--manifest", required=True, help="evaluation manifest")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cross", help="train on a source manifest, test on a target manifest")
    _add_common(p)
    p.add_argument("--source", required=True, help="source-language manifest")
    p.add_argument("--target", required=True, help="target-language manifest")
    p.add_argument("--models", help="comma-separated model kinds (mdat,baseline)")
    _add_data_flags(p)
    _add_train_flags(p)
    p.set_defaults(func=cmd_cross)

    p = sub.add_parser("kshot", help="k-shot adaptation grid from source to target")
    _add_common(p)
    p.add_argument("--source", required=True, help="source-language manifest")
    p.add_argument("--target", required=True, help="target-language manifest")
    p.add_argument("--k", help="comma-separated shot counts, e.g. 0,5,10,15")
    p.add_argument("--seeds", type=int, help="number of seeds (seed, seed+1, ...)")
    p.add_argument("--models", help="comma-separated model kinds (mdat,baseline)")
    p.add_argument("--kshot-epochs", dest="kshot_epochs", type=int, help="fine-tuning epochs per adaptation")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers over (model, seed) cells")
    _add_data_flags(p)
    _add_train_flags(p)
    p.set_defaults(func=cmd_kshot)

    p = sub.add_parser("ablate", help="run the 7-row module ablation grid")
    _add_common(p)
    p.add_argument("--manifest", required=True, help="manifest providing the train/test split")
    p.add_argument("--target", action="append", help="extra evaluation manifest as name=path; repeatable")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers over ablation rows")
    _add_data_flags(p)
    _add_train_flags(p)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("gradcheck", help="run the gradient fidelity suite and print the max error")
    p.add_argument("--seed", type=int, default=0, help="accepted for interface uniformity; the suite uses frozen draws")
    p.add_argument("--eps", type=float, default=1e-4, help="central-difference step")
    p.add_argument("--mode", choices=("64", "32"), default="64", help="which precision's error decides the exit status")
    p.add_argument("--entries", type=int, default=8, help="sampled entries per parameter (quick mode)")
    p.add_argument("--full", action="store_true", help="sweep every parameter entry instead of sampling")
    p.set_defaults(func=cmd_gradcheck)

    p = sub.add_parser("inspect", help="print the header of a feature file or checkpoint")
    p.add_argument("path", help="MDF1 feature file or MDM1 checkpoint")
    p.set_defaults(func=cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (dio.FeatureFileError, dio.ManifestError, ckpt.CheckpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
