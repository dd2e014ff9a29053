"""
Command-line interface.

One binary with a subcommand per pipeline stage::

    adsb-sentinel synth    --n 400 --seed 1 --out flights.csv
    adsb-sentinel ingest   --in raw.csv --units metric --min-len 60 --out clean.csv
    adsb-sentinel inject   --in flights.csv --dataset b --seed 1 --out dataset_b/
    adsb-sentinel pretrain --arch xlstm --data flights.csv --split-seed 1 --out pretrained.json
    adsb-sentinel finetune --arch xlstm --classifier alt --pretrained pretrained.json \\
                           --data dataset_b/ --out ckpt/alt.json
    adsb-sentinel evaluate --ckpt-dir ckpt/ --data dataset_c/ --out report/
    adsb-sentinel bench    --ckpt-dir ckpt/ --data dataset_c/ --reps 3 --out bench.json

Failures print one JSON line on stderr and exit with 2 (usage), 3 (schema or
configuration violation), 4 (missing input file or checkpoint) or 1.
"""

import argparse
import json
import os
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, NoReturn, Optional

from adsb_sentinel import __version__
from adsb_sentinel.attacks import (
    CLASS_IDS,
    CLASSES,
    CLASSIFIER_GROUPS,
    DEFAULT_DELTAS,
    DEFAULT_STANDING_STILL_LENGTH,
    GROUPS,
    SPLITS,
    AttackError,
    AttackKind,
    build_dataset_b,
    build_dataset_c,
    build_unseen_set,
    label_counts,
    parse_attack_kind,
    read_windows_csv,
    split_flights,
    write_dataset_manifest,
    write_windows_csv,
)
from adsb_sentinel.data import (
    DataError,
    SynthProfile,
    clean,
    group_flights,
    ingest_csv,
    synthesize_flights,
    write_flights_csv,
)
from adsb_sentinel.errors import ConfigurationError, SentinelError, UsageError
from adsb_sentinel.evaluation import (
    EnsembleMismatchError,
    MissingCheckpointError,
    ReconstructionDetector,
    WindowLengthError,
    bench_latency,
    evaluate,
    load_ensemble,
)
from adsb_sentinel.manifest import RunManifest
from adsb_sentinel.telemetry import LoggingFacade, configure_telemetry
from adsb_sentinel.training import (
    FINETUNE_DEFAULTS,
    PRETRAIN_LEARNING_RATE,
    CheckpointError,
    load_checkpoint,
    load_train_config,
    prepare_pretrain_windows,
    pretrain,
    save_checkpoint,
)
from adsb_sentinel.training import finetune as run_finetune

logger = LoggingFacade("adsb_sentinel.cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_SCHEMA = 3
EXIT_MISSING = 4


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as one JSON line."""

    def error(self, message: str) -> NoReturn:
        _emit_error("UsageError", f"{self.prog}: {message}", EXIT_USAGE)
        raise SystemExit(EXIT_USAGE)


def _emit_error(kind: str, message: str, code: int) -> None:
    line = json.dumps({"error": kind, "message": message, "exit_code": code})
    print(line, file=sys.stderr)


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (FileNotFoundError, MissingCheckpointError)):
        return EXIT_MISSING
    if isinstance(exc, UsageError):
        return EXIT_USAGE
    schema = (
        ConfigurationError,
        DataError,
        AttackError,
        CheckpointError,
        EnsembleMismatchError,
        WindowLengthError,
    )
    if isinstance(exc, schema):
        return EXIT_SCHEMA
    return EXIT_FAILURE


def _read_flights(path: str):
    return group_flights(ingest_csv(path).records)


def _defaults_epilog() -> str:
    lines = ["pre-training defaults: 20 epochs, batch 32, length 10"]
    for arch, lr in PRETRAIN_LEARNING_RATE.items():
        lines.append(f"  {arch}: learning rate {lr:g}")
    lines.append("fine-tuning defaults (epochs, batch, learning rate, dropout), length 50:")
    for arch, table in FINETUNE_DEFAULTS.items():
        for name, (epochs, batch, lr, dropout) in table.items():
            lines.append(f"  {arch} {name}: {epochs}, {batch}, {lr:g}, {dropout}")
    return "\n".join(lines)


# Commands


def cmd_synth(args: argparse.Namespace) -> int:
    profile = SynthProfile(
        min_records=args.min_records,
        max_records=args.max_records,
        turn_probability=args.turn_probability,
    )
    run = RunManifest("synth", {"n": args.n, "profile": vars(profile)}, args.seed)
    flights = synthesize_flights(args.n, args.seed, profile)
    write_flights_csv(flights, args.out)
    run.outputs.append(args.out)
    run.write(args.out)
    return EXIT_OK


def cmd_ingest(args: argparse.Namespace) -> int:
    run = RunManifest(
        "ingest", {"units": args.units, "min_len": args.min_len}, None, inputs={"in": args.input}
    )
    result = ingest_csv(args.input, units=args.units)
    flights = clean(group_flights(result.records), args.min_len)
    write_flights_csv(flights, args.out)
    run.config["skipped_rows"] = result.skipped
    run.config["flights"] = len(flights)
    run.outputs.append(args.out)
    run.write(args.out)
    return EXIT_OK


def cmd_inject(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    kind = parse_attack_kind(args.attack) if args.attack else None
    config: dict[str, Any] = {
        "attack": kind.value if kind else None,
        "delta": args.delta,
        "dataset": args.dataset,
        "length": args.length,
        "stride": args.stride,
        "split": args.split,
    }
    run = RunManifest("inject", config, args.seed, inputs={"in": args.input})
    flights = _read_flights(args.input)
    outputs: list[Path] = []

    if kind is AttackKind.STANDING_STILL:
        still_length = int(args.delta) if args.delta is not None else DEFAULT_STANDING_STILL_LENGTH
        unseen = build_unseen_set(
            flights, args.length, args.seed, still_length, args.stride, split=args.split
        )
        outputs.append(out / "unseen.csv")
        write_windows_csv(unseen.windows, outputs[-1])
        info = {
            "kind": "unseen",
            "still_length": still_length,
            "counts": label_counts(unseen.windows),
            "assignments": [a.to_dict() for a in unseen.assignments],
        }
    else:
        deltas = dict(DEFAULT_DELTAS)
        if kind is not None and args.delta is not None:
            deltas[kind] = args.delta
        build_kwargs = dict(split=args.split, deltas=deltas, stride=args.stride)
        if args.dataset == "b":
            dataset = build_dataset_b(flights, args.length, args.seed, **build_kwargs)
            counts = {}
            for group in GROUPS:
                for split in SPLITS:
                    windows = dataset.subsets[group].split(split)
                    outputs.append(out / f"b_{group}_{split}.csv")
                    write_windows_csv(windows, outputs[-1])
                    counts[f"{group}_{split}"] = label_counts(windows)
        else:
            dataset = build_dataset_c(flights, args.length, args.seed, **build_kwargs)
            counts = {}
            for split in SPLITS:
                outputs.append(out / f"c_{split}.csv")
                write_windows_csv(dataset.split(split), outputs[-1])
                counts[split] = label_counts(dataset.split(split))
        info = {
            "kind": f"dataset_{args.dataset}",
            "deltas": {k.value: v for k, v in deltas.items()},
            "counts": counts,
            "assignments": [a.to_dict() for a in dataset.assignments],
        }

    info.update({"seed": args.seed, "length": args.length, "stride": args.stride})
    write_dataset_manifest(out / "dataset.json", info)
    run.outputs.extend(str(p) for p in outputs + [out / "dataset.json"])
    run.write(out)
    return EXIT_OK


def cmd_pretrain(args: argparse.Namespace) -> int:
    config = load_train_config(args.config, "pretrain", args.arch, seed=args.seed)
    settings = {**config.to_dict(), "split_seed": args.split_seed, "split": args.split}
    run = RunManifest("pretrain", settings, config.seed, inputs={"data": args.data})
    if args.config:
        run.inputs["config"] = args.config
    # Only training-split flights; inject with the same seed holds out the rest.
    flights = split_flights(_read_flights(args.data), args.split_seed, args.split)["train"]
    stats, windows = prepare_pretrain_windows(flights, config.sequence_length, args.stride)
    checkpoint = pretrain(config, windows, stats)
    save_checkpoint(checkpoint, args.out)
    run.outputs.append(args.out)
    run.write(args.out)
    return EXIT_OK


def _subset_path(data: str, classifier: str, split: str) -> Path:
    path = Path(data)
    if path.is_dir():
        return path / f"b_{CLASSIFIER_GROUPS[classifier]}_{split}.csv"
    return path


def cmd_finetune(args: argparse.Namespace) -> int:
    config = load_train_config(
        args.config, "finetune", args.arch, classifier=args.classifier.upper(), seed=args.seed
    )
    train_path = _subset_path(args.data, args.classifier, "train")
    run = RunManifest(
        "finetune",
        config.to_dict(),
        config.seed,
        inputs={"pretrained": args.pretrained, "data": str(train_path)},
    )
    if args.config:
        run.inputs["config"] = args.config
    pretrained = load_checkpoint(args.pretrained)
    windows = read_windows_csv(train_path)
    validation = None
    if args.validation:
        run.inputs["validation"] = args.validation
        validation = read_windows_csv(args.validation)
    checkpoint = run_finetune(config, pretrained, windows, validation)
    save_checkpoint(checkpoint, args.out)
    run.outputs.append(args.out)
    run.write(args.out)
    return EXIT_OK


def _eval_data_path(data: str, unseen: bool) -> Path:
    path = Path(data)
    if path.is_dir():
        return path / ("unseen.csv" if unseen else "c_test.csv")
    return path


def cmd_evaluate(args: argparse.Namespace) -> int:
    data_path = _eval_data_path(args.data, args.unseen)
    out = Path(args.out)
    run = RunManifest(
        "evaluate",
        {"unseen": args.unseen, "measure_latency": args.measure_latency},
        None,
        inputs={"ckpt_dir": args.ckpt_dir, "data": str(data_path)},
    )
    ids = load_ensemble(args.ckpt_dir)
    windows = read_windows_csv(data_path)
    report = evaluate(ids, windows, unseen=args.unseen, measure_latency=args.measure_latency)

    out.mkdir(parents=True, exist_ok=True)
    report.write_json(out / "report.json")
    (out / "report.txt").write_text(report.render_table() + "\n", encoding="utf-8")
    report.write_predictions_csv(out / "predictions.csv", CLASSES)
    run.outputs.extend(str(out / name) for name in ("report.json", "report.txt", "predictions.csv"))
    print(report.render_table())

    if args.forecaster:
        run.inputs["forecaster"] = args.forecaster
        calibration_path = args.calibration or str(data_path)
        run.inputs["calibration"] = calibration_path
        detector = ReconstructionDetector(load_checkpoint(args.forecaster))
        benign = [w for w in read_windows_csv(calibration_path) if w.label == CLASS_IDS["GN"]]
        detector.calibrate(benign)
        baseline = detector.evaluate(windows)
        baseline.write_json(out / "reconstruction.json")
        run.outputs.append(str(out / "reconstruction.json"))
        print()
        print(baseline.render_table())

    run.write(out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    data_path = _eval_data_path(args.data, unseen=False)
    run = RunManifest(
        "bench",
        {"reps": args.reps, "limit": args.limit},
        None,
        inputs={"ckpt_dir": args.ckpt_dir, "data": str(data_path)},
    )
    ids = load_ensemble(args.ckpt_dir)
    windows = read_windows_csv(data_path)
    if args.limit:
        windows = windows[: args.limit]
    result = bench_latency(ids, windows, repetitions=args.reps)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8")
    stats = result.stats
    print(
        f"latency per window over {stats.count} samples: mean {stats.mean:.4f}s "
        f"p50 {stats.p50:.4f}s p95 {stats.p95:.4f}s max {stats.max:.4f}s; "
        f"SSR 5-12 s window: {stats.within_ssr_window}, under 5 s: {stats.under_ssr_minimum}"
    )
    run.outputs.append(str(out))
    run.write(out)
    return EXIT_OK


# Parser


def build_parser() -> argparse.ArgumentParser:
    defaults = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(
        prog="adsb-sentinel",
        description="ADS-B intrusion detection with xLSTM and transformer models.",
        formatter_class=defaults,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default=os.environ.get("ADSB_SENTINEL_LOG_LEVEL", "INFO"),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="log level (env ADSB_SENTINEL_LOG_LEVEL)",
    )
    parser.add_argument(
        "--json-logs", action="store_true", help="emit JSON log lines on stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="generate synthetic flights", formatter_class=defaults)
    p.add_argument("--n", type=int, default=200, help="number of flights")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--min-records", type=int, default=80, help="shortest flight")
    p.add_argument("--max-records", type=int, default=160, help="longest flight")
    p.add_argument(
        "--turn-probability", type=float, default=0.05, help="chance per message to start a turn"
    )
    p.add_argument("--out", required=True, help="flights CSV to write")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser(
        "ingest", help="parse, group and clean state vectors", formatter_class=defaults
    )
    p.add_argument("--in", dest="input", required=True, help="state-vector CSV")
    p.add_argument(
        "--units", choices=["aviation", "metric"], default="aviation", help="input units"
    )
    p.add_argument("--min-len", type=int, default=50, help="drop flights shorter than this")
    p.add_argument("--out", required=True, help="cleaned flights CSV to write")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser(
        "inject",
        help="inject attacks and assemble labelled datasets",
        formatter_class=defaults,
        epilog="drift increments: altitude 82 ft, groundspeed 1.9 kn, heading 1 deg per "
        f"message; standing still freezes {DEFAULT_STANDING_STILL_LENGTH} messages",
    )
    p.add_argument("--in", dest="input", required=True, help="flights CSV")
    p.add_argument(
        "--attack",
        choices=["alt", "gs", "hdg", "still"],
        default=None,
        help="override one drift increment, or 'still' for the unseen-attack set",
    )
    p.add_argument(
        "--delta",
        type=float,
        default=None,
        help="increment per message for the chosen drift, or frozen messages for 'still'",
    )
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--dataset", choices=["b", "c"], default="b", help="one-vs-rest or multiclass")
    p.add_argument("--length", type=int, default=50, help="window length")
    p.add_argument("--stride", type=int, default=1, help="window stride")
    p.add_argument("--split", type=float, default=0.8, help="train fraction of flights")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser(
        "pretrain",
        help="forecasting pre-training on benign flights",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=_defaults_epilog(),
    )
    p.add_argument("--arch", choices=["xlstm", "tx", "transformer"], required=True)
    p.add_argument("--data", required=True, help="benign flights CSV")
    p.add_argument("--config", default=None, help="YAML/JSON training config overrides")
    p.add_argument("--seed", type=int, default=None, help="random seed (overrides config)")
    p.add_argument("--stride", type=int, default=1, help="window stride (default 1)")
    p.add_argument(
        "--split-seed", type=int, default=0, help="inject --seed whose test flights are held out"
    )
    p.add_argument("--split", type=float, default=0.8, help="train fraction of flights")
    p.add_argument("--out", required=True, help="checkpoint to write")
    p.set_defaults(func=cmd_pretrain)

    p = sub.add_parser(
        "finetune",
        help="fine-tune one binary detector",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=_defaults_epilog(),
    )
    p.add_argument("--arch", choices=["xlstm", "tx", "transformer"], required=True)
    p.add_argument("--classifier", choices=["alt", "gs", "hdg", "gn"], required=True)
    p.add_argument("--pretrained", required=True, help="pre-trained checkpoint")
    p.add_argument("--data", required=True, help="Dataset B directory or subset CSV")
    p.add_argument("--validation", default=None, help="optional validation windows CSV")
    p.add_argument("--config", default=None, help="YAML/JSON training config overrides")
    p.add_argument("--seed", type=int, default=None, help="random seed (overrides config)")
    p.add_argument("--out", required=True, help="checkpoint to write")
    p.set_defaults(func=cmd_finetune)

    p = sub.add_parser("evaluate", help="evaluate the ensemble IDS", formatter_class=defaults)
    p.add_argument("--ckpt-dir", required=True, help="directory with alt/gs/hdg/gn.json")
    p.add_argument("--data", required=True, help="Dataset C directory or windows CSV")
    p.add_argument("--unseen", action="store_true", help="score the unseen-attack set")
    p.add_argument("--forecaster", default=None, help="also run the reconstruction baseline")
    p.add_argument(
        "--calibration", default=None, help="benign calibration windows (default: --data)"
    )
    p.add_argument(
        "--measure-latency", action="store_true", help="time every window on one thread"
    )
    p.add_argument("--out", required=True, help="report directory")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="benchmark ensemble latency", formatter_class=defaults)
    p.add_argument("--ckpt-dir", required=True, help="directory with alt/gs/hdg/gn.json")
    p.add_argument("--data", required=True, help="Dataset C directory or windows CSV")
    p.add_argument("--reps", type=int, default=3, help="passes over the windows")
    p.add_argument("--limit", type=int, default=0, help="use only the first N windows (0: all)")
    p.add_argument("--out", required=True, help="latency report JSON")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_telemetry(
        log_level=args.log_level,
        json_logs=args.json_logs or None,
        trace_enabled=None if os.environ.get("OTEL_TRACES_EXPORTER") else False,
    )
    try:
        return args.func(args)
    except (SentinelError, FileNotFoundError, ValueError) as e:
        code = exit_code_for(e)
        logger.error(
            "command.failed", command=args.command, error=str(e), error_type=type(e).__name__
        )
        _emit_error(type(e).__name__, str(e), code)
        return code
