"""Command-line interface.

Subcommands: train, classify, evaluate, sweep, inspect, gen-corpus.
Exit codes are stable: 0 success, 1 usage error, 2 input error, 3 output
error.  Options resolve as flags over an optional key=value config file
over built-in defaults; THREATFILTER_STOPLIST provides the default
stopword file.  Every run logs its resolved configuration to stderr.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

from .corpus import BinaryLabel, CorpusError, load_corpus, parse_email
from .evaluation import (
    confusion,
    default_thresholds,
    metrics,
    roc_curve,
    sweep,
)
from .features import cluster_features
from .model import (
    Model,
    ModelFormatError,
    PipelineParams,
    load_model,
    save_model,
    train,
    update_online,
)
from .scoring import Approach, ClassifierConfig, classify
from .synth import CorpusSpec, write_corpus
from .textproc import StopList, extract_features

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_OUTPUT = 3

STOPLIST_ENV = "THREATFILTER_STOPLIST"

_METRIC_FIELDS = (
    "accuracy",
    "weighted_accuracy",
    "error_rate",
    "weighted_error",
    "fp_rate",
    "fn_rate",
    "recall",
    "precision",
    "f1",
    "tcr",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit(_fail(EXIT_USAGE, message))


def _fail(code: int, message: str) -> int:
    print(f"threatfilter: error: {message}", file=sys.stderr)
    return code


def _fmt(x: float | None) -> str:
    if x is None:
        return "undefined"
    if x == float("inf"):
        return "inf"
    return f"{x:.6f}"


def _log_config(args: argparse.Namespace) -> None:
    items = sorted(
        (k, v) for k, v in vars(args).items() if k not in ("func", "config")
    )
    rendered = " ".join(f"{k}={v}" for k, v in items)
    print(f"threatfilter: config: {rendered}", file=sys.stderr)


def _resolve_stoplist(path: str | None) -> StopList:
    if path is None:
        path = os.environ.get(STOPLIST_ENV) or None
    if path is None:
        return StopList.default()
    try:
        return StopList.from_file(path)
    except OSError as exc:
        raise CorpusError(f"cannot read stoplist {path}: {exc}") from exc


def _parse_weights(text: str) -> dict[int, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated weights, got {text!r}")
    try:
        return {i + 1: float(p) for i, p in enumerate(parts)}
    except ValueError as exc:
        raise UsageError(f"bad weight list {text!r}") from exc


def _parse_approaches(text: str) -> list[Approach]:
    out = []
    for token in text.split(","):
        token = token.strip().lower()
        try:
            out.append(Approach(token))
        except ValueError as exc:
            raise UsageError(f"unknown approach {token!r} (expected bs, bm or bmc)") from exc
    return out


def _classifier_config(args: argparse.Namespace) -> ClassifierConfig:
    return ClassifierConfig(
        approach=Approach(args.approach),
        arity_weights=_parse_weights(args.arity_weights),
        context_weights=_parse_weights(args.context_weights),
        w1=args.w1,
        w2=args.w2,
        threshold=args.threshold,
        normalize=not args.no_normalize,
    )


def _pipeline_params(args: argparse.Namespace, stops: StopList, n_features: int) -> PipelineParams:
    return PipelineParams(
        max_arity=args.max_arity,
        min_token_length=args.min_token_length,
        n_features=n_features,
        stops=stops,
    )


def _load_model_checked(args: argparse.Namespace, stops: StopList) -> Model:
    model = load_model(args.model)
    expected = _pipeline_params(args, stops, len(model.selected)).fingerprint()
    if expected != model.config_fingerprint:
        print(
            f"threatfilter: warning: model {args.model} was trained with "
            "different pipeline parameters than the current flags",
            file=sys.stderr,
        )
    return model


# --- subcommand handlers -------------------------------------------------


def cmd_train(args: argparse.Namespace) -> int:
    stops = _resolve_stoplist(args.stoplist)
    try:
        corpus = load_corpus(args.corpus)
    except CorpusError as exc:
        return _fail(EXIT_INPUT, str(exc))
    for name in corpus.skipped_dirs:
        print(f"threatfilter: warning: skipped unknown directory {name}", file=sys.stderr)
    params = _pipeline_params(args, stops, args.features)
    try:
        model = train(corpus.emails, params)
    except ValueError as exc:
        return _fail(EXIT_INPUT, str(exc))
    if len(model.selected) < args.features:
        print(
            f"threatfilter: warning: only {len(model.selected)} candidate features "
            f"available (requested {args.features})",
            file=sys.stderr,
        )
    try:
        save_model(model, args.out)
    except OSError as exc:
        return _fail(EXIT_OUTPUT, f"cannot write model {args.out}: {exc}")
    print(
        f"n_threat={model.n_threat} n_normal={model.n_normal} "
        f"selected={len(model.selected)} model={args.out}"
    )
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    stops = _resolve_stoplist(args.stoplist)
    try:
        model = _load_model_checked(args, stops)
    except (OSError, ModelFormatError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    cfg = _classifier_config(args)
    groups = cluster_features(
        model.selected, model.fractions(), k=args.groups, seed=args.cluster_seed
    )

    explain_rows: list[list[str]] = []
    updates: list[tuple[dict, BinaryLabel]] = []
    had_errors = False
    for path in args.messages:
        try:
            text = Path(path).read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            had_errors = True
            print(f"threatfilter: warning: skipping {path}: {exc}", file=sys.stderr)
            continue
        email = parse_email(text, source_id=str(path))
        breakdown = classify(
            model, email, cfg, stops,
            max_arity=args.max_arity, min_length=args.min_token_length,
            groups=groups,
        )
        print(
            f"{path},{breakdown.verdict.value},"
            f"{breakdown.normalized:.6f},{breakdown.total:.6f}"
        )
        if args.explain:
            for t in breakdown.per_feature:
                explain_rows.append(
                    [
                        str(path),
                        " ".join(t.feature),
                        str(len(t.feature)),
                        f"{t.token_prob:.6f}",
                        f"{t.weight:.6f}",
                        f"{t.context_score:.6f}",
                        str(int(t.present)),
                        f"{t.term:.6f}",
                    ]
                )
        if args.update:
            fv = extract_features(email, stops, args.max_arity, args.min_token_length)
            updates.append((fv, breakdown.verdict))

    if args.explain:
        try:
            with open(args.explain, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(
                    ["source_id", "feature", "arity", "token_prob",
                     "weight", "context_score", "present", "term"]
                )
                writer.writerows(explain_rows)
        except OSError as exc:
            return _fail(EXIT_OUTPUT, f"cannot write breakdown {args.explain}: {exc}")

    if args.update and updates:
        for fv, verdict in updates:
            model = update_online(model, fv, verdict)
        try:
            save_model(model, args.model)
        except OSError as exc:
            return _fail(EXIT_OUTPUT, f"cannot rewrite model {args.model}: {exc}")

    return EXIT_INPUT if had_errors else EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    stops = _resolve_stoplist(args.stoplist)
    try:
        model = _load_model_checked(args, stops)
        corpus = load_corpus(args.test)
    except (OSError, ModelFormatError, CorpusError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    if not corpus.emails:
        return _fail(EXIT_INPUT, f"no messages under {args.test}")
    cfg = _classifier_config(args)

    predictions = []
    gold = []
    scored = []
    for message in corpus.emails:
        breakdown = classify(
            model, message.email, cfg, stops,
            max_arity=args.max_arity, min_length=args.min_token_length,
        )
        predictions.append(breakdown.verdict)
        gold.append(message.label.binary)
        decision = breakdown.normalized if cfg.normalize else breakdown.total
        scored.append((decision, message.label.binary))

    counts = confusion(predictions, gold)
    report = metrics(counts, args.lam)
    print(f"n_nn={counts.n_nn} n_nt={counts.n_nt} n_tn={counts.n_tn} n_tt={counts.n_tt}")
    print(f"lambda={args.lam:g}")
    for name in _METRIC_FIELDS:
        print(f"{name}={_fmt(getattr(report, name))}")

    if args.roc:
        try:
            points = roc_curve(scored, default_thresholds([s for s, _ in scored]))
        except ValueError as exc:
            return _fail(EXIT_INPUT, str(exc))
        try:
            with open(args.roc, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["threshold", "fp_rate", "tp_rate"])
                for p in points:
                    writer.writerow([f"{p.threshold:.6f}", f"{p.fp_rate:.6f}", f"{p.tp_rate:.6f}"])
        except OSError as exc:
            return _fail(EXIT_OUTPUT, f"cannot write ROC {args.roc}: {exc}")
    return EXIT_OK


_AXIS_BY_FLAG = {"data": "data_size", "features": "feature_count"}


def cmd_sweep(args: argparse.Namespace) -> int:
    stops = _resolve_stoplist(args.stoplist)
    try:
        corpus = load_corpus(args.corpus)
    except CorpusError as exc:
        return _fail(EXIT_INPUT, str(exc))
    try:
        values = [int(v) for v in args.values.split(",")]
    except ValueError:
        raise UsageError(f"bad --values list {args.values!r}")
    approaches = _parse_approaches(args.approaches)
    params = _pipeline_params(args, stops, args.features)
    cfg = _classifier_config(args)
    try:
        rows = sweep(
            corpus.emails,
            _AXIS_BY_FLAG[args.axis],
            values,
            approaches,
            args.seed,
            params=params,
            cfg_base=cfg,
            ratio=args.ratio,
            lam=args.lam,
        )
    except ValueError as exc:
        return _fail(EXIT_INPUT, str(exc))

    def emit(fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["axis", "value", "approach", "lambda", *_METRIC_FIELDS])
        for row in rows:
            writer.writerow(
                [row.axis, row.value, row.approach.value, f"{args.lam:g}"]
                + [_fmt(getattr(row.metrics, name)) for name in _METRIC_FIELDS]
            )

    if args.out:
        try:
            with open(args.out, "w", newline="", encoding="utf-8") as fh:
                emit(fh)
        except OSError as exc:
            return _fail(EXIT_OUTPUT, f"cannot write sweep table {args.out}: {exc}")
    else:
        emit(sys.stdout)
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    stops = _resolve_stoplist(args.stoplist)
    try:
        model = _load_model_checked(args, stops)
    except (OSError, ModelFormatError) as exc:
        return _fail(EXIT_INPUT, str(exc))

    def emit_ranked(fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["feature", "arity", "ig", "threat_docs", "normal_docs"])
        for feature, ig in model.selected:
            hb, hg = model.library[feature]
            writer.writerow([" ".join(feature), len(feature), f"{ig:.6f}", hb, hg])

    if args.out:
        try:
            with open(args.out, "w", newline="", encoding="utf-8") as fh:
                emit_ranked(fh)
        except OSError as exc:
            return _fail(EXIT_OUTPUT, f"cannot write {args.out}: {exc}")
    else:
        emit_ranked(sys.stdout)

    if args.groups_out:
        groups = cluster_features(
            model.selected, model.fractions(), k=args.groups, seed=args.cluster_seed
        )
        try:
            with open(args.groups_out, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["feature", "arity", "group"])
                for idx, members in enumerate(groups.groups):
                    for feature in sorted(members):
                        writer.writerow([" ".join(feature), len(feature), idx])
        except OSError as exc:
            return _fail(EXIT_OUTPUT, f"cannot write {args.groups_out}: {exc}")
    return EXIT_OK


def cmd_gen_corpus(args: argparse.Namespace) -> int:
    spec = CorpusSpec(
        n_threat=args.threat,
        n_spam=args.spam,
        n_legitimate=args.legitimate,
        seed=args.seed,
    )
    try:
        counts = write_corpus(args.out, spec)
    except ValueError as exc:
        raise UsageError(str(exc))
    except OSError as exc:
        return _fail(EXIT_OUTPUT, f"cannot write corpus under {args.out}: {exc}")
    rendered = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"generated {sum(counts.values())} messages: {rendered} root={args.out}")
    return EXIT_OK


# --- parser construction --------------------------------------------------


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--stoplist", help=f"stopword file (default ${STOPLIST_ENV} or built-in)")
    p.add_argument("--max-arity", type=int, default=3, help="longest keyword n-gram (1-3)")
    p.add_argument("--min-token-length", type=int, default=4,
                   help="drop tokens shorter than this (1 disables)")


def _add_scoring_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--approach", choices=[a.value for a in Approach], default="bmc")
    p.add_argument("--threshold", type=float, default=0.5, help="decision threshold")
    p.add_argument("--w1", type=float, default=1.0, help="keyword score factor")
    p.add_argument("--w2", type=float, default=0.5, help="context score factor")
    p.add_argument("--arity-weights", default="1,2,3",
                   help="comma list of weights for 1,2,3-keyword tokens")
    p.add_argument("--context-weights", default="1,2,3",
                   help="comma list of context weights for 1,2,3-keyword tokens")
    p.add_argument("--no-normalize", action="store_true",
                   help="compare the raw total against the threshold")


def build_parser() -> _Parser:
    parser = _Parser(prog="threatfilter", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model from a labeled corpus")
    p.add_argument("--corpus", required=True, help="corpus root directory")
    p.add_argument("--out", required=True, help="model file to write")
    p.add_argument("--features", type=int, default=60, help="features to select")
    _add_pipeline_flags(p)
    p.add_argument("--config", help="key=value config file")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="score message files against a model")
    p.add_argument("--model", required=True)
    _add_scoring_flags(p)
    _add_pipeline_flags(p)
    p.add_argument("--groups", type=int, default=4, help="feature groups for breakdowns")
    p.add_argument("--cluster-seed", type=int, default=0)
    p.add_argument("--update", action="store_true",
                   help="fold each verdict back into the model file")
    p.add_argument("--explain", help="write per-feature breakdown CSV here")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("messages", nargs="+", help="message files")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", help="score a labeled test corpus and report metrics")
    p.add_argument("--model", required=True)
    p.add_argument("--test", required=True, help="labeled test corpus root")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="cost weight on misclassified normal mail")
    p.add_argument("--roc", help="write ROC curve CSV here")
    _add_scoring_flags(p)
    _add_pipeline_flags(p)
    p.add_argument("--config", help="key=value config file")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="retrain across data sizes or feature counts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--axis", choices=sorted(_AXIS_BY_FLAG), required=True)
    p.add_argument("--values", required=True, help="comma list, e.g. 10,20,40,60")
    p.add_argument("--approaches", default="bs,bm,bmc")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ratio", type=float, default=0.75, help="training fraction")
    p.add_argument("--features", type=int, default=60)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--out", help="sweep table CSV (default stdout)")
    _add_scoring_flags(p)
    _add_pipeline_flags(p)
    p.add_argument("--config", help="key=value config file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("inspect", help="dump ranked features and groups")
    p.add_argument("--model", required=True)
    p.add_argument("--out", help="ranked features CSV (default stdout)")
    p.add_argument("--groups-out", help="feature group CSV")
    p.add_argument("--groups", type=int, default=4)
    p.add_argument("--cluster-seed", type=int, default=0)
    _add_pipeline_flags(p)
    p.add_argument("--config", help="key=value config file")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("gen-corpus", help="write a deterministic synthetic corpus")
    p.add_argument("--out", required=True, help="corpus root to create")
    p.add_argument("--threat", type=int, default=1600)
    p.add_argument("--spam", type=int, default=2700)
    p.add_argument("--legitimate", type=int, default=2700)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="key=value config file")
    p.set_defaults(func=cmd_gen_corpus)

    return parser


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        entry = line.split("#", 1)[0].strip()
        if not entry:
            continue
        key, sep, value = entry.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"bad config line {lineno} in {path}: {line!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, sub_name: str, argv: list[str]) -> None:
    """Install config-file values as subparser defaults; flags still win."""
    if "--config" not in argv:
        return
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise UsageError("--config needs a file path")
    values = _read_config_file(argv[idx + 1])

    subparsers = next(
        a for a in parser._actions if isinstance(a, argparse._SubParsersAction)
    )
    if sub_name not in subparsers.choices:
        return  # let parse_args report the unknown subcommand
    subparser = subparsers.choices[sub_name]
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, raw in values.items():
        if key == "lambda":
            key = "lam"
        action = actions.get(key)
        if action is None:
            raise UsageError(f"unknown config key {key!r} for {sub_name}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            try:
                defaults[key] = action.type(raw)
            except ValueError as exc:
                raise UsageError(f"bad config value for {key}: {raw!r}") from exc
        else:
            defaults[key] = raw
    subparser.set_defaults(**defaults)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv and not argv[0].startswith("-"):
            _apply_config(parser, argv[0], argv)
        args = parser.parse_args(argv)
        _log_config(args)
        return args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OUTPUT


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
