"""Classifier evaluation: confusion counts, the metric suite, ROC, sweeps.

Metrics follow the standard cost-weighted scheme for mail filtering: a
lambda weight makes a misclassified normal message count lambda times,
and the total cost ratio (TCR) compares filtering against not filtering
at all.  Metrics whose denominator is empty are reported as None rather
than a fabricated zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .corpus import BinaryLabel, LabeledEmail, split_corpus
from .model import Model, PipelineParams, train
from .scoring import Approach, ClassifierConfig, decide, score_vector
from .textproc import extract_features

# cost-weight presets commonly reported for mail filters
LAMBDA_PRESETS = (1.0, 9.0, 999.0)


@dataclass(frozen=True)
class ConfusionCounts:
    n_nn: int  # normal classified normal
    n_nt: int  # normal misclassified threat (false positive)
    n_tn: int  # threat misclassified normal (false negative)
    n_tt: int  # threat classified threat

    @property
    def total(self) -> int:
        return self.n_nn + self.n_nt + self.n_tn + self.n_tt


@dataclass(frozen=True)
class MetricsReport:
    lam: float
    accuracy: float | None
    weighted_accuracy: float | None
    error_rate: float | None
    weighted_error: float | None
    fp_rate: float | None
    fn_rate: float | None
    recall: float | None
    precision: float | None
    f1: float | None
    tcr: float | None


@dataclass(frozen=True)
class RocPoint:
    threshold: float
    fp_rate: float
    tp_rate: float


def confusion(
    predictions: Sequence[BinaryLabel], gold: Sequence[BinaryLabel]
) -> ConfusionCounts:
    if len(predictions) != len(gold):
        raise ValueError(
            f"length mismatch: {len(predictions)} predictions vs {len(gold)} gold labels"
        )
    if not gold:
        raise ValueError("cannot tally an empty prediction list")
    cells = {"nn": 0, "nt": 0, "tn": 0, "tt": 0}
    for pred, truth in zip(predictions, gold):
        key = ("t" if truth is BinaryLabel.THREAT else "n") + (
            "t" if pred is BinaryLabel.THREAT else "n"
        )
        cells[key] += 1
    return ConfusionCounts(
        n_nn=cells["nn"], n_nt=cells["nt"], n_tn=cells["tn"], n_tt=cells["tt"]
    )


def _ratio(num: float, den: float) -> float | None:
    return num / den if den else None


def metrics(c: ConfusionCounts, lam: float = 1.0) -> MetricsReport:
    """The full measure suite at cost weight lam.

    TCR is +inf for a perfect filter (no false positives or negatives on
    a corpus that contains threats) and None when 0/0.
    """
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    if c.total < 1:
        raise ValueError("confusion counts are empty")

    weighted_den = lam * (c.n_nn + c.n_nt) + c.n_tn + c.n_tt
    precision = _ratio(c.n_tt, c.n_nt + c.n_tt)
    recall = _ratio(c.n_tt, c.n_tn + c.n_tt)
    if precision is None or recall is None:
        f1 = None
    elif precision + recall == 0:
        f1 = 0.0
    else:
        f1 = 2 * precision * recall / (precision + recall)

    tcr_num = c.n_tn + c.n_tt
    tcr_den = lam * c.n_nt + c.n_tn
    if tcr_den:
        tcr = tcr_num / tcr_den
    else:
        tcr = float("inf") if tcr_num > 0 else None

    return MetricsReport(
        lam=lam,
        accuracy=(c.n_nn + c.n_tt) / c.total,
        weighted_accuracy=_ratio(lam * c.n_nn + c.n_tt, weighted_den),
        error_rate=(c.n_nt + c.n_tn) / c.total,
        weighted_error=_ratio(lam * c.n_nt + c.n_tn, weighted_den),
        fp_rate=_ratio(c.n_nt, c.n_nn + c.n_nt),
        fn_rate=_ratio(c.n_tn, c.n_tn + c.n_tt),
        recall=recall,
        precision=precision,
        f1=f1,
        tcr=tcr,
    )


def roc_curve(
    scores: Sequence[tuple[float, BinaryLabel]], thresholds: Sequence[float]
) -> list[RocPoint]:
    """(fp_rate, tp_rate) at each threshold, sorted by threshold descending.

    A message is called threat when its score strictly exceeds the
    threshold, so rates grow monotonically as the threshold drops.
    """
    n_pos = sum(1 for _, g in scores if g is BinaryLabel.THREAT)
    n_neg = len(scores) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("ROC needs at least one threat and one normal example")
    points = []
    for tau in sorted(thresholds, reverse=True):
        tp = sum(1 for s, g in scores if g is BinaryLabel.THREAT and s > tau)
        fp = sum(1 for s, g in scores if g is not BinaryLabel.THREAT and s > tau)
        points.append(RocPoint(threshold=tau, fp_rate=fp / n_neg, tp_rate=tp / n_pos))
    return points


def default_thresholds(scores: Sequence[float]) -> list[float]:
    """Every distinct score, bracketed so the curve spans (0,0) to (1,1)."""
    distinct = sorted(set(scores), reverse=True)
    if not distinct:
        return [1.0, 0.0]
    return [distinct[0] + 1.0, *distinct, distinct[-1] - 1.0]


@dataclass(frozen=True)
class SweepRow:
    axis: str
    value: int
    approach: Approach
    metrics: MetricsReport


SWEEP_AXES = ("data_size", "feature_count")


def _stratified_subsample(
    corpus: list[LabeledEmail], size: int, seed: int
) -> list[LabeledEmail]:
    fraction = size / len(corpus)
    by_label: dict = {}
    for m in corpus:
        by_label.setdefault(m.label, []).append(m)
    sample: list[LabeledEmail] = []
    for label, members in by_label.items():
        rng = random.Random(f"subsample:{seed}:{label.value}")
        rng.shuffle(members)
        sample.extend(members[: int(fraction * len(members))])
    return sample


def sweep(
    corpus: list[LabeledEmail],
    axis: str,
    values: Sequence[int],
    approaches: Sequence[Approach],
    seed: int,
    params: PipelineParams | None = None,
    cfg_base: ClassifierConfig | None = None,
    ratio: float = 0.75,
    lam: float = 1.0,
) -> list[SweepRow]:
    """Retrain and evaluate across data sizes or feature counts.

    For each axis value the corpus is (for data_size) stratified-subsampled
    or (for feature_count) re-selected at that many features, split
    ratio/1-ratio, trained once, and every approach scored on the held-out
    part.  Deterministic in seed.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    params = params or PipelineParams()
    cfg_base = cfg_base or ClassifierConfig()

    rows: list[SweepRow] = []
    for value in values:
        if value < 1:
            raise ValueError(f"sweep values must be >= 1, got {value}")
        if axis == "data_size":
            if value > len(corpus):
                raise ValueError(
                    f"data size {value} exceeds corpus size {len(corpus)}"
                )
            subset = _stratified_subsample(corpus, value, seed)
            run_params = params
        else:
            subset = corpus
            run_params = PipelineParams(
                max_arity=params.max_arity,
                min_token_length=params.min_token_length,
                n_features=value,
                stops=params.stops,
            )
        split = split_corpus(subset, ratio, seed)
        model = train(split.train, run_params)
        if axis == "feature_count" and len(model.selected) < value:
            raise ValueError(
                f"feature count {value} exceeds the {len(model.selected)} "
                "candidate features available"
            )
        rows.extend(
            _evaluate_split(model, split.test, axis, value, approaches, cfg_base,
                            run_params, lam)
        )
    return rows


def _evaluate_split(
    model: Model,
    test: list[LabeledEmail],
    axis: str,
    value: int,
    approaches: Sequence[Approach],
    cfg_base: ClassifierConfig,
    params: PipelineParams,
    lam: float,
) -> list[SweepRow]:
    vectors = [
        (
            extract_features(
                m.email, params.stops, params.max_arity, params.min_token_length
            ),
            m.label.binary,
        )
        for m in test
    ]
    rows = []
    for approach in approaches:
        cfg = ClassifierConfig(
            approach=approach,
            arity_weights=cfg_base.arity_weights,
            context_weights=cfg_base.context_weights,
            w1=cfg_base.w1,
            w2=cfg_base.w2,
            threshold=cfg_base.threshold,
            normalize=cfg_base.normalize,
        )
        predictions = []
        gold = []
        for fv, truth in vectors:
            raw, normalized, _, _ = score_vector(model, fv, cfg)
            predictions.append(decide(raw, normalized, cfg))
            gold.append(truth)
        rows.append(
            SweepRow(
                axis=axis,
                value=value,
                approach=approach,
                metrics=metrics(confusion(predictions, gold), lam),
            )
        )
    return rows
