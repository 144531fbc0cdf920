"""Threat scores and verdicts.

Three scoring approaches over a message's selected features:

* ``bs``  - single keyword: sum of token probabilities of the one-keyword
  features present.
* ``bm``  - weighted multi-keyword: every selected feature present
  contributes its token probability times an arity weight.
* ``bmc`` - weighted multi-keyword plus keyword context: multi-keyword
  features additionally earn partial credit proportional to the fraction
  of their constituent keywords found anywhere in the message, whether or
  not the full phrase occurs.

Scores are sums of per-feature terms, normalized by default to the number
of contributing terms so the decision threshold is independent of message
and model size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .corpus import BinaryLabel, RawEmail
from .features import FeatureGroups, cluster_features
from .model import Model, token_prob
from .textproc import Feature, FeatureVector, StopList, extract_features


class Approach(Enum):
    SINGLE = "bs"
    WEIGHTED = "bm"
    CONTEXT_WEIGHTED = "bmc"


DEFAULT_ARITY_WEIGHTS = {1: 1.0, 2: 2.0, 3: 3.0}


@dataclass(frozen=True)
class ClassifierConfig:
    approach: Approach = Approach.CONTEXT_WEIGHTED
    arity_weights: dict[int, float] = field(
        default_factory=lambda: dict(DEFAULT_ARITY_WEIGHTS)
    )
    context_weights: dict[int, float] = field(
        default_factory=lambda: dict(DEFAULT_ARITY_WEIGHTS)
    )
    w1: float = 1.0
    w2: float = 0.5
    threshold: float = 0.5
    normalize: bool = True


@dataclass(frozen=True)
class FeatureScore:
    """One contributing term of a score."""

    feature: Feature
    token_prob: float
    weight: float
    context_score: float
    present: bool
    term: float


@dataclass(frozen=True)
class ScoreBreakdown:
    approach: Approach
    total: float
    normalized: float
    n_terms: int
    per_feature: tuple[FeatureScore, ...]
    per_group: tuple[float, ...]
    verdict: BinaryLabel


def single_keyword_score(model: Model, fv: FeatureVector) -> float:
    """Sum of token probabilities of selected one-keyword features present."""
    return sum(
        token_prob(model, f)
        for f, _ in model.selected
        if len(f) == 1 and f in fv
    )


def weighted_score(model: Model, fv: FeatureVector, cfg: ClassifierConfig) -> float:
    """Arity-weighted sum over all selected features present."""
    return sum(
        token_prob(model, f) * cfg.arity_weights[len(f)]
        for f, _ in model.selected
        if f in fv
    )


def context_match(feature: Feature, fv: FeatureVector) -> float:
    """Fraction of the feature's keywords found anywhere in the message.

    Presence is judged against the message's one-keyword features, so the
    phrase need not occur contiguously to earn credit.
    """
    if not feature:
        return 0.0
    hits = sum(1 for stems in feature if (stems,) in fv)
    return hits / len(feature)


def context_weighted_score(
    model: Model, fv: FeatureVector, cfg: ClassifierConfig
) -> float:
    """Weighted score plus context credit for partially matched phrases.

    Every selected feature that is present, and every selected
    multi-keyword feature with at least one constituent keyword in the
    message, contributes
    w1 * p * arity_weight * [present] + w2 * match * p * context_weight.
    """
    total = 0.0
    for f, _ in model.selected:
        arity = len(f)
        present = f in fv
        match = context_match(f, fv)
        if not present and (arity == 1 or match == 0.0):
            continue
        p = token_prob(model, f)
        keyword_term = cfg.w1 * p * cfg.arity_weights[arity] if present else 0.0
        context_term = cfg.w2 * match * p * cfg.context_weights[arity]
        total += keyword_term + context_term
    return total


def _score_terms(
    model: Model, fv: FeatureVector, cfg: ClassifierConfig
) -> list[FeatureScore]:
    terms: list[FeatureScore] = []
    for f, _ in model.selected:
        arity = len(f)
        present = f in fv
        if cfg.approach is Approach.SINGLE:
            if arity != 1 or not present:
                continue
            p = token_prob(model, f)
            terms.append(FeatureScore(f, p, 1.0, 0.0, True, p))
        elif cfg.approach is Approach.WEIGHTED:
            if not present:
                continue
            p = token_prob(model, f)
            w = cfg.arity_weights[arity]
            terms.append(FeatureScore(f, p, w, 0.0, True, p * w))
        else:
            match = context_match(f, fv)
            if not present and (arity == 1 or match == 0.0):
                continue
            p = token_prob(model, f)
            w = cfg.arity_weights[arity]
            term = (cfg.w1 * p * w if present else 0.0) + (
                cfg.w2 * match * p * cfg.context_weights[arity]
            )
            terms.append(FeatureScore(f, p, w, match, present, term))
    return terms


def score_vector(
    model: Model, fv: FeatureVector, cfg: ClassifierConfig
) -> tuple[float, float, int, list[FeatureScore]]:
    """(raw total, normalized total, contributing terms, per-feature terms)."""
    terms = _score_terms(model, fv, cfg)
    contributing = [t for t in terms if t.term != 0.0]
    raw = sum(t.term for t in terms)
    normalized = raw / len(contributing) if contributing else 0.0
    return raw, normalized, len(contributing), terms


def decide(raw: float, normalized: float, cfg: ClassifierConfig) -> BinaryLabel:
    """Threat when the decision score exceeds the threshold; ties are normal."""
    score = normalized if cfg.normalize else raw
    return BinaryLabel.THREAT if score > cfg.threshold else BinaryLabel.NORMAL


def classify(
    model: Model,
    email: RawEmail,
    cfg: ClassifierConfig,
    stops: StopList,
    max_arity: int = 3,
    min_length: int = 4,
    groups: FeatureGroups | None = None,
) -> ScoreBreakdown:
    """Score one message and produce the full per-feature breakdown.

    Feature groups for the per-group sub-totals are clustered on demand
    when not supplied.
    """
    fv = extract_features(email, stops, max_arity, min_length)
    raw, normalized, n_terms, terms = score_vector(model, fv, cfg)
    if groups is None:
        groups = cluster_features(model.selected, model.fractions())
    per_group = [0.0] * len(groups.groups)
    for t in terms:
        idx = groups.group_of(t.feature)
        if idx is not None:
            per_group[idx] += t.term
    return ScoreBreakdown(
        approach=cfg.approach,
        total=raw,
        normalized=normalized,
        n_terms=n_terms,
        per_feature=tuple(terms),
        per_group=tuple(per_group),
        verdict=decide(raw, normalized, cfg),
    )
