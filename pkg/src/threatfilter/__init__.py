"""Naive Bayesian threat-email classifier.

Trains a feature-probability library from a labeled corpus of threat,
spam, and legitimate mail, and scores new messages with three approaches:
single keyword, weighted multi-keyword, and weighted multi-keyword with
keyword-context matching.
"""

from .corpus import (
    BinaryLabel,
    CorpusError,
    CorpusSplit,
    Label,
    LabeledEmail,
    RawEmail,
    load_corpus,
    parse_email,
    render_email,
    split_corpus,
)
from .evaluation import (
    ConfusionCounts,
    MetricsReport,
    RocPoint,
    SweepRow,
    confusion,
    metrics,
    roc_curve,
    sweep,
)
from .features import (
    FeatureGroups,
    FeatureStats,
    cluster_features,
    information_gain,
    kmeans,
    select_top_k,
)
from .model import (
    Model,
    ModelFormatError,
    PipelineParams,
    load_model,
    prior,
    save_model,
    token_prob,
    train,
    update_online,
)
from .porter import stem
from .scoring import (
    Approach,
    ClassifierConfig,
    ScoreBreakdown,
    classify,
    context_match,
    context_weighted_score,
    single_keyword_score,
    weighted_score,
)
from .textproc import StopList, extract_features, remove_stopwords, tokenize

__version__ = "0.1.0"

__all__ = [
    "Approach",
    "BinaryLabel",
    "ClassifierConfig",
    "ConfusionCounts",
    "CorpusError",
    "CorpusSplit",
    "FeatureGroups",
    "FeatureStats",
    "Label",
    "LabeledEmail",
    "MetricsReport",
    "Model",
    "ModelFormatError",
    "PipelineParams",
    "RawEmail",
    "RocPoint",
    "ScoreBreakdown",
    "StopList",
    "SweepRow",
    "classify",
    "cluster_features",
    "confusion",
    "context_match",
    "context_weighted_score",
    "extract_features",
    "information_gain",
    "kmeans",
    "load_corpus",
    "load_model",
    "metrics",
    "parse_email",
    "prior",
    "remove_stopwords",
    "render_email",
    "roc_curve",
    "save_model",
    "select_top_k",
    "single_keyword_score",
    "split_corpus",
    "stem",
    "sweep",
    "token_prob",
    "tokenize",
    "train",
    "update_online",
    "weighted_score",
]
