"""Feature-probability library: training, token probabilities, persistence.

The model keeps per-feature document-frequency counts for the threat and
normal classes, the class sizes, and the information-gain ranking of the
selected features.  Token probabilities follow the Graham convention:
p(f) = b / (b + g) with b and g the per-class prevalence rates, clamped
away from 0 and 1.
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

from .corpus import BinaryLabel, LabeledEmail
from .features import FeatureStats, RankedFeatures, select_top_k
from .textproc import Feature, FeatureVector, StopList, extract_features

P_MIN = 0.01
P_MAX = 0.99
P_UNSEEN = 0.4

MODEL_FORMAT = "threatfilter-model"
MODEL_VERSION = 1


class ModelFormatError(Exception):
    """Raised when a model file cannot be parsed."""


@dataclass(frozen=True)
class PipelineParams:
    """Everything that shapes the feature space; hashed into the model."""

    max_arity: int = 3
    min_token_length: int = 4
    n_features: int = 60
    stops: StopList = field(default_factory=StopList.default)

    def fingerprint(self) -> str:
        payload = "\x1f".join(
            [
                str(self.max_arity),
                str(self.min_token_length),
                str(self.n_features),
                ",".join(sorted(self.stops.words)),
            ]
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class Model:
    n_threat: int
    n_normal: int
    library: dict[Feature, tuple[int, int]]
    selected: RankedFeatures
    config_fingerprint: str

    def selected_set(self) -> set[Feature]:
        return {f for f, _ in self.selected}

    def fractions(self) -> dict[Feature, tuple[float, float]]:
        """Per-feature (threat prevalence, normal prevalence) rates."""
        return {
            f: (hb / self.n_threat, hg / self.n_normal)
            for f, (hb, hg) in self.library.items()
        }


def train(corpus: list[LabeledEmail], params: PipelineParams | None = None) -> Model:
    """Count per-class document frequencies and select the top features.

    A feature's count is the number of distinct emails of the class that
    contain it, regardless of how often it repeats inside one message.
    """
    params = params or PipelineParams()
    n_threat = sum(1 for m in corpus if m.label.binary is BinaryLabel.THREAT)
    n_normal = len(corpus) - n_threat
    if n_threat < 1 or n_normal < 1:
        raise ValueError("training requires both classes")

    library: dict[Feature, list[int]] = {}
    for message in corpus:
        fv = extract_features(
            message.email, params.stops, params.max_arity, params.min_token_length
        )
        side = 0 if message.label.binary is BinaryLabel.THREAT else 1
        for feature in fv:
            counts = library.get(feature)
            if counts is None:
                counts = [0, 0]
                library[feature] = counts
            counts[side] += 1

    stats = [
        FeatureStats(feature=f, threat_docs=hb, normal_docs=hg)
        for f, (hb, hg) in library.items()
    ]
    selected = select_top_k(stats, params.n_features, n_threat, n_normal)
    # fingerprint the selection size actually in effect, so a scorer that
    # reconstructs it from the model compares like with like
    effective = replace(params, n_features=len(selected))
    return Model(
        n_threat=n_threat,
        n_normal=n_normal,
        library={f: (hb, hg) for f, (hb, hg) in library.items()},
        selected=selected,
        config_fingerprint=effective.fingerprint(),
    )


def prior(model: Model, label: BinaryLabel) -> float:
    n = model.n_threat if label is BinaryLabel.THREAT else model.n_normal
    return n / (model.n_threat + model.n_normal)


def token_prob(
    model: Model,
    feature: Feature,
    p_min: float = P_MIN,
    p_max: float = P_MAX,
    p_unseen: float = P_UNSEEN,
) -> float:
    """Graham token probability b/(b+g), clamped to [p_min, p_max]."""
    counts = model.library.get(feature)
    if counts is None:
        return p_unseen
    hb, hg = counts
    b = hb / model.n_threat
    g = hg / model.n_normal
    raw = b / (b + g)
    return min(p_max, max(p_min, raw))


def update_online(model: Model, fv: FeatureVector, assigned: BinaryLabel) -> Model:
    """Fold one classified message into the library; returns a new model.

    Class and per-feature document counts grow exactly as if the message
    had been part of the training corpus; the feature ranking is not
    recomputed.
    """
    side = 0 if assigned is BinaryLabel.THREAT else 1
    library = dict(model.library)
    for feature in fv:
        hb, hg = library.get(feature, (0, 0))
        if side == 0:
            library[feature] = (hb + 1, hg)
        else:
            library[feature] = (hb, hg + 1)
    return replace(
        model,
        n_threat=model.n_threat + (1 - side),
        n_normal=model.n_normal + side,
        library=library,
    )


def save_model(model: Model, path: str | Path) -> None:
    """Versioned tab-separated text format, one line per library feature.

    Selected features carry two extra columns (rank, information gain) so
    the ranking order survives the round trip.
    """
    ranks = {f: (i, ig) for i, (f, ig) in enumerate(model.selected)}
    lines = [
        "\t".join(
            [
                MODEL_FORMAT,
                str(MODEL_VERSION),
                str(model.n_threat),
                str(model.n_normal),
                model.config_fingerprint,
            ]
        )
    ]
    for feature in sorted(model.library):
        hb, hg = model.library[feature]
        row = [str(len(feature)), *feature, str(hb), str(hg)]
        if feature in ranks:
            rank, ig = ranks[feature]
            row += [str(rank), repr(ig)]
        lines.append("\t".join(row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path, expected_fingerprint: str | None = None) -> Model:
    """Inverse of save_model; warns when the fingerprint does not match."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].startswith(MODEL_FORMAT + "\t"):
        raise ModelFormatError(f"unrecognized model file: {path}")
    header = lines[0].split("\t")
    if len(header) != 5:
        raise ModelFormatError(f"malformed model header: {path}")
    try:
        version = int(header[1])
        n_threat, n_normal = int(header[2]), int(header[3])
    except ValueError as exc:
        raise ModelFormatError(f"malformed model header: {path}") from exc
    if version != MODEL_VERSION:
        raise ModelFormatError(
            f"unsupported model version {version} (expected {MODEL_VERSION}): {path}"
        )
    fingerprint = header[4]

    library: dict[Feature, tuple[int, int]] = {}
    ranked: list[tuple[int, Feature, float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split("\t")
        try:
            arity = int(fields[0])
            feature = tuple(fields[1 : 1 + arity])
            if len(feature) != arity:
                raise ValueError("stem count does not match arity")
            hb, hg = int(fields[1 + arity]), int(fields[2 + arity])
            rest = fields[3 + arity :]
        except (ValueError, IndexError) as exc:
            raise ModelFormatError(f"malformed model line {lineno}: {path}") from exc
        library[feature] = (hb, hg)
        if rest:
            if len(rest) != 2:
                raise ModelFormatError(f"malformed model line {lineno}: {path}")
            ranked.append((int(rest[0]), feature, float(rest[1])))

    ranked.sort(key=lambda item: item[0])
    model = Model(
        n_threat=n_threat,
        n_normal=n_normal,
        library=library,
        selected=[(f, ig) for _, f, ig in ranked],
        config_fingerprint=fingerprint,
    )
    if expected_fingerprint is not None and expected_fingerprint != fingerprint:
        warnings.warn(
            f"model {path} was trained with different pipeline parameters "
            f"(fingerprint {fingerprint}, current {expected_fingerprint})",
            stacklevel=2,
        )
    return model
