"""Feature ranking by information gain and k-means grouping.

Candidate features are scored by the reduction in binary class entropy
from observing document-level presence/absence, the top k kept, and the
kept features partitioned into (by default) four groups of similar
features for reporting.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .textproc import Feature

RankedFeatures = list[tuple[Feature, float]]


@dataclass(frozen=True)
class FeatureStats:
    """Document-frequency counts of one feature in the training classes."""

    feature: Feature
    threat_docs: int
    normal_docs: int


def _entropy2(a: int, b: int) -> float:
    """Base-2 entropy of a two-outcome count pair; 0 log 0 is 0."""
    total = a + b
    if total == 0:
        return 0.0
    h = 0.0
    for count in (a, b):
        if count:
            p = count / total
            h -= p * math.log2(p)
    return h


def information_gain(stats: FeatureStats, n_threat: int, n_normal: int) -> float:
    """Class-entropy reduction from observing the feature's presence.

    H(C) - [P(f) H(C|f) + P(not f) H(C|not f)] over document presence;
    in [0, 1] for the binary class.
    """
    if n_threat < 1 or n_normal < 1:
        raise ValueError("both classes need at least one training document")
    if not 0 <= stats.threat_docs <= n_threat or not 0 <= stats.normal_docs <= n_normal:
        raise ValueError(f"feature counts out of bounds for {stats.feature}")

    total = n_threat + n_normal
    present = stats.threat_docs + stats.normal_docs
    absent = total - present
    h_class = _entropy2(n_threat, n_normal)
    h_present = _entropy2(stats.threat_docs, stats.normal_docs)
    h_absent = _entropy2(n_threat - stats.threat_docs, n_normal - stats.normal_docs)
    gain = h_class - (present / total) * h_present - (absent / total) * h_absent
    # provably nonnegative; guard against float noise near 0
    return max(0.0, gain)


def select_top_k(
    stats: Sequence[FeatureStats], k: int, n_threat: int, n_normal: int
) -> RankedFeatures:
    """Rank all candidates by information gain and keep the best k.

    Ties break lexicographically by stems, then by arity ascending, so the
    ranking is a total order and any prefix of it is itself a valid
    selection.
    """
    if not stats:
        raise ValueError("no candidate features")
    if k < 1:
        raise ValueError(f"feature count must be >= 1, got {k}")
    scored = [(s.feature, information_gain(s, n_threat, n_normal)) for s in stats]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:k]


@dataclass(frozen=True)
class FeatureGroups:
    groups: tuple[frozenset[Feature], ...]
    centroids: tuple[tuple[float, ...], ...]
    wcss_history: tuple[float, ...]

    @property
    def wcss(self) -> float:
        return self.wcss_history[-1]

    def group_of(self, feature: Feature) -> int | None:
        for idx, members in enumerate(self.groups):
            if feature in members:
                return idx
        return None


def _wcss(points: np.ndarray, assign: np.ndarray, k: int) -> float:
    total = 0.0
    for j in range(k):
        members = points[assign == j]
        if len(members):
            centroid = members.mean(axis=0)
            total += float(((members - centroid) ** 2).sum())
    return total


def _kmeanspp_init(points: np.ndarray, k: int, rng: random.Random) -> np.ndarray:
    n = len(points)
    centroids = [points[rng.randrange(n)]]
    while len(centroids) < k:
        d2 = np.min(
            [((points - c) ** 2).sum(axis=1) for c in centroids], axis=0
        )
        total = float(d2.sum())
        if total == 0.0:
            centroids.append(points[rng.randrange(n)])
            continue
        r = rng.random() * total
        idx = int(np.searchsorted(np.cumsum(d2), r, side="right"))
        centroids.append(points[min(idx, n - 1)])
    return np.array(centroids, dtype=float)


def kmeans(
    points: Sequence[Sequence[float]],
    k: int,
    seed: int = 0,
    max_iter: int = 100,
) -> tuple[list[int], list[tuple[float, ...]], list[float]]:
    """Deterministic Lloyd k-means with k-means++ seeding.

    Returns (assignments, centroids, per-iteration WCSS history).  After
    Lloyd converges, single-point moves that still lower the partition
    WCSS are applied until none remains, so the final assignment is a
    local optimum under point reassignment as well.  Empty clusters are
    re-seeded at the point farthest from its own centroid.
    """
    if k < 1:
        raise ValueError(f"cluster count must be >= 1, got {k}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("need at least one point to cluster")
    n = len(pts)
    rng = random.Random(seed)
    centroids = _kmeanspp_init(pts, k, rng)

    assign = np.zeros(n, dtype=int)
    prev: np.ndarray | None = None
    history: list[float] = []
    for _ in range(max_iter):
        dists = ((pts[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        assign = dists.argmin(axis=1)
        point_err = ((pts - centroids[assign]) ** 2).sum(axis=1)
        claimed: set[int] = set()
        for j in range(k):
            members = pts[assign == j]
            if len(members):
                centroids[j] = members.mean(axis=0)
            else:
                # re-seed an empty cluster at the worst-fit unclaimed point;
                # with fewer points than empty clusters, reuse the worst
                order = np.argsort(-point_err, kind="stable")
                far = next(
                    (int(i) for i in order if int(i) not in claimed),
                    int(order[0]),
                )
                claimed.add(far)
                centroids[j] = pts[far]
        history.append(_wcss(pts, assign, k))
        if prev is not None and np.array_equal(assign, prev):
            break
        prev = assign

    # single-point refinement: repeat while any move strictly lowers WCSS
    improved = True
    while improved:
        improved = False
        current = _wcss(pts, assign, k)
        for i in range(n):
            original = assign[i]
            for j in range(k):
                if j == original:
                    continue
                assign[i] = j
                candidate = _wcss(pts, assign, k)
                if candidate < current - 1e-12:
                    current = candidate
                    history.append(candidate)
                    improved = True
                    original = j
                else:
                    assign[i] = original
    for j in range(k):
        members = pts[assign == j]
        if len(members):
            centroids[j] = members.mean(axis=0)

    return (
        [int(a) for a in assign],
        [tuple(float(x) for x in c) for c in centroids],
        history,
    )


def cluster_features(
    ranked: RankedFeatures,
    fractions: Mapping[Feature, tuple[float, float]],
    k: int = 4,
    seed: int = 0,
    max_iter: int = 100,
) -> FeatureGroups:
    """Group selected features by similarity of class prevalence and arity.

    Each feature embeds as (threat prevalence, normal prevalence, arity/3);
    fractions maps a feature to its per-class document-frequency rates.
    """
    if not ranked:
        raise ValueError("no features to cluster")
    feats = [f for f, _ in ranked]
    points = []
    for f in feats:
        b, g = fractions[f]
        points.append((b, g, len(f) / 3.0))
    assign, centroids, history = kmeans(points, k, seed=seed, max_iter=max_iter)
    groups = [set() for _ in range(k)]
    for f, j in zip(feats, assign):
        groups[j].add(f)
    return FeatureGroups(
        groups=tuple(frozenset(g) for g in groups),
        centroids=tuple(centroids),
        wcss_history=tuple(history),
    )
