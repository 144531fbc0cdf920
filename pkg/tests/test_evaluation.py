import math
import random

import pytest

from threatfilter.corpus import BinaryLabel, split_corpus
from threatfilter.evaluation import (
    ConfusionCounts,
    confusion,
    default_thresholds,
    metrics,
    roc_curve,
    sweep,
)
from threatfilter.model import PipelineParams
from threatfilter.scoring import Approach
from threatfilter.synth import CorpusSpec, generate_messages

T, N = BinaryLabel.THREAT, BinaryLabel.NORMAL


def random_counts(rng, low=0, high=60):
    while True:
        c = ConfusionCounts(*(rng.randint(low, high) for _ in range(4)))
        if c.total >= 1:
            return c


class TestConfusion:
    def test_perfect(self):
        c = confusion([T, N, T], [T, N, T])
        assert (c.n_nt, c.n_tn) == (0, 0)
        assert (c.n_tt, c.n_nn) == (2, 1)

    def test_all_normal_predictions_on_threat_gold(self):
        c = confusion([N, N, N], [T, T, T])
        assert c.n_tn == 3
        assert c.n_nn == c.n_nt == c.n_tt == 0

    def test_constructed_fixture(self):
        gold = [N] * 100 + [T] * 50
        pred = [N] * 90 + [T] * 10 + [N] * 5 + [T] * 45
        c = confusion(pred, gold)
        assert c == ConfusionCounts(n_nn=90, n_nt=10, n_tn=5, n_tt=45)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            confusion([T], [T, N])


class TestMetrics:
    fixture = ConfusionCounts(n_nn=90, n_nt=10, n_tn=5, n_tt=45)

    def test_fixture_values(self):
        r = metrics(self.fixture, 1.0)
        assert abs(r.accuracy - 0.9) < 1e-9
        assert abs(r.precision - 45 / 55) < 1e-9
        assert abs(r.recall - 0.9) < 1e-9
        assert abs(r.fp_rate - 0.1) < 1e-9
        assert abs(r.fn_rate - 0.1) < 1e-9
        assert abs(r.f1 - 6 / 7) < 1e-9
        assert abs(r.tcr - 50 / 15) < 1e-9

    def test_lambda_one_collapses_weighted(self):
        r = metrics(self.fixture, 1.0)
        assert abs(r.weighted_accuracy - r.accuracy) < 1e-12
        assert abs(r.weighted_error - r.error_rate) < 1e-12

    def test_perfect_filter_gives_infinite_tcr(self):
        r = metrics(ConfusionCounts(n_nn=10, n_nt=0, n_tn=0, n_tt=5), 1.0)
        assert r.error_rate == 0.0
        assert r.tcr == math.inf

    def test_identities_randomized(self):
        rng = random.Random(61)
        for _ in range(1000):
            c = random_counts(rng)
            for lam in (1.0, 9.0, 999.0):
                r = metrics(c, lam)
                assert abs(r.accuracy + r.error_rate - 1.0) < 1e-12
                if r.weighted_accuracy is not None:
                    assert abs(r.weighted_accuracy + r.weighted_error - 1.0) < 1e-12
                if r.recall is not None:
                    assert abs(r.recall + r.fn_rate - 1.0) < 1e-12

    def test_scale_invariance(self):
        rng = random.Random(62)
        for _ in range(300):
            c = random_counts(rng, low=0, high=30)
            m = rng.randint(2, 9)
            scaled = ConfusionCounts(
                n_nn=c.n_nn * m, n_nt=c.n_nt * m, n_tn=c.n_tn * m, n_tt=c.n_tt * m
            )
            for lam in (1.0, 9.0):
                a, b = metrics(c, lam), metrics(scaled, lam)
                for field in ("accuracy", "weighted_accuracy", "error_rate",
                              "weighted_error", "fp_rate", "fn_rate", "recall",
                              "precision", "f1", "tcr"):
                    va, vb = getattr(a, field), getattr(b, field)
                    if va is None or va == math.inf:
                        assert vb == va
                    else:
                        assert abs(va - vb) < 1e-12

    def test_undefined_denominators_are_none_not_zero(self):
        r = metrics(ConfusionCounts(n_nn=5, n_nt=0, n_tn=0, n_tt=0), 1.0)
        assert r.recall is None
        assert r.fn_rate is None
        assert r.precision is None
        assert r.f1 is None
        assert r.tcr is None  # 0/0

    def test_tcr_above_one_iff_cost_inequality(self):
        rng = random.Random(63)
        for _ in range(300):
            c = random_counts(rng)
            lam = rng.choice((1.0, 9.0, 999.0))
            r = metrics(c, lam)
            if r.tcr is None or r.tcr == math.inf:
                continue
            assert (r.tcr > 1) == (lam * c.n_nt + c.n_tn < c.n_tn + c.n_tt)

    def test_negative_lambda_rejected(self):
        with pytest.raises(ValueError):
            metrics(self.fixture, -1.0)


class TestRocCurve:
    def test_extreme_thresholds(self):
        scores = [(0.9, T), (0.2, N)]
        points = roc_curve(scores, [2.0, -1.0])
        assert (points[0].fp_rate, points[0].tp_rate) == (0.0, 0.0)
        assert (points[1].fp_rate, points[1].tp_rate) == (1.0, 1.0)

    def test_sorted_descending_and_monotone(self):
        rng = random.Random(64)
        for _ in range(100):
            scores = [(rng.random(), rng.choice((T, N))) for _ in range(20)]
            if not any(g is T for _, g in scores) or not any(g is N for _, g in scores):
                continue
            thresholds = [rng.uniform(-0.2, 1.2) for _ in range(8)]
            points = roc_curve(scores, thresholds)
            assert [p.threshold for p in points] == sorted(thresholds, reverse=True)
            for a, b in zip(points, points[1:]):
                assert b.fp_rate >= a.fp_rate - 1e-12
                assert b.tp_rate >= a.tp_rate - 1e-12

    def test_matches_exhaustive_recount(self):
        rng = random.Random(65)
        for _ in range(50):
            scores = [(round(rng.random(), 3), rng.choice((T, N))) for _ in range(20)]
            n_pos = sum(1 for _, g in scores if g is T)
            n_neg = 20 - n_pos
            if not n_pos or not n_neg:
                continue
            thresholds = default_thresholds([s for s, _ in scores])
            points = roc_curve(scores, thresholds)
            for p in points:
                tp = fp = 0
                for s, g in scores:
                    if s > p.threshold:
                        if g is T:
                            tp += 1
                        else:
                            fp += 1
                assert p.tp_rate == tp / n_pos
                assert p.fp_rate == fp / n_neg

    def test_single_class_rejected(self):
        with pytest.raises(ValueError):
            roc_curve([(0.5, T), (0.6, T)], [0.5])


def small_corpus(seed=0):
    spec = CorpusSpec(n_threat=40, n_spam=60, n_legitimate=60, seed=seed,
                      body_sentences=(2, 4))
    return generate_messages(spec)


class TestSweep:
    def test_row_count_contract(self):
        rows = sweep(small_corpus(), "feature_count", [10, 60],
                     [Approach.SINGLE, Approach.CONTEXT_WEIGHTED], seed=1,
                     params=PipelineParams(n_features=60))
        assert len(rows) == 4
        assert [(r.value, r.approach) for r in rows] == [
            (10, Approach.SINGLE), (10, Approach.CONTEXT_WEIGHTED),
            (60, Approach.SINGLE), (60, Approach.CONTEXT_WEIGHTED),
        ]

    def test_deterministic(self):
        a = sweep(small_corpus(), "data_size", [80, 120], [Approach.WEIGHTED], seed=5)
        b = sweep(small_corpus(), "data_size", [80, 120], [Approach.WEIGHTED], seed=5)
        assert a == b

    def test_value_exceeding_corpus_is_an_error(self):
        with pytest.raises(ValueError, match="exceeds corpus size"):
            sweep(small_corpus(), "data_size", [100000], [Approach.SINGLE], seed=0)

    def test_feature_count_exceeding_candidates_is_an_error(self):
        corpus = small_corpus()
        with pytest.raises(ValueError, match="exceeds the"):
            sweep(corpus, "feature_count", [10**6], [Approach.SINGLE], seed=0)

    def test_unknown_axis_rejected(self):
        with pytest.raises(ValueError, match="unknown sweep axis"):
            sweep(small_corpus(), "bogus", [1], [Approach.SINGLE], seed=0)

    def test_data_axis_subsamples_stratified(self):
        corpus = small_corpus()
        rows = sweep(corpus, "data_size", [80], [Approach.CONTEXT_WEIGHTED], seed=2)
        assert rows[0].value == 80
        assert rows[0].metrics.accuracy is not None
