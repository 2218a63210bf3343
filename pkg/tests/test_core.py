import numpy as np
import pytest

from tsadmetrics.core import (
    adjust_prediction,
    as_binary,
    as_score,
    downsample_or,
    events_to_series,
    extract_events,
    fbeta,
    point_confusion,
    prf,
    threshold_sweep,
)


class TestValidation:
    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            as_binary([])
        with pytest.raises(ValueError, match="empty"):
            as_score([])

    def test_non_binary_rejected(self):
        with pytest.raises(ValueError, match="0 and 1"):
            as_binary([0, 1, 2])
        with pytest.raises(ValueError, match="0 and 1"):
            as_binary([0.5])

    def test_float_zeros_and_ones_accepted(self):
        out = as_binary([0.0, 1.0, 1.0])
        assert out.dtype == bool and out.tolist() == [False, True, True]

    def test_non_finite_score_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            as_score([0.0, np.nan])
        with pytest.raises(ValueError, match="finite"):
            as_score([np.inf])

    def test_2d_rejected(self):
        with pytest.raises(ValueError, match="1-dimensional"):
            as_binary([[0, 1]])


class TestEvents:
    def test_runs(self):
        assert extract_events([0, 1, 1, 0, 1]) == [(1, 2), (4, 4)]
        assert extract_events([1, 1, 1]) == [(0, 2)]
        assert extract_events([0, 0]) == []

    def test_roundtrip(self):
        series = [0, 1, 1, 0, 0, 1, 0, 1, 1, 1]
        events = extract_events(series)
        assert events_to_series(events, 10).tolist() == [bool(v) for v in series]

    def test_out_of_range_event(self):
        with pytest.raises(ValueError, match="outside"):
            events_to_series([(3, 5)], 5)


class TestCounts:
    def test_confusion(self):
        c = point_confusion([1, 1, 0, 0], [1, 0, 1, 0])
        assert (c.tp, c.fn, c.fp, c.tn) == (1, 1, 1, 1)

    def test_tallies_cover_series(self):
        c = point_confusion([1, 0, 1, 1, 0], [0, 0, 1, 1, 1])
        assert c.tp + c.fp + c.fn + c.tn == 5


class TestFbeta:
    def test_balanced(self):
        assert fbeta(0.5, 1.0) == pytest.approx(2 / 3)

    def test_zero_denominator(self):
        assert fbeta(0.0, 0.0) == 0.0

    def test_beta_weighting(self):
        # large beta -> recall dominates
        assert fbeta(0.1, 0.9, beta=10.0) > fbeta(0.1, 0.9, beta=0.1)

    def test_invalid_beta(self):
        with pytest.raises(ValueError, match="beta"):
            fbeta(0.5, 0.5, beta=0.0)

    def test_prf_zero_conventions(self):
        c = point_confusion([0, 0], [0, 0])
        out = prf(c)
        assert (out.precision, out.recall, out.fscore) == (0.0, 0.0, 0.0)


class TestAdjustment:
    labels = [0, 1, 1, 1, 1, 0, 0, 1, 1, 0]

    def test_full(self):
        pred = [0, 0, 0, 1, 0, 0, 0, 0, 0, 1]
        out = adjust_prediction(self.labels, pred, mode="full")
        assert out.tolist() == [bool(v) for v in [0, 1, 1, 1, 1, 0, 0, 0, 0, 1]]

    def test_delay_grants_early_hit(self):
        pred = [0, 0, 1, 0, 0, 0, 0, 0, 0, 0]
        out = adjust_prediction(self.labels, pred, mode="delay", k=2)
        assert out[1:5].all()

    def test_delay_clears_late_hit(self):
        pred = [0, 0, 0, 1, 0, 0, 0, 0, 0, 0]
        out = adjust_prediction(self.labels, pred, mode="delay", k=2)
        assert not out.any()

    def test_portion_threshold(self):
        pred = [0, 1, 0, 0, 0, 0, 0, 0, 0, 0]
        # 1 of 4 = 25% >= 20% -> expanded
        assert adjust_prediction(self.labels, pred, mode="portion",
                                 k_pct=20.0)[1:5].all()
        # 25% < 30% -> untouched
        assert adjust_prediction(self.labels, pred, mode="portion",
                                 k_pct=30.0).tolist() == [bool(v) for v in pred]

    def test_latency(self):
        pred = [0, 0, 0, 1, 0, 0, 0, 0, 0, 0]
        out = adjust_prediction(self.labels, pred, mode="latency")
        assert out.tolist() == [bool(v) for v in [0, 0, 0, 1, 1, 0, 0, 0, 0, 0]]

    def test_points_outside_events_untouched(self):
        pred = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0]
        out = adjust_prediction(self.labels, pred, mode="full")
        assert out[0] and out[5]

    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="mode"):
            adjust_prediction(self.labels, self.labels, mode="bogus")


class TestDownsample:
    def test_block_or(self):
        out = downsample_or([0, 1, 0, 0, 1, 1], 2)
        assert out.tolist() == [True, False, True]

    def test_partial_final_block(self):
        out = downsample_or([0, 0, 0, 1], 3)
        assert out.tolist() == [False, True]

    def test_identity(self):
        assert downsample_or([0, 1], 1).tolist() == [False, True]


class TestThresholdSweep:
    def test_endpoints(self):
        sweep = threshold_sweep([0.3, 0.1, 0.5])
        assert not sweep[0][1].any()
        assert sweep[-1][1].all()

    def test_strict_comparison(self):
        sweep = threshold_sweep([0.5, 0.5, 0.2])
        preds = [p.tolist() for _, p in sweep]
        assert [False, False, False] in preds
        assert [True, True, False] in preds
        assert [True, True, True] in preds
        assert len(preds) == 3  # two distinct values + all-anomalous

    def test_entry_count(self):
        score = [0.1, 0.4, 0.4, 0.9, 0.2]
        assert len(threshold_sweep(score)) == len(set(score)) + 1

    def test_monotone_growth(self):
        sweep = threshold_sweep([3.0, 1.0, 2.0, 1.0])
        sizes = [int(p.sum()) for _, p in sweep]
        assert sizes == sorted(sizes)
