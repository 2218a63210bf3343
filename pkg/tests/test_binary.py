"""Binary metrics against hand-derived and oracle-frozen fixture values.

The three fixtures are described in conftest.py.  Reference values were
computed once with the brute-force transcriptions in oracle.py and
frozen here; the hand-derivable ones (point-wise, adjusted, segment,
distance) were additionally checked by hand.
"""

import numpy as np
import pytest

from tsadmetrics.binary import (
    affiliation_f,
    composite_f,
    dtpa_f,
    etaf,
    ls_f,
    nab_score,
    pa_f,
    pak_f,
    pw_f,
    range_f,
    seg_f,
    taf,
    temporal_distance,
    ttol_f,
)

APPROX = 1e-9

# (metric fn, kwargs, s1, s2, s3 pred A, s3 pred B)
FROZEN = [
    (pw_f, {}, 0.166666666667, 0.235294117647, 0.5, 0.75),
    (pa_f, {}, 0.952380952381, 0.928571428571, 0.5, 0.888888888889),
    (dtpa_f, {}, 0.0, 0.0, 0.5, 0.888888888889),
    (pak_f, {}, 0.166666666667, 0.235294117647, 0.5, 0.888888888889),
    (ls_f, {}, 0.444444444444, 0.666666666667, 0.5, 1.0),
    (seg_f, {}, 0.666666666667, 0.666666666667, 0.5, 1.0),
    (composite_f, {}, 0.666666666667, 0.666666666667, 0.5, 0.857142857143),
    (ttol_f, {}, 0.5, 0.48, 0.5, 1.0),
    (range_f, {}, 0.52380952381, 0.535714285714, 0.5, 0.807692307692),
    (taf, {}, 0.0, 0.0, 0.5, 0.875),
    (etaf, {}, 0.666666666667, 0.666666666667, 0.5, 0.857142857143),
    (affiliation_f, {}, 0.719748402556, 0.712953216374,
     0.905160390516, 0.897222222222),
    (nab_score, {}, 68.356891103965, 83.164409388591,
     44.048532507569, 97.024536437724),
    (temporal_distance, {}, 40.0, 47.0, 14.0, 2.0),
]


@pytest.mark.parametrize(
    "fn,kwargs,want_s1,want_s2,want_a,want_b", FROZEN,
    ids=[row[0].__name__ for row in FROZEN])
def test_frozen_fixture_values(fn, kwargs, want_s1, want_s2, want_a, want_b,
                               s1, s2, s3):
    assert fn(*s1, **kwargs).score == pytest.approx(want_s1, abs=1e-10)
    assert fn(*s2, **kwargs).score == pytest.approx(want_s2, abs=1e-10)
    labels, pred_a, pred_b = s3
    assert fn(labels, pred_a, **kwargs).score == pytest.approx(want_a, abs=1e-10)
    assert fn(labels, pred_b, **kwargs).score == pytest.approx(want_b, abs=1e-10)


class TestComponents:
    def test_s2_pointwise_parts(self, s2):
        r = pw_f(*s2)
        assert r.precision == pytest.approx(0.5)
        assert r.recall == pytest.approx(2 / 13)

    def test_s2_adjusted_parts(self, s2):
        r = pa_f(*s2)
        assert r.precision == pytest.approx(13 / 15)
        assert r.recall == pytest.approx(1.0)

    def test_s2_segment_parts(self, s2):
        r = seg_f(*s2)
        assert r.precision == pytest.approx(0.5)
        assert r.recall == pytest.approx(1.0)

    def test_s2_downsampled_parts(self, s2):
        r = ls_f(*s2, n=2)
        assert r.precision == pytest.approx(4 / 5)
        assert r.recall == pytest.approx(4 / 7)

    def test_s3_affiliation_parts(self, s3):
        labels, pred_a, pred_b = s3
        ra = affiliation_f(labels, pred_a)
        assert ra.precision == pytest.approx(59 / 66, abs=1e-9)
        rb = affiliation_f(labels, pred_b)
        assert rb.precision == pytest.approx(0.85, abs=1e-9)
        assert rb.recall == pytest.approx(0.95, abs=1e-9)


class TestRelations:
    def test_delayed_adjustment_recovers_plain(self, s2):
        # a delay budget covering the whole event is plain adjustment
        assert dtpa_f(*s2, k=7).score == pytest.approx(pa_f(*s2).score)

    def test_zero_tolerance_is_pointwise(self, s2):
        assert ttol_f(*s2, tau=0).score == pytest.approx(pw_f(*s2).score)

    def test_existence_only_recall_is_segment_recall(self, s2):
        assert range_f(*s2, alpha=1.0).recall == pytest.approx(
            seg_f(*s2).recall)

    def test_perfect_prediction_endpoints(self):
        labels = np.zeros(20, dtype=bool)
        labels[5:9] = True
        for fn in (pw_f, pa_f, dtpa_f, pak_f, ls_f, seg_f, composite_f,
                   ttol_f, range_f, taf, etaf, affiliation_f):
            assert fn(labels, labels).score == pytest.approx(1.0), fn.__name__
        assert nab_score(labels, labels).score == pytest.approx(100.0)
        assert temporal_distance(labels, labels).score == 0.0

    def test_empty_prediction_endpoints(self):
        labels = np.zeros(20, dtype=bool)
        labels[5:9] = True
        empty = np.zeros(20, dtype=bool)
        for fn in (pw_f, pa_f, dtpa_f, pak_f, ls_f, seg_f, composite_f,
                   ttol_f, range_f, taf, etaf):
            assert fn(labels, empty).score == 0.0, fn.__name__
        assert nab_score(labels, empty).score == pytest.approx(0.0)
        # four unmatched label points, each at the fallback distance
        assert temporal_distance(labels, empty).score == 4 * 20.0


class TestErrors:
    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            pw_f([0, 1], [0, 1, 0])

    def test_affiliation_needs_label_events(self):
        with pytest.raises(ValueError, match="affiliation"):
            affiliation_f([0, 0, 0], [0, 1, 0])

    def test_nab_rejects_point_anomalies(self):
        with pytest.raises(ValueError, match="point anomalies"):
            nab_score([0, 1, 0, 0], [0, 1, 0, 0])

    def test_nab_needs_events(self):
        with pytest.raises(ValueError, match="at least one"):
            nab_score([0, 0, 0], [0, 1, 0])

    def test_parameter_validation(self, s2):
        with pytest.raises(ValueError):
            dtpa_f(*s2, k=-1)
        with pytest.raises(ValueError):
            pak_f(*s2, k_pct=0.0)
        with pytest.raises(ValueError):
            ttol_f(*s2, tau=-1)
        with pytest.raises(ValueError):
            range_f(*s2, alpha=1.5)
        with pytest.raises(ValueError):
            range_f(*s2, bias="sideways")
        with pytest.raises(ValueError):
            taf(*s2, theta=0.0)
        with pytest.raises(ValueError):
            etaf(*s2, theta_p=2.0)
        with pytest.raises(ValueError):
            temporal_distance(*s2, eta=0.0)


class TestDirections:
    def test_temporal_distance_is_lower_better(self, s2):
        assert temporal_distance(*s2).direction == "lower-better"

    def test_fscores_are_higher_better(self, s2):
        assert pw_f(*s2).direction == "higher-better"


class TestBiases:
    def test_front_bias_rewards_early_coverage(self):
        labels = np.zeros(30, dtype=bool)
        labels[10:20] = True
        early = np.zeros(30, dtype=bool)
        early[10:13] = True
        late = np.zeros(30, dtype=bool)
        late[17:20] = True
        assert range_f(labels, early, bias="front").score > \
            range_f(labels, late, bias="front").score
        assert range_f(labels, early, bias="back").score < \
            range_f(labels, late, bias="back").score
        assert range_f(labels, early, bias="flat").score == pytest.approx(
            range_f(labels, late, bias="flat").score)
