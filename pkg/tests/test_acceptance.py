"""Acceptance gate: one test per primary criterion, each ending with a
single PASS line on success.

Criteria cover the three fixture regressions, the property matrix, the
positional-response shapes, oracle equivalence, the metamorphic suite,
the ROC/PR disagreement construction and the trivial endpoints of the
gated event metrics.
"""

import time
import zlib

import numpy as np
import pytest

from tsadmetrics.binary import (
    affiliation_f,
    etaf,
    nab_score,
    pa_f,
    pw_f,
    seg_f,
    taf,
    temporal_distance,
)
from tsadmetrics.config import MetricConfig
from tsadmetrics.core import extract_events
from tsadmetrics.harness import (
    auc_disagreement_demo,
    positional_response,
    property_matrix,
    tn_append_family,
)
from tsadmetrics.nonbinary import (
    auc_pr,
    auc_roc,
    best_fbeta,
    patk,
    vus_pr,
    vus_roc,
)
from tsadmetrics.oracle import (
    exhaustive_threshold_max,
    naive_metric,
    random_binary_instance,
    random_score_instance,
)
from tsadmetrics.registry import METRICS, evaluate_metric

from conftest import make_labels, make_pred


def report(line):
    # Surfaced in the run log via the -rP summary (see pyproject).
    print(f"PASS: {line}")


def test_single_event_fixture_regression(s1):
    assert pw_f(*s1).score == pytest.approx(0.17, abs=0.005)
    assert pa_f(*s1).score == pytest.approx(0.95, abs=0.005)
    pw_f(*s1)  # warm caches before timing
    start = time.perf_counter()
    pw_f(*s1)
    pa_f(*s1)
    elapsed = time.perf_counter() - start
    assert elapsed < 1e-3, f"fixture evaluation took {elapsed * 1e3:.3f} ms"
    report("single-event fixture: pw_f=0.17, pa_f=0.95, < 1 ms")


def test_mid_series_fixture_regression(s2):
    pw = pw_f(*s2)
    assert pw.precision == pytest.approx(0.50, abs=0.005)
    assert pw.recall == pytest.approx(0.15, abs=0.005)
    assert pw.score == pytest.approx(0.24, abs=0.005)
    pa = pa_f(*s2)
    assert pa.precision == pytest.approx(0.87, abs=0.005)
    assert pa.recall == pytest.approx(1.00, abs=0.005)
    assert pa.score == pytest.approx(0.93, abs=0.005)
    seg = seg_f(*s2)
    assert seg.precision == pytest.approx(0.50, abs=0.005)
    assert seg.recall == pytest.approx(1.00, abs=0.005)
    assert seg.score == pytest.approx(0.67, abs=0.005)
    report("mid-series fixture: point/adjusted/segment P-R-F rows")


def test_paired_events_fixture_regression(s3):
    labels, pred_a, pred_b = s3
    assert affiliation_f(labels, pred_a).score == pytest.approx(0.91, abs=0.01)
    assert affiliation_f(labels, pred_b).score == pytest.approx(0.90, abs=0.01)
    assert temporal_distance(labels, pred_a).score == 14.0
    assert temporal_distance(labels, pred_b).score == 2.0
    report("paired-events fixture: affiliation 0.91/0.90, distance 14/2")


def test_property_matrix_reproduced():
    start = time.perf_counter()
    matrix = property_matrix()
    elapsed = time.perf_counter() - start
    failures = matrix.failures()
    assert failures == [], [
        (c.metric, c.prop, c.expected, c.derived) for c in failures]
    unstarred = sum(1 for c in matrix.cells.values() if not c.starred)
    assert len(matrix.cells) == 200
    assert elapsed < 30.0, f"matrix derivation took {elapsed:.1f} s"
    report(f"property matrix: all {unstarred} unstarred cells reproduced "
           f"in {elapsed:.2f} s")


def test_positional_response_shapes():
    _, seg_raw, _ = positional_response("seg_f")
    assert len(set(seg_raw.tolist())) == 2

    offsets, pa_raw, _ = positional_response("pa_f")
    plateau = pa_raw.max()
    for o, value in zip(offsets, pa_raw):
        inside = len(range(max(o, 40), min(o + 5, 60)))
        if inside * 2 >= 5:  # placement majority-inside the event
            assert abs(value - plateau) / plateau <= 0.05, (o, value)

    for name in ("af", "td"):
        _, raw, _ = positional_response(name)
        for i in range(len(raw) - 2):
            assert not (raw[i] == raw[i + 1] == raw[i + 2]), (name, i)

    offsets, dtpa_raw, _ = positional_response("dtpa_f", MetricConfig(k=2))
    hitting_first_two = {o for o in offsets
                         if set(range(o, o + 5)) & {40, 41}}
    argmax = {int(o) for o, v in zip(offsets, dtpa_raw)
              if v == dtpa_raw.max()}
    assert argmax <= hitting_first_two

    offsets, ttol_raw, _ = positional_response("ttol_f", MetricConfig(tau=10))
    nonzero = {int(o) for o, v in zip(offsets, ttol_raw) if v > 0}
    # within 10 steps of the event on either side: prediction end within
    # 10 before the start, or start within 10 past the end
    assert {o for o in offsets if 30 <= o + 4 < 40} <= nonzero
    assert {o for o in offsets if 60 <= o <= 69} <= nonzero
    report("positional response: segment 2-valued, adjusted plateau, "
           "affiliation/distance non-constant, delay argmax, tolerance reach")


def _corpus(name, count):
    spec = METRICS[name]
    rng = np.random.default_rng(555_000 + zlib.crc32(name.encode()))
    made = 0
    while made < count:
        if spec.kind == "binary":
            labels, other = random_binary_instance(
                rng, min_event_len=2 if name == "nab" else 1)
        else:
            labels, other = random_score_instance(
                rng, require_both_classes=(name == "auc_roc"))
        try:
            want = naive_metric(labels, other, name)
        except ValueError:
            continue
        made += 1
        yield labels, other, want


def test_oracle_equivalence_500_instances_per_metric():
    cfg = MetricConfig()
    for name in sorted(METRICS):
        for labels, other, want in _corpus(name, 500):
            got = evaluate_metric(name, labels, other, cfg).score
            assert got == pytest.approx(want, abs=1e-9), name
    rng = np.random.default_rng(99)
    for _ in range(200):
        labels, score = random_score_instance(rng)
        assert best_fbeta(labels, score).score == \
            exhaustive_threshold_max(labels, score)
    report("oracle equivalence: 20 metrics x 500 instances at 1e-9, "
           "best threshold exact")


def _random_scored(rng):
    labels, score = random_score_instance(rng, require_both_classes=True)
    return labels, np.round(score, 1)


def test_metamorphic_suite():
    rng = np.random.default_rng(4242)
    fns = (patk, best_fbeta, auc_roc, auc_pr, vus_roc, vus_pr)
    for _ in range(100):
        labels, score = _random_scored(rng)
        for fn in fns:
            base = fn(labels, score).score
            moved = fn(labels, 2.0 * score + 1.0).score
            assert moved == pytest.approx(base, abs=1e-9), fn.__name__

    for _ in range(100):
        labels, pred = random_binary_instance(rng)
        assert pa_f(labels, pred).score >= pw_f(labels, pred).score - 1e-12
        grown = pred.copy()
        events = extract_events(pred)
        if events:
            s, e = events[rng.integers(len(events))]
            if s > 0:
                grown[s - 1] = True
            if e + 1 < len(grown):
                grown[e + 1] = True
            assert seg_f(labels, grown).score >= \
                seg_f(labels, pred).score - 1e-12

    for _ in range(100):
        labels, score = _random_scored(rng)
        extra = int(rng.integers(1, 40))
        labels2 = np.concatenate([labels, np.zeros(extra, dtype=bool)])
        score2 = np.concatenate([score, np.full(extra, score.min() - 1.0)])
        assert auc_pr(labels2, score2).score == pytest.approx(
            auc_pr(labels, score).score, abs=1e-9)
        before = auc_roc(labels, score).score
        after = auc_roc(labels2, score2).score
        assert after > before or before == pytest.approx(1.0)

    values = [evaluate_metric("vus_roc", s.labels,
                              s.candidates["worst-ranker"]).score
              for s in tn_append_family()]
    assert values == sorted(values)
    assert values[0] == pytest.approx(0.05, abs=0.05)
    assert values[-1] == pytest.approx(0.95, abs=0.05)
    report("metamorphic suite: transform invariance, extension and "
           "adjustment monotonicity, dilution behaviour of curve areas")


def test_auc_disagreement_construction():
    out = auc_disagreement_demo(seed=0)
    assert out["disagreement"] is True
    report("ROC/PR disagreement instance constructed with fixed seed")


def test_gated_metric_trivial_endpoints():
    labels = make_labels(24, [(4, 9), (15, 18)])
    empty = make_pred(24, [])
    assert taf(labels, labels).score == pytest.approx(1.0)
    assert etaf(labels, labels).score == pytest.approx(1.0)
    assert nab_score(labels, labels).score == pytest.approx(100.0)
    assert taf(labels, empty).score == 0.0
    assert etaf(labels, empty).score == 0.0
    assert nab_score(labels, empty).score == pytest.approx(0.0)
    report("gated metrics: perfect prediction maps to 1 or 100, "
           "empty prediction to 0")
