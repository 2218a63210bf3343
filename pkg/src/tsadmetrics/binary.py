"""The binary evaluation metrics: (labels, prediction, parameters) -> score.

All metrics return a MetricResult.  Scores are higher-better except
temporal_distance.  Where a metric's published definition leaves details
open, the choices made here are documented on the function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import affiliation, nab
from .core import (
    adjust_prediction,
    as_binary,
    downsample_or,
    extract_events,
    fbeta,
    point_confusion,
    prf,
)

__all__ = [
    "MetricResult",
    "pw_f",
    "pa_f",
    "dtpa_f",
    "pak_f",
    "ls_f",
    "seg_f",
    "composite_f",
    "ttol_f",
    "range_f",
    "taf",
    "etaf",
    "affiliation_f",
    "nab_score",
    "temporal_distance",
]


@dataclass(frozen=True)
class MetricResult:
    score: float
    precision: float | None = None
    recall: float | None = None
    direction: str = "higher-better"


def _check_pair(labels, pred):
    labels = as_binary(labels)
    pred = as_binary(pred)
    if len(labels) != len(pred):
        raise ValueError("length mismatch between labels and prediction")
    return labels, pred


def _from_prf(p) -> MetricResult:
    return MetricResult(score=p.fscore, precision=p.precision, recall=p.recall)


def pw_f(labels, pred, beta: float = 1.0) -> MetricResult:
    """Point-wise f-score; every time step is one observation."""
    labels, pred = _check_pair(labels, pred)
    return _from_prf(prf(point_confusion(labels, pred), beta))


def pa_f(labels, pred, beta: float = 1.0) -> MetricResult:
    """Point-wise f-score after expanding partially hit label events."""
    labels, pred = _check_pair(labels, pred)
    adjusted = adjust_prediction(labels, pred, mode="full")
    return _from_prf(prf(point_confusion(labels, adjusted), beta))


def dtpa_f(labels, pred, beta: float = 1.0, k: int = 2) -> MetricResult:
    """Adjustment granted only when an event is hit within its first k
    points; late-detected events are cleared entirely."""
    if k < 0:
        raise ValueError("k must be non-negative")
    labels, pred = _check_pair(labels, pred)
    adjusted = adjust_prediction(labels, pred, mode="delay", k=k)
    return _from_prf(prf(point_confusion(labels, adjusted), beta))


def pak_f(labels, pred, beta: float = 1.0, k_pct: float = 20.0) -> MetricResult:
    """Adjustment granted only to events with at least k_pct percent of
    their points predicted; other events keep the raw prediction."""
    if not 0 < k_pct <= 100:
        raise ValueError("k_pct must be in (0, 100]")
    labels, pred = _check_pair(labels, pred)
    adjusted = adjust_prediction(labels, pred, mode="portion", k_pct=k_pct)
    return _from_prf(prf(point_confusion(labels, adjusted), beta))


def ls_f(labels, pred, beta: float = 1.0, n: int = 2) -> MetricResult:
    """Latency-aware adjustment (mark from first hit to event end), then
    block-OR downsampling of both series by factor n."""
    labels, pred = _check_pair(labels, pred)
    adjusted = adjust_prediction(labels, pred, mode="latency")
    dl = downsample_or(labels, n)
    dp = downsample_or(adjusted, n)
    return _from_prf(prf(point_confusion(dl, dp), beta))


def seg_f(labels, pred, beta: float = 1.0) -> MetricResult:
    """Event-level counting: a label event with any hit is one TP, one
    without is one FN, a predicted event touching no label point is one FP."""
    labels, pred = _check_pair(labels, pred)
    tp = fn = fp = 0
    for s, e in extract_events(labels):
        if pred[s : e + 1].any():
            tp += 1
        else:
            fn += 1
    for s, e in extract_events(pred):
        if not labels[s : e + 1].any():
            fp += 1
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    return MetricResult(score=fbeta(p, r, beta), precision=p, recall=r)


def composite_f(labels, pred, beta: float = 1.0) -> MetricResult:
    """Harmonic-style combination of point-wise precision with
    event-level recall."""
    labels, pred = _check_pair(labels, pred)
    p = prf(point_confusion(labels, pred)).precision
    r = seg_f(labels, pred).recall
    return MetricResult(score=fbeta(p, r, beta), precision=p, recall=r)


def ttol_f(labels, pred, beta: float = 1.0, tau: int = 2) -> MetricResult:
    """Point-wise counting with temporal tolerance: a point matches when
    an opposite-side anomalous point lies within distance tau."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    labels, pred = _check_pair(labels, pred)
    lab_idx = np.flatnonzero(labels)
    pred_idx = np.flatnonzero(pred)

    def near(points, targets):
        if targets.size == 0:
            return 0
        return int(sum(np.abs(targets - p).min() <= tau for p in points))

    p = near(pred_idx, lab_idx) / pred_idx.size if pred_idx.size else 0.0
    r = near(lab_idx, pred_idx) / lab_idx.size if lab_idx.size else 0.0
    return MetricResult(score=fbeta(p, r, beta), precision=p, recall=r)


def _bias_weights(length: int, bias: str) -> np.ndarray:
    i = np.arange(1, length + 1, dtype=float)
    if bias == "flat":
        return np.ones(length)
    if bias == "front":
        return length - i + 1
    if bias == "back":
        return i
    if bias == "middle":
        return np.minimum(i, length - i + 1)
    raise ValueError(f"unknown bias: {bias!r}")


def _overlap_reward(event, other_mask, bias: str) -> float:
    s, e = event
    w = _bias_weights(e - s + 1, bias)
    covered = other_mask[s : e + 1]
    return float(w[covered].sum() / w.sum())


def range_f(labels, pred, beta: float = 1.0, alpha: float = 0.5,
            bias: str = "flat", cardinality: float = 1.0) -> MetricResult:
    """Event-range precision/recall with existence reward and positional
    overlap weighting.

    Recall per label event: alpha * existence + (1-alpha) * cardinality *
    positional overlap.  Precision per predicted event: cardinality *
    positional overlap (no existence term).  The fragmentation factor is
    kept at its neutral value 1.
    """
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must be in [0, 1]")
    labels, pred = _check_pair(labels, pred)
    label_events = extract_events(labels)
    pred_events = extract_events(pred)

    if label_events:
        rs = []
        for ev in label_events:
            exists = 1.0 if pred[ev[0] : ev[1] + 1].any() else 0.0
            rs.append(alpha * exists
                      + (1 - alpha) * cardinality * _overlap_reward(ev, pred, bias))
        recall = float(np.mean(rs))
    else:
        recall = 0.0
    if pred_events:
        ps = [cardinality * _overlap_reward(ev, labels, bias)
              for ev in pred_events]
        precision = float(np.mean(ps))
    else:
        precision = 0.0
    return MetricResult(score=fbeta(precision, recall, beta),
                        precision=precision, recall=recall)


def _decaying_region_weights(label_events, delta: int, length: int):
    """Per-index weights of the tolerance regions trailing each event.

    A region extends delta points past its event (clipped at the next
    event and the series end), with weight falling linearly from
    delta/(delta+1) to 0.
    """
    weights = np.zeros(length)
    for idx, (s, e) in enumerate(label_events):
        limit = length if idx + 1 == len(label_events) else label_events[idx + 1][0]
        for d in range(1, delta + 1):
            pos = e + d
            if pos >= limit:
                break
            weights[pos] = max(weights[pos], (delta - d + 1) / (delta + 1))
    return weights


def taf(labels, pred, beta: float = 1.0, alpha: float = 0.5,
        delta: int = 0, theta: float = 0.5) -> MetricResult:
    """Event-aware f-score with a detection gate and decaying post-event
    tolerance.

    Per label event, the weighted covered portion (event points weigh 1,
    trailing tolerance points weigh less, normalized by event length and
    capped at 1) must reach theta for the event to count as detected.
    Recall is alpha * detected fraction + (1-alpha) * mean portion, the
    portion being zero for undetected events.  Precision mirrors this
    over predicted events, measuring each one against the union of
    events and their tolerance regions.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if not 0 < theta <= 1:
        raise ValueError("theta must be in (0, 1]")
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must be in [0, 1]")
    labels, pred = _check_pair(labels, pred)
    label_events = extract_events(labels)
    pred_events = extract_events(pred)
    region = _decaying_region_weights(label_events, delta, len(labels))
    weight = labels.astype(float) + region

    if label_events:
        detected = []
        portions = []
        for idx, (s, e) in enumerate(label_events):
            limit = len(labels) if idx + 1 == len(label_events) \
                else label_events[idx + 1][0]
            span = slice(s, min(e + delta + 1, limit))
            covered = float((weight[span] * pred[span]).sum())
            portion = min(1.0, covered / (e - s + 1))
            hit = portion >= theta
            detected.append(hit)
            portions.append(portion if hit else 0.0)
        recall = alpha * float(np.mean(detected)) \
            + (1 - alpha) * float(np.mean(portions))
    else:
        recall = 0.0

    if pred_events:
        detected = []
        portions = []
        for s, e in pred_events:
            covered = float(weight[s : e + 1].sum())
            portion = min(1.0, covered / (e - s + 1))
            hit = portion >= theta
            detected.append(hit)
            portions.append(portion if hit else 0.0)
        precision = alpha * float(np.mean(detected)) \
            + (1 - alpha) * float(np.mean(portions))
    else:
        precision = 0.0
    return MetricResult(score=fbeta(precision, recall, beta),
                        precision=precision, recall=recall)


def etaf(labels, pred, beta: float = 1.0, theta_p: float = 0.5,
         theta_r: float = 0.1) -> MetricResult:
    """Gated event scoring with square-root event weighting.

    A predicted event contributes its in-event precision, weighted by
    the square root of its length, but only when that precision reaches
    theta_p; below the gate it contributes zero (and does not help
    recall).  A label event counts as detected when the surviving
    predictions cover at least theta_r of it; recall is the detected
    fraction of label events.
    """
    if not 0 < theta_p <= 1:
        raise ValueError("theta_p must be in (0, 1]")
    if not 0 < theta_r <= 1:
        raise ValueError("theta_r must be in (0, 1]")
    labels, pred = _check_pair(labels, pred)
    label_events = extract_events(labels)
    pred_events = extract_events(pred)

    correct = np.zeros(len(labels), dtype=bool)
    if pred_events:
        num = 0.0
        den = 0.0
        for s, e in pred_events:
            length = e - s + 1
            ratio = float(labels[s : e + 1].sum()) / length
            w = np.sqrt(length)
            den += w
            if ratio >= theta_p:
                num += w * ratio
                correct[s : e + 1] = True
        precision = num / den
    else:
        precision = 0.0

    if label_events:
        hits = []
        for s, e in label_events:
            coverage = float(correct[s : e + 1].sum()) / (e - s + 1)
            hits.append(coverage >= theta_r)
        recall = float(np.mean(hits))
    else:
        recall = 0.0
    return MetricResult(score=fbeta(precision, recall, beta),
                        precision=precision, recall=recall)


def affiliation_f(labels, pred, beta: float = 1.0) -> MetricResult:
    """Zone-local distance-based precision/recall (see affiliation.py)."""
    p, r, f = affiliation.affiliation_prf(labels, pred, beta)
    return MetricResult(score=f, precision=p, recall=r)


def nab_score(labels, pred, tp_weight: float = 1.0, fp_weight: float = 0.11,
              fn_weight: float = 1.0) -> MetricResult:
    """Normalized sigmoid detection score (see nab.py); range (-inf, 100]."""
    score = nab.nab_score(labels, pred, tp_weight, fp_weight, fn_weight)
    return MetricResult(score=score)


def temporal_distance(labels, pred, eta: float = 1.0) -> MetricResult:
    """Sum of eta-powered nearest-neighbour distances in both directions.

    When one side has no anomalous points, each unmatched point on the
    other side contributes (series length)^eta.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    labels, pred = _check_pair(labels, pred)
    lab_idx = np.flatnonzero(labels)
    pred_idx = np.flatnonzero(pred)
    fallback = float(len(labels))

    def side(points, targets):
        if points.size == 0:
            return 0.0
        if targets.size == 0:
            return float(points.size) * fallback ** eta
        return float(sum(np.abs(targets - p).min() ** eta for p in points))

    total = side(lab_idx, pred_idx) + side(pred_idx, lab_idx)
    return MetricResult(score=total, direction="lower-better")
