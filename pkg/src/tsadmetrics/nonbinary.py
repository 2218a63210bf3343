"""Metrics evaluating the raw anomaly score: top-K precision, the best
thresholded f-score, curve areas and tolerance-smoothed surface volumes.
"""

from __future__ import annotations

import numpy as np

from .binary import MetricResult, pw_f
from .core import as_binary, as_score, extract_events, threshold_sweep

__all__ = [
    "patk",
    "best_fbeta",
    "auc_roc",
    "auc_pr",
    "smooth_labels",
    "vus_roc",
    "vus_pr",
]


def _check_scored(labels, score):
    labels = as_binary(labels)
    score = as_score(score)
    if len(labels) != len(score):
        raise ValueError("length mismatch between labels and score")
    return labels, score


def patk(labels, score, k: int | None = None) -> MetricResult:
    """Precision of the top-scored points.

    Takes the largest threshold admitting at least k points; ties can
    push the admitted count L above k, in which case the precision over
    all L points is reported.  k defaults to the number of labelled
    anomalous points.
    """
    labels, score = _check_scored(labels, score)
    if k is None:
        k = int(labels.sum())
    if not 1 <= k <= len(labels):
        raise ValueError("k out of range")
    for _, pred in threshold_sweep(score):
        admitted = int(pred.sum())
        if admitted >= k:
            return MetricResult(score=float(labels[pred].sum()) / admitted)
    raise AssertionError("sweep always ends all-anomalous")


def best_fbeta(labels, score, beta: float = 1.0) -> MetricResult:
    """Maximum point-wise f-score over every distinct thresholding."""
    labels, score = _check_scored(labels, score)
    best = max(
        (pw_f(labels, pred, beta) for _, pred in threshold_sweep(score)),
        key=lambda r: r.score,
    )
    return best


def _roc_points(pos_mass: np.ndarray, neg_mass: np.ndarray, score: np.ndarray,
                existence=None):
    """(FPR, TPR) pairs over the sweep, with optional recall scaling."""
    total_pos = pos_mass.sum()
    total_neg = neg_mass.sum()
    pts = []
    for _, pred in threshold_sweep(score):
        tpr = float(pos_mass[pred].sum()) / total_pos if total_pos else 0.0
        if existence is not None:
            tpr *= existence(pred)
        fpr = float(neg_mass[pred].sum()) / total_neg if total_neg else 0.0
        pts.append((fpr, tpr))
    return pts


def _pr_points(pos_mass: np.ndarray, score: np.ndarray, existence=None):
    """(recall, precision) pairs over the sweep."""
    total_pos = pos_mass.sum()
    pts = []
    for _, pred in threshold_sweep(score):
        npred = int(pred.sum())
        rec = float(pos_mass[pred].sum()) / total_pos if total_pos else 0.0
        if existence is not None:
            rec *= existence(pred)
        prec = float(pos_mass[pred].sum()) / npred if npred else 0.0
        pts.append((rec, prec))
    return pts


def _trapezoid_area(points) -> float:
    area = 0.0
    for (x0, y0), (x1, y1) in zip(points[:-1], points[1:]):
        area += 0.5 * (y0 + y1) * (x1 - x0)
    return area


def _average_precision(points) -> float:
    """Right-step area: sum of precision * recall increment."""
    area = 0.0
    prev_rec = 0.0
    for rec, prec in points:
        area += (rec - prev_rec) * prec
        prev_rec = rec
    return area


def auc_roc(labels, score) -> MetricResult:
    labels, score = _check_scored(labels, score)
    if labels.all() or not labels.any():
        raise ValueError("ROC undefined for single-class labels")
    pts = _roc_points(labels.astype(float), (~labels).astype(float), score)
    return MetricResult(score=_trapezoid_area(pts))


def auc_pr(labels, score) -> MetricResult:
    labels, score = _check_scored(labels, score)
    if not labels.any():
        raise ValueError("PR curve undefined without positive labels")
    pts = _pr_points(labels.astype(float), score)
    return MetricResult(score=_average_precision(pts))


def smooth_labels(labels, ell: int) -> np.ndarray:
    """Real-valued labels: 1 on events, a linear ramp 1 - d/(ell+1) over
    the ell-point buffer on each side, 0 beyond.  Overlapping buffers
    combine by pointwise maximum."""
    labels = as_binary(labels)
    if ell < 0:
        raise ValueError("ell must be non-negative")
    out = labels.astype(float)
    if ell == 0:
        return out
    for s, e in extract_events(labels):
        for d in range(1, ell + 1):
            v = 1.0 - d / (ell + 1.0)
            if s - d >= 0:
                out[s - d] = max(out[s - d], v)
            if e + d < len(out):
                out[e + d] = max(out[e + d], v)
    return out


def _existence_factor(label_events):
    def factor(pred):
        if not label_events:
            return 0.0
        hit = sum(1 for s, e in label_events if pred[s : e + 1].any())
        return hit / len(label_events)
    return factor


def _vus(labels, score, ell_max: int, kind: str) -> float:
    """Average curve area over tolerance levels 0..ell_max.

    At each level the smoothed labels provide per-point positive mass
    (negative mass is its complement) and the recall side is scaled by
    the fraction of original label events containing a predicted point.
    """
    labels, score = _check_scored(labels, score)
    if ell_max < 0:
        raise ValueError("ell_max must be non-negative")
    label_events = extract_events(labels)
    if not label_events:
        raise ValueError("surface metrics require at least one label event")
    existence = _existence_factor(label_events)
    areas = []
    for ell in range(ell_max + 1):
        w = smooth_labels(labels, ell)
        if kind == "roc":
            pts = _roc_points(w, 1.0 - w, score, existence=existence)
            areas.append(_trapezoid_area(pts))
        else:
            pts = _pr_points(w, score, existence=existence)
            areas.append(_average_precision(pts))
    return float(np.mean(areas))


def vus_roc(labels, score, ell_max: int = 4) -> MetricResult:
    return MetricResult(score=_vus(labels, score, ell_max, "roc"))


def vus_pr(labels, score, ell_max: int = 4) -> MetricResult:
    return MetricResult(score=_vus(labels, score, ell_max, "pr"))
