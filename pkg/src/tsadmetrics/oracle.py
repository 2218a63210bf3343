"""Brute-force reference implementations for differential testing.

Every metric is re-derived here as a straight-line transcription of its
defining formulas, using plain Python loops (and numerical quadrature
for the continuous affiliation integrals).  Nothing in this module is
shared with the optimized implementations beyond input validation, so a
disagreement between the two points at a real defect.  Instances are
kept small (length <= 64) so the quadratic and cubic loops stay trivial.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .config import MetricConfig
from .core import as_binary, as_score

ORACLE_MAX_LENGTH = 64

__all__ = [
    "ORACLE_MAX_LENGTH",
    "naive_nearest_distance",
    "exhaustive_threshold_max",
    "naive_metric",
    "random_binary_instance",
    "random_score_instance",
]


def _check(labels, other, score=False):
    labels = [int(v) for v in as_binary(labels)]
    if score:
        other = [float(v) for v in as_score(other)]
    else:
        other = [int(v) for v in as_binary(other)]
    if len(labels) != len(other):
        raise ValueError("length mismatch")
    if len(labels) > ORACLE_MAX_LENGTH:
        raise ValueError("oracle instances are capped at length 64")
    return labels, other


def _runs(seq):
    """Maximal runs of 1s as inclusive (start, end) pairs, by scanning."""
    runs = []
    start = None
    for i, v in enumerate(seq):
        if v and start is None:
            start = i
        if not v and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(seq) - 1))
    return runs


def naive_nearest_distance(a, b, fallback: float):
    """Exhaustive nearest distance from each index in a to the set b."""
    out = []
    for i in a:
        if b:
            out.append(min(abs(i - j) for j in b))
        else:
            out.append(fallback)
    return out


def _f(p, r, beta):
    if beta * beta * p + r == 0:
        return 0.0
    return (1 + beta * beta) * p * r / (beta * beta * p + r)


def _counts_to_f(tp, fp, fn, beta):
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    return _f(p, r, beta)


# ---------------------------------------------------------------- binary


def _pw(labels, pred, beta):
    tp = sum(1 for l, p in zip(labels, pred) if l and p)
    fp = sum(1 for l, p in zip(labels, pred) if not l and p)
    fn = sum(1 for l, p in zip(labels, pred) if l and not p)
    return _counts_to_f(tp, fp, fn, beta)


def _pa(labels, pred, beta):
    adj = list(pred)
    for s, e in _runs(labels):
        if any(pred[s : e + 1]):
            for i in range(s, e + 1):
                adj[i] = 1
    return _pw(labels, adj, beta)


def _dtpa(labels, pred, beta, k):
    adj = list(pred)
    for s, e in _runs(labels):
        hits = [i for i in range(s, e + 1) if pred[i]]
        early = bool(hits) and hits[0] - s < k
        for i in range(s, e + 1):
            adj[i] = 1 if early else 0
    return _pw(labels, adj, beta)


def _pak(labels, pred, beta, k_pct):
    adj = list(pred)
    for s, e in _runs(labels):
        hits = sum(pred[s : e + 1])
        if hits * 100.0 >= k_pct * (e - s + 1):
            for i in range(s, e + 1):
                adj[i] = 1
    return _pw(labels, adj, beta)


def _ls(labels, pred, beta, n):
    adj = list(pred)
    for s, e in _runs(labels):
        hits = [i for i in range(s, e + 1) if pred[i]]
        if hits:
            for i in range(hits[0], e + 1):
                adj[i] = 1
    dl = [int(any(labels[i : i + n])) for i in range(0, len(labels), n)]
    dp = [int(any(adj[i : i + n])) for i in range(0, len(adj), n)]
    return _pw(dl, dp, beta)


def _seg_counts(labels, pred):
    tp = fn = fp = 0
    for s, e in _runs(labels):
        if any(pred[s : e + 1]):
            tp += 1
        else:
            fn += 1
    for s, e in _runs(pred):
        if not any(labels[s : e + 1]):
            fp += 1
    return tp, fp, fn


def _seg(labels, pred, beta):
    return _counts_to_f(*_seg_counts(labels, pred), beta)


def _cf(labels, pred, beta):
    tp = sum(1 for l, p in zip(labels, pred) if l and p)
    fp = sum(1 for l, p in zip(labels, pred) if not l and p)
    p = tp / (tp + fp) if tp + fp else 0.0
    etp, _efp, efn = _seg_counts(labels, pred)
    r = etp / (etp + efn) if etp + efn else 0.0
    return _f(p, r, beta)


def _ttol(labels, pred, beta, tau):
    lab = [i for i, v in enumerate(labels) if v]
    prd = [i for i, v in enumerate(pred) if v]
    pm = sum(1 for i in prd if any(abs(i - j) <= tau for j in lab))
    rm = sum(1 for j in lab if any(abs(i - j) <= tau for i in prd))
    p = pm / len(prd) if prd else 0.0
    r = rm / len(lab) if lab else 0.0
    return _f(p, r, beta)


def _rf_bias(i, length, bias):
    if bias == "flat":
        return 1.0
    if bias == "front":
        return length - i + 1.0
    if bias == "back":
        return float(i)
    if bias == "middle":
        return min(float(i), length - i + 1.0)
    raise ValueError(f"unknown bias: {bias!r}")


def _rf_overlap(event, mask, bias):
    s, e = event
    length = e - s + 1
    num = sum(_rf_bias(i - s + 1, length, bias)
              for i in range(s, e + 1) if mask[i])
    den = sum(_rf_bias(i - s + 1, length, bias) for i in range(s, e + 1))
    return num / den


def _rf(labels, pred, beta, alpha, bias, cardinality):
    lab_events = _runs(labels)
    pred_events = _runs(pred)
    if lab_events:
        r = 0.0
        for ev in lab_events:
            exists = 1.0 if any(pred[ev[0] : ev[1] + 1]) else 0.0
            r += alpha * exists \
                + (1 - alpha) * cardinality * _rf_overlap(ev, pred, bias)
        r /= len(lab_events)
    else:
        r = 0.0
    if pred_events:
        p = sum(cardinality * _rf_overlap(ev, labels, bias)
                for ev in pred_events) / len(pred_events)
    else:
        p = 0.0
    return _f(p, r, beta)


def _taf_weight(labels, delta):
    events = _runs(labels)
    n = len(labels)
    w = [1.0 if v else 0.0 for v in labels]
    for idx, (s, e) in enumerate(events):
        limit = n if idx + 1 == len(events) else events[idx + 1][0]
        for d in range(1, delta + 1):
            pos = e + d
            if pos >= limit:
                break
            w[pos] = max(w[pos], (delta - d + 1) / (delta + 1))
    return w


def _taf(labels, pred, beta, alpha, delta, theta):
    events = _runs(labels)
    pred_events = _runs(pred)
    w = _taf_weight(labels, delta)
    n = len(labels)

    def side(intervals, spans):
        if not intervals:
            return 0.0
        det = 0.0
        por = 0.0
        for (s, e), (lo, hi) in zip(intervals, spans):
            covered = sum(w[i] for i in range(lo, hi) if pred_side[i])
            portion = min(1.0, covered / (e - s + 1))
            if portion >= theta:
                det += 1.0
                por += portion
        m = len(intervals)
        return alpha * det / m + (1 - alpha) * por / m

    pred_side = pred
    spans = []
    for idx, (s, e) in enumerate(events):
        limit = n if idx + 1 == len(events) else events[idx + 1][0]
        spans.append((s, min(e + delta + 1, limit)))
    recall = side(events, spans)

    pred_side = [1] * n
    precision = 0.0
    if pred_events:
        det = por = 0.0
        for s, e in pred_events:
            covered = sum(w[i] for i in range(s, e + 1))
            portion = min(1.0, covered / (e - s + 1))
            if portion >= theta:
                det += 1.0
                por += portion
        m = len(pred_events)
        precision = alpha * det / m + (1 - alpha) * por / m
    return _f(precision, recall, beta)


def _etaf(labels, pred, beta, theta_p, theta_r):
    pred_events = _runs(pred)
    lab_events = _runs(labels)
    correct = [0] * len(labels)
    if pred_events:
        num = den = 0.0
        for s, e in pred_events:
            length = e - s + 1
            ratio = sum(labels[s : e + 1]) / length
            den += math.sqrt(length)
            if ratio >= theta_p:
                num += math.sqrt(length) * ratio
                for i in range(s, e + 1):
                    correct[i] = 1
        p = num / den
    else:
        p = 0.0
    if lab_events:
        hit = sum(
            1 for s, e in lab_events
            if sum(correct[s : e + 1]) / (e - s + 1) >= theta_r
        )
        r = hit / len(lab_events)
    else:
        r = 0.0
    return _f(p, r, beta)


def _af(labels, pred, beta):
    lab_events = _runs(labels)
    if not lab_events:
        raise ValueError("affiliation undefined without label events")
    pred_pieces = [(float(s), float(e + 1)) for s, e in _runs(pred)]
    n = float(len(labels))

    cuts = [0.0]
    for (s1, e1), (s2, e2) in zip(lab_events, lab_events[1:]):
        cuts.append(((e1 + 1) + s2) / 2.0)
    cuts.append(n)

    def dist_interval(x, a, b):
        return max(a - x, x - b, 0.0)

    precisions = []
    recalls = []
    for (s, e), z0, z1 in zip(lab_events, cuts[:-1], cuts[1:]):
        a, b = float(s), float(e + 1)
        span = z1 - z0
        local = [(max(lo, z0), min(hi, z1)) for lo, hi in pred_pieces
                 if min(hi, z1) > max(lo, z0)]

        if local:
            def p_prob(x):
                d = dist_interval(x, a, b)
                if d <= 0.0:
                    return 1.0
                far = max(0.0, min(a - d, z1) - z0) \
                    + max(0.0, z1 - max(b + d, z0))
                return far / span

            total = mass = 0.0
            for lo, hi in local:
                val, _err = integrate.quad(p_prob, lo, hi, limit=200,
                                           points=[a, b])
                total += val
                mass += hi - lo
            precisions.append(total / mass)

            def r_prob(y):
                d = min(dist_interval(y, lo, hi) for lo, hi in local)
                inside = min(y + d, z1) - max(y - d, z0)
                return (span - max(0.0, inside)) / span

            pts = sorted({p for piece in local for p in piece if a < p < b})
            val, _err = integrate.quad(r_prob, a, b, limit=200,
                                       points=pts or None)
            recalls.append(val / (b - a))
        else:
            recalls.append(0.0)

    p = sum(precisions) / len(precisions) if precisions else 0.0
    r = sum(recalls) / len(recalls)
    return _f(p, r, beta)


def _nab(labels, pred, tp_weight, fp_weight, fn_weight):
    events = _runs(labels)
    if not events:
        raise ValueError("NAB requires at least one label event")
    if any(s == e for s, e in events):
        raise ValueError("NAB undefined for point anomalies")

    def sig(x):
        if x > 3.0:
            return -1.0
        return 2.0 / (1.0 + math.exp(5.0 * x)) - 1.0

    raw = 0.0
    for s, e in events:
        hits = [i for i in range(s, e + 1) if pred[i]]
        if hits:
            raw += tp_weight * sig((hits[0] - e) / (e - s + 1))
        else:
            raw -= fn_weight
    for i, v in enumerate(pred):
        if not v or any(s <= i <= e for s, e in events):
            continue
        prior = [ev for ev in events if ev[0] <= i]
        if prior:
            s, e = prior[-1]
            raw += fp_weight * sig((i - e) / (e - s + 1))
        else:
            raw -= fp_weight
    null = -fn_weight * len(events)
    perfect = sum(tp_weight * sig((s - e) / (e - s + 1)) for s, e in events)
    return 100.0 * (raw - null) / (perfect - null)


def _td(labels, pred, eta):
    lab = [i for i, v in enumerate(labels) if v]
    prd = [i for i, v in enumerate(pred) if v]
    fallback = float(len(labels))
    total = 0.0
    for d in naive_nearest_distance(lab, prd, fallback):
        total += float(d) ** eta
    for d in naive_nearest_distance(prd, lab, fallback):
        total += float(d) ** eta
    return total


# ----------------------------------------------------------------- score


def _thresholds(score):
    """Distinct thresholds spanning all-normal to all-anomalous, with a
    strict > comparison."""
    distinct = sorted(set(score), reverse=True)
    return distinct + [distinct[-1] - 1.0]


def _apply(score, t):
    return [1 if v > t else 0 for v in score]


def _patk(labels, score, k):
    if k is None:
        k = sum(labels)
    if not 1 <= k <= len(labels):
        raise ValueError("k out of range")
    for t in _thresholds(score):
        pred = _apply(score, t)
        admitted = sum(pred)
        if admitted >= k:
            hit = sum(1 for l, p in zip(labels, pred) if l and p)
            return hit / admitted
    raise AssertionError("final threshold admits every point")


def _best_f(labels, score, beta):
    return max(_pw(labels, _apply(score, t), beta) for t in _thresholds(score))


def _curve(labels, score, weights, kind, existence=None):
    total_pos = sum(weights)
    total_neg = sum(1.0 - w for w in weights)
    pts = []
    for t in _thresholds(score):
        pred = _apply(score, t)
        got = sum(w for w, p in zip(weights, pred) if p)
        tpr = got / total_pos if total_pos else 0.0
        if existence is not None:
            tpr *= existence(pred)
        if kind == "roc":
            fpr = sum(1.0 - w for w, p in zip(weights, pred) if p)
            fpr = fpr / total_neg if total_neg else 0.0
            pts.append((fpr, tpr))
        else:
            npred = sum(pred)
            prec = got / npred if npred else 0.0
            pts.append((tpr, prec))
    return pts


def _area(pts, kind):
    if kind == "roc":
        return sum(0.5 * (y0 + y1) * (x1 - x0)
                   for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]))
    area = 0.0
    prev = 0.0
    for rec, prec in pts:
        area += (rec - prev) * prec
        prev = rec
    return area


def _auc_roc(labels, score):
    if all(labels) or not any(labels):
        raise ValueError("ROC undefined for single-class labels")
    pts = _curve(labels, score, [float(v) for v in labels], "roc")
    return _area(pts, "roc")


def _auc_pr(labels, score):
    if not any(labels):
        raise ValueError("PR curve undefined without positive labels")
    pts = _curve(labels, score, [float(v) for v in labels], "pr")
    return _area(pts, "pr")


def _smooth(labels, ell):
    out = [float(v) for v in labels]
    for s, e in _runs(labels):
        for d in range(1, ell + 1):
            v = 1.0 - d / (ell + 1.0)
            if s - d >= 0:
                out[s - d] = max(out[s - d], v)
            if e + d < len(out):
                out[e + d] = max(out[e + d], v)
    return out


def _vus(labels, score, ell_max, kind):
    events = _runs(labels)
    if not events:
        raise ValueError("surface metrics require at least one label event")

    def existence(pred):
        hit = sum(1 for s, e in events if any(pred[s : e + 1]))
        return hit / len(events)

    areas = []
    for ell in range(ell_max + 1):
        w = _smooth(labels, ell)
        areas.append(_area(_curve(labels, score, w, kind, existence), kind))
    return sum(areas) / len(areas)


# ------------------------------------------------------------- dispatch


def exhaustive_threshold_max(labels, score, beta: float = 1.0) -> float:
    """Best point-wise f-score over every threshold, by enumeration."""
    labels, score = _check(labels, score, score=True)
    return _best_f(labels, score, beta)


def naive_metric(labels, other, name: str,
                 config: MetricConfig | None = None) -> float:
    """Run one metric's brute-force transcription by id."""
    cfg = config or MetricConfig()
    score_based = name in (
        "patk", "best_pw_f", "auc_roc", "auc_pr", "vus_roc", "vus_pr")
    labels, other = _check(labels, other, score=score_based)
    if name == "pw_f":
        return _pw(labels, other, cfg.beta)
    if name == "pa_f":
        return _pa(labels, other, cfg.beta)
    if name == "dtpa_f":
        return _dtpa(labels, other, cfg.beta, cfg.k)
    if name == "pak_f":
        return _pak(labels, other, cfg.beta, cfg.k_pct)
    if name == "ls_f":
        return _ls(labels, other, cfg.beta, cfg.n)
    if name == "seg_f":
        return _seg(labels, other, cfg.beta)
    if name == "cf":
        return _cf(labels, other, cfg.beta)
    if name == "ttol_f":
        return _ttol(labels, other, cfg.beta, cfg.tau)
    if name == "rf":
        return _rf(labels, other, cfg.beta, cfg.alpha, cfg.bias,
                   cfg.cardinality)
    if name == "taf":
        return _taf(labels, other, cfg.beta, cfg.alpha, cfg.delta, cfg.theta)
    if name == "etaf":
        return _etaf(labels, other, cfg.beta, cfg.theta_p, cfg.theta_r)
    if name == "af":
        return _af(labels, other, cfg.beta)
    if name == "nab":
        return _nab(labels, other, cfg.nab_tp_weight, cfg.nab_fp_weight,
                    cfg.nab_fn_weight)
    if name == "td":
        return _td(labels, other, cfg.eta)
    if name == "patk":
        return _patk(labels, other, cfg.k_at)
    if name == "best_pw_f":
        return _best_f(labels, other, cfg.beta)
    if name == "auc_roc":
        return _auc_roc(labels, other)
    if name == "auc_pr":
        return _auc_pr(labels, other)
    if name == "vus_roc":
        return _vus(labels, other, cfg.ell_max, "roc")
    if name == "vus_pr":
        return _vus(labels, other, cfg.ell_max, "pr")
    raise KeyError(f"unknown metric: {name!r}")


# ---------------------------------------------------------------- corpus


def random_binary_instance(rng: np.random.Generator, *,
                           min_event_len: int = 1,
                           require_label_event: bool = True):
    """One random (labels, prediction) pair of length <= 64."""
    n = int(rng.integers(max(8, 4 * min_event_len), ORACLE_MAX_LENGTH + 1))
    labels = np.zeros(n, dtype=bool)
    n_events = int(rng.integers(1 if require_label_event else 0, 4))
    for _ in range(n_events):
        length = int(rng.integers(min_event_len, min_event_len + 5))
        start = int(rng.integers(0, max(1, n - length)))
        labels[start : start + length] = True
    if require_label_event and not labels.any():
        labels[int(rng.integers(0, n - min_event_len + 1)):][:min_event_len] = True
    pred = rng.random(n) < rng.uniform(0.05, 0.5)
    return labels, pred


def random_score_instance(rng: np.random.Generator, *,
                          require_label_event: bool = True,
                          require_both_classes: bool = False):
    """One random (labels, score) pair; scores sometimes carry ties."""
    labels, _ = random_binary_instance(
        rng, require_label_event=require_label_event)
    if require_both_classes and labels.all():
        labels[int(rng.integers(0, len(labels)))] = False
        if not labels.any():
            labels[0] = True
    n = len(labels)
    score = rng.normal(0.0, 1.0, n) + labels * rng.uniform(0.0, 2.0)
    if rng.random() < 0.5:
        score = np.round(score, 1)  # provoke threshold ties
    return labels, score
