"""Case-study scenarios, positional-response curves, the metric property
matrix and the ROC-vs-PR disagreement demonstration.

The scenarios are small hand-built instances, each contrasting candidate
predictions (or scores) whose relative ranking reveals how a metric
weighs detection timing, anomaly length, prediction width, partial
coverage and proximity.  The property matrix derives those behavioural
traits for every metric and compares them against the expected
characterization; parameter-dependent cells are reported but not
asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import MetricConfig
from .core import events_to_series, extract_events, threshold_sweep
from .nonbinary import _pr_points, _roc_points, _trapezoid_area
from .registry import METRICS, evaluate_metric

__all__ = [
    "Expectation",
    "Scenario",
    "builtin_scenarios",
    "evaluate_scenario",
    "positional_response",
    "PROPERTIES",
    "EXPECTED_MATRIX",
    "MatrixCell",
    "PropertyMatrix",
    "property_matrix",
    "auc_disagreement_report",
    "auc_disagreement_demo",
]


# ------------------------------------------------------------- scenarios


@dataclass(frozen=True)
class Expectation:
    """A published value to reproduce: metric x candidate -> value."""
    metric: str
    candidate: str
    value: float
    tol: float


@dataclass(frozen=True)
class Scenario:
    name: str
    labels: np.ndarray
    kind: str                        # "binary" or "score"
    candidates: dict[str, np.ndarray]
    expected: tuple[Expectation, ...] = ()
    note: str = ""

    def __post_init__(self):
        if not self.candidates:
            raise ValueError("scenario needs at least one candidate")
        for ev in extract_events(self.labels):
            assert 0 <= ev[0] <= ev[1] < len(self.labels)


def _labels(length, events):
    return events_to_series(events, length)


def _pred(length, indices):
    out = np.zeros(length, dtype=bool)
    out[list(indices)] = True
    return out


def _fixture_scenarios():
    s1 = Scenario(
        name="single-event-sparse-hits",
        labels=_labels(32, [(17, 26)]),
        kind="binary",
        candidates={"sparse": _pred(32, [8, 24])},
        expected=(
            Expectation("pw_f", "sparse", 0.17, 0.005),
            Expectation("pa_f", "sparse", 0.95, 0.005),
        ),
        note="one long event, one early false positive, one late hit",
    )
    s2 = Scenario(
        name="mid-series-event",
        labels=_labels(30, [(7, 19)]),
        kind="binary",
        candidates={"split": _pred(30, [13, 14, 24, 25])},
        expected=(
            Expectation("pw_f", "split", 0.24, 0.005),
            Expectation("pa_f", "split", 0.93, 0.005),
            Expectation("seg_f", "split", 0.67, 0.005),
        ),
        note="partial hit inside the event plus a trailing false pair",
    )
    s3 = Scenario(
        name="paired-short-events",
        labels=_labels(38, [(29, 30), (35, 36)]),
        kind="binary",
        candidates={
            "offset-miss": _pred(38, [25, 26, 35, 36]),
            "near-miss": _pred(38, [29, 30, 34, 35]),
        },
        expected=(
            Expectation("af", "offset-miss", 0.91, 0.01),
            Expectation("af", "near-miss", 0.90, 0.01),
            Expectation("td", "offset-miss", 14.0, 0.0),
            Expectation("td", "near-miss", 2.0, 0.0),
        ),
        note="equal point-wise error, very different temporal placement",
    )
    return [s1, s2, s3]


def _partial_vs_covering():
    """Three equal events; detect one fully vs all three partially."""
    labels = _labels(100, [(10, 19), (40, 49), (70, 79)])
    return Scenario(
        name="partial-vs-covering",
        labels=labels,
        kind="binary",
        candidates={
            "cover-one": _pred(100, range(40, 50)),
            "touch-all": _pred(100, [10, 40, 70]),
        },
    )


def _partial_vs_covering_scored():
    labels = _labels(100, [(10, 19), (40, 49), (70, 79)])
    cover = np.zeros(100)
    cover[40:50] = 1.0
    touch = np.zeros(100)
    touch[[10, 40, 70]] = 1.0
    return Scenario(
        name="partial-vs-covering-scored",
        labels=labels,
        kind="score",
        candidates={"cover-one": cover, "touch-all": touch},
    )


def _length_weighting():
    """Two short events vs one long one; who wins by covering which?"""
    labels = _labels(100, [(10, 11), (30, 31), (60, 79)])
    return Scenario(
        name="length-weighting",
        labels=labels,
        kind="binary",
        candidates={
            "cover-long": _pred(100, range(60, 80)),
            "cover-short": _pred(100, [10, 11, 30, 31]),
        },
    )


def _length_weighting_scored():
    labels = _labels(100, [(10, 11), (30, 31), (60, 79)])
    long_first = np.zeros(100)
    long_first[60:80] = 1.0
    long_first[[10, 11, 30, 31]] = 0.5
    decoys = [3, 25, 50, 90]
    long_first[decoys] = 0.3
    short_first = np.zeros(100)
    short_first[[10, 11, 30, 31]] = 1.0
    short_first[decoys] = 0.5
    short_first[60:80] = 0.3
    return Scenario(
        name="length-weighting-scored",
        labels=labels,
        kind="score",
        candidates={"cover-long": long_first, "cover-short": short_first},
    )


def _short_vs_wide():
    """Minimal hits vs wide hits at equal point-wise precision."""
    labels = _labels(100, [(20, 23), (60, 63)])
    return Scenario(
        name="short-vs-wide-predictions",
        labels=labels,
        kind="binary",
        candidates={
            "short": _pred(100, [20, 60, 90, 91]),
            "wide": _pred(100, [20, 21, 22, 60, 61, 62, 90, 91, 92, 93, 94, 95]),
        },
        note="both candidates have point-wise precision 0.5",
    )


def _short_vs_wide_scored():
    labels = _labels(100, [(20, 23), (60, 63)])
    short = np.zeros(100)
    short[[20, 60]] = 1.0
    short[[90, 91]] = 0.5
    wide = np.zeros(100)
    wide[[20, 21, 22, 60, 61, 62]] = 1.0
    wide[[90, 91, 92, 93, 94, 95]] = 0.5
    return Scenario(
        name="short-vs-wide-scored",
        labels=labels,
        kind="score",
        candidates={"short": short, "wide": wide},
    )


def _clustered_short_events():
    """Many tiny events close together vs one merged wide prediction."""
    labels = _labels(60, [(10, 11), (14, 15), (18, 19), (22, 23)])
    return Scenario(
        name="clustered-short-events",
        labels=labels,
        kind="binary",
        candidates={
            "merged": _pred(60, range(10, 24)),
            "exact": _pred(60, [10, 11, 14, 15, 18, 19, 22, 23]),
        },
    )


def _labelling_swap():
    """Point labelling judged against range labelling and vice versa."""
    point = _pred(40, [20])
    rng = _labels(40, [(16, 24)])
    return [
        Scenario(
            name="labelling-swap-point-judge",
            labels=point,
            kind="binary",
            candidates={"range-labeller": rng.copy()},
        ),
        Scenario(
            name="labelling-swap-range-judge",
            labels=rng,
            kind="binary",
            candidates={"point-labeller": point.copy()},
        ),
    ]


def _proximity_scored():
    """Identical score bumps placed near vs far from the one event."""
    labels = _labels(100, [(40, 59)])
    idx = np.arange(100, dtype=float)
    near = np.exp(-((idx - 35.0) / 3.0) ** 2)
    far = np.exp(-((idx - 10.0) / 3.0) ** 2)
    return Scenario(
        name="proximity-scored",
        labels=labels,
        kind="score",
        candidates={"near": near, "far": far},
    )


def tn_append_family(ratios=(8, 16, 32, 64)):
    """The same 4 mis-ranked anomalies diluted into ever more normals.

    The score decreases strictly along the series, so on the shortest
    instance the anomalies (at indices 4..7) rank dead last; every
    appended normal point scores lower still.
    """
    out = []
    for n in ratios:
        labels = _labels(n, [(4, 7)])
        score = np.arange(n, 0.0, -1.0)
        out.append(Scenario(
            name=f"tn-append-{n}",
            labels=labels,
            kind="score",
            candidates={"worst-ranker": score},
        ))
    return out


def builtin_scenarios() -> list[Scenario]:
    scenarios = _fixture_scenarios()
    scenarios += [
        _partial_vs_covering(),
        _partial_vs_covering_scored(),
        _length_weighting(),
        _length_weighting_scored(),
        _short_vs_wide(),
        _short_vs_wide_scored(),
        _clustered_short_events(),
        _proximity_scored(),
    ]
    scenarios += _labelling_swap()
    scenarios += tn_append_family()
    return sorted(scenarios, key=lambda s: s.name)


def evaluate_scenario(scenario: Scenario,
                      config: MetricConfig | None = None,
                      metrics=None):
    """All applicable metrics on every candidate.

    Returns rows (candidate, metric, score, expected, tol, status) where
    status is PASS/FAIL against the recorded expectation or '' when the
    scenario records none.
    """
    cfg = config or MetricConfig()
    wanted = {(e.metric, e.candidate): e for e in scenario.expected}
    names = metrics or [n for n, s in METRICS.items()
                        if s.kind == scenario.kind]
    rows = []
    for cand_name in sorted(scenario.candidates):
        series = scenario.candidates[cand_name]
        for name in names:
            if METRICS[name].kind != scenario.kind:
                raise ValueError(
                    f"metric {name} does not apply to {scenario.kind} candidates")
            try:
                value = evaluate_metric(name, scenario.labels, series, cfg).score
            except ValueError:
                continue
            exp = wanted.get((name, cand_name))
            if exp is None:
                rows.append((cand_name, name, value, None, None, ""))
            else:
                ok = abs(value - exp.value) <= exp.tol
                rows.append((cand_name, name, value, exp.value, exp.tol,
                             "PASS" if ok else "FAIL"))
    return rows


# --------------------------------------------------- positional response


RESPONSE_LENGTH = 100
RESPONSE_EVENT = (40, 59)
RESPONSE_PRED_LEN = 5


def positional_response(name: str, config: MetricConfig | None = None):
    """Score of a length-5 predicted event at every placement offset.

    The label series has one event at 40..59 in a length-100 series.
    Returns (offsets, raw scores, min-max normalized scores); for
    lower-better metrics the normalized curve is flipped so that up
    always means better.
    """
    spec = METRICS[name]
    if spec.kind != "binary":
        raise ValueError("positional response is defined for binary metrics")
    cfg = config or MetricConfig()
    labels = _labels(RESPONSE_LENGTH, [RESPONSE_EVENT])
    offsets = np.arange(RESPONSE_LENGTH - RESPONSE_PRED_LEN + 1)
    raw = np.empty(len(offsets))
    for i, o in enumerate(offsets):
        pred = _pred(RESPONSE_LENGTH, range(o, o + RESPONSE_PRED_LEN))
        raw[i] = evaluate_metric(name, labels, pred, cfg).score
    lo, hi = raw.min(), raw.max()
    norm = (raw - lo) / (hi - lo) if hi > lo else np.zeros_like(raw)
    if spec.direction == "lower-better":
        norm = 1.0 - norm
    return offsets, raw, norm


# ------------------------------------------------------- property matrix


PROPERTIES = (
    "early_detection",
    "long_anomalies",
    "short_predictions",
    "partial_detection",
    "proximity",
    "requires_threshold",
    "parameter_count",
    "time_aware",
    "tn_insensitive",
    "generality",
)

_H, _L, _P = "has", "lacks", "partial"

# Expected characterization, row per metric in registry order.  Cells
# marked "partial" depend on parameter choices and are reported only.
EXPECTED_MATRIX = {
    "pw_f":      (_L, _H, _L, _L, _L, _H, "1", _L, _H, _L),
    "pa_f":      (_L, _H, _H, _H, _L, _H, "1", _H, _H, _L),
    "dtpa_f":    (_P, _H, _P, _H, _L, _H, "2", _H, _H, _L),
    "pak_f":     (_L, _H, _P, _P, _L, _H, "2", _H, _H, _L),
    "ls_f":      (_P, _P, _P, _H, _P, _H, "2", _H, _H, _L),
    "seg_f":     (_L, _L, _L, _H, _L, _H, "1", _H, _H, _L),
    "cf":        (_L, _L, _L, _H, _L, _H, "1", _H, _H, _L),
    "ttol_f":    (_L, _P, _L, _P, _H, _H, "2", _H, _H, _L),
    "rf":        (_P, _L, _L, _P, _L, _H, "8", _H, _H, _L),
    "taf":       (_L, _L, _L, _P, _P, _H, "4", _H, _H, _L),
    "etaf":      (_L, _L, _L, _P, _L, _H, "3", _H, _H, _L),
    "af":        (_L, _L, _L, _H, _H, _H, "1", _H, _H, _L),
    "nab":       (_H, _L, _H, _H, _P, _H, "3", _H, _H, _L),
    "td":        (_L, _P, _H, _P, _H, _H, "1", _H, _H, _L),
    "patk":      (_L, _H, _L, _L, _P, _L, "1", _L, _H, _L),
    "best_pw_f": (_L, _H, _L, _L, _P, _L, "1", _L, _H, _L),
    "auc_roc":   (_L, _H, _L, _L, _P, _L, "0", _L, _L, _L),
    "auc_pr":    (_L, _H, _L, _L, _P, _L, "0", _L, _H, _L),
    "vus_roc":   (_L, _P, _L, _L, _H, _L, "1", _H, _L, _L),
    "vus_pr":    (_L, _H, _L, _L, _H, _L, "1", _H, _H, _L),
}


@dataclass(frozen=True)
class MatrixCell:
    metric: str
    prop: str
    expected: str
    derived: str
    starred: bool

    @property
    def status(self) -> str:
        if self.starred:
            return "REPORTED"
        return "PASS" if self.expected == self.derived else "FAIL"


@dataclass(frozen=True)
class PropertyMatrix:
    cells: dict[tuple[str, str], MatrixCell]

    def row(self, metric):
        return [self.cells[(metric, p)] for p in PROPERTIES]

    def failures(self):
        return [c for c in self.cells.values() if c.status == "FAIL"]


def _value(name, labels, series, cfg):
    return evaluate_metric(name, labels, series, cfg).score


def _prefers(name, labels, good, bad, cfg, tol=1e-9) -> str:
    """'has' when the metric strictly ranks the good candidate first."""
    a = _value(name, labels, good, cfg)
    b = _value(name, labels, bad, cfg)
    if METRICS[name].direction == "lower-better":
        a, b = -a, -b
    return _H if a > b + tol else _L


def _positional_mark_preference(name, cfg) -> str:
    """Early preference: detection at the event start vs near its end."""
    labels = _labels(RESPONSE_LENGTH, [RESPONSE_EVENT])
    early = _pred(RESPONSE_LENGTH, range(40, 45))
    late = _pred(RESPONSE_LENGTH, range(55, 60))
    return _prefers(name, labels, early, late, cfg)


def _positional_extreme_preference(name, cfg) -> str:
    """Proximity preference: a miss close to the event vs a distant one."""
    labels = _labels(RESPONSE_LENGTH, [RESPONSE_EVENT])
    near = _pred(RESPONSE_LENGTH, range(33, 38))
    far = _pred(RESPONSE_LENGTH, range(0, 5))
    return _prefers(name, labels, near, far, cfg)


def _reversal_invariant(name, cfg) -> str:
    """Non-binary early preference: 'lacks' when reversing time does not
    change the value (the metric cannot tell early from late)."""
    labels = _labels(50, [(20, 29)])
    rng = np.random.default_rng(11)
    score = rng.normal(0.0, 1.0, 50) + labels * 1.5
    fwd = _value(name, labels, score, cfg)
    rev = _value(name, labels[::-1], score[::-1], cfg)
    return _L if abs(fwd - rev) <= 1e-9 else _H


def _time_awareness(name, cfg) -> str:
    """'has' when jointly permuting the time axis can change the value
    (or break the metric's structural preconditions)."""
    spec = METRICS[name]
    if spec.kind == "binary":
        labels = _labels(40, [(8, 12), (25, 31)])
        other = _pred(40, [9, 10, 18, 26, 27, 28, 36])
    else:
        labels = _labels(40, [(8, 12), (25, 31)])
        rng = np.random.default_rng(3)
        other = rng.normal(0.0, 1.0, 40) + labels * 1.2
    base = _value(name, labels, other, cfg)
    rng = np.random.default_rng(5)
    for _ in range(5):
        perm = rng.permutation(len(labels))
        try:
            permuted = _value(name, labels[perm], other[perm], cfg)
        except ValueError:
            return _H
        if abs(permuted - base) > 1e-9:
            return _H
    return _L


def _tn_insensitivity(name, cfg) -> str:
    """'has' when appending normal points preserves the ranking of two
    fixed detectors without collapsing the gap between them."""
    spec = METRICS[name]
    tail_len = 186
    labels0 = _labels(24, [(5, 14)])
    labels1 = np.concatenate([labels0, np.zeros(tail_len, dtype=bool)])
    if spec.kind == "binary":
        a0 = _pred(24, range(7, 11))
        b0 = _pred(24, range(0, 20))
        a1 = np.concatenate([a0, np.zeros(tail_len, dtype=bool)])
        b1 = np.concatenate([b0, np.zeros(tail_len, dtype=bool)])
    else:
        a0 = np.where(_pred(24, range(7, 11)), 1.0, 0.5)
        b0 = np.where(_pred(24, range(0, 20)), 1.0, 0.5)
        tail = np.full(tail_len, 0.25)
        a1 = np.concatenate([a0, tail])
        b1 = np.concatenate([b0, tail])
    gap0 = _value(name, labels0, a0, cfg) - _value(name, labels0, b0, cfg)
    gap1 = _value(name, labels1, a1, cfg) - _value(name, labels1, b1, cfg)
    if gap0 * gap1 < 0:
        return _L                      # ranking flipped
    if (spec.kind == "score" and abs(gap0) > 1e-6
            and abs(gap1) < abs(gap0) / 10.0):
        return _L                      # detectors became indistinguishable
    return _H


def _scenario_pair(scenario_name, good, bad):
    by_name = {s.name: s for s in builtin_scenarios()}
    s = by_name[scenario_name]
    return s.labels, s.candidates[good], s.candidates[bad]


def property_matrix(config: MetricConfig | None = None) -> PropertyMatrix:
    cfg = config or MetricConfig()
    # proximity tests use a wider tolerance budget so that tolerance-
    # based metrics can see a miss 3..7 steps away at all
    proximity_cfg = cfg.replace(tau=10, delta=10)

    pairs = {
        "long_anomalies": {
            "binary": _scenario_pair("length-weighting",
                                     "cover-long", "cover-short"),
            "score": _scenario_pair("length-weighting-scored",
                                    "cover-long", "cover-short"),
        },
        "short_predictions": {
            "binary": _scenario_pair("short-vs-wide-predictions",
                                     "short", "wide"),
            "score": _scenario_pair("short-vs-wide-scored", "short", "wide"),
        },
        "partial_detection": {
            "binary": _scenario_pair("partial-vs-covering",
                                     "touch-all", "cover-one"),
            "score": _scenario_pair("partial-vs-covering-scored",
                                    "touch-all", "cover-one"),
        },
    }
    proximity_scored = _scenario_pair("proximity-scored", "near", "far")

    cells = {}
    for name, spec in METRICS.items():
        expected = EXPECTED_MATRIX[name]
        derived = {}
        if spec.kind == "binary":
            derived["early_detection"] = _positional_mark_preference(name, cfg)
            derived["proximity"] = _positional_extreme_preference(
                name, proximity_cfg)
        else:
            derived["early_detection"] = _reversal_invariant(name, cfg)
            derived["proximity"] = _prefers(name, *proximity_scored, cfg)
        for prop in ("long_anomalies", "short_predictions",
                     "partial_detection"):
            derived[prop] = _prefers(name, *pairs[prop][spec.kind], cfg)
        derived["requires_threshold"] = _H if spec.kind == "binary" else _L
        derived["parameter_count"] = str(len(spec.parameters))
        derived["time_aware"] = _time_awareness(name, cfg)
        derived["tn_insensitive"] = _tn_insensitivity(name, cfg)
        # every metric encodes one fixed notion of detection quality;
        # none claims validity across arbitrary task framings
        derived["generality"] = _L

        for prop, exp in zip(PROPERTIES, expected):
            cells[(name, prop)] = MatrixCell(
                metric=name, prop=prop, expected=exp,
                derived=derived[prop], starred=(exp == _P))
    return PropertyMatrix(cells=cells)


# --------------------------------------------------- ROC/PR disagreement


def roc_curve(labels, score):
    from .core import as_binary, as_score
    labels = as_binary(labels)
    score = as_score(score)
    return _roc_points(labels.astype(float), (~labels).astype(float), score)


def pr_curve(labels, score):
    from .core import as_binary, as_score
    labels = as_binary(labels)
    score = as_score(score)
    return _pr_points(labels.astype(float), score)


def auc_disagreement_report(labels, score_a, score_b) -> dict:
    """Evaluate two detectors under both curve areas and flag whether
    the two areas rank them oppositely."""
    from .nonbinary import auc_pr, auc_roc
    roc_a = auc_roc(labels, score_a).score
    roc_b = auc_roc(labels, score_b).score
    pr_a = auc_pr(labels, score_a).score
    pr_b = auc_pr(labels, score_b).score
    disagreement = (roc_a - roc_b) * (pr_a - pr_b) < 0
    return {
        "disagreement": bool(disagreement),
        "auc_roc": {"a": roc_a, "b": roc_b},
        "auc_pr": {"a": pr_a, "b": pr_b},
        "roc_curves": {"a": roc_curve(labels, score_a),
                       "b": roc_curve(labels, score_b)},
        "pr_curves": {"a": pr_curve(labels, score_a),
                      "b": pr_curve(labels, score_b)},
    }


def auc_disagreement_demo(seed: int = 0, attempts: int = 50) -> dict:
    """Construct a ~2%-anomaly instance where ROC area and PR area rank
    two detectors oppositely.

    Detector a surfaces half the anomalies far above everything and
    buries the rest (strong precision at the top, poor overall ranking);
    detector b separates all anomalies moderately (strong overall
    ranking, diluted top precision).
    """
    rng = np.random.default_rng(seed)
    n, n_anom = 400, 8
    for _ in range(attempts):
        labels = np.zeros(n, dtype=bool)
        pos = rng.choice(n, size=n_anom, replace=False)
        labels[pos] = True
        noise_a = rng.normal(0.0, 1.0, n)
        noise_b = rng.normal(0.0, 1.0, n)
        score_a = noise_a.copy()
        top = pos[: n_anom // 2]
        buried = pos[n_anom // 2 :]
        score_a[top] += 12.0
        score_a[buried] -= 1.5
        score_b = noise_b + labels * 1.8
        report = auc_disagreement_report(labels, score_a, score_b)
        if (report["disagreement"]
                and report["auc_roc"]["b"] > report["auc_roc"]["a"]
                and report["auc_pr"]["a"] > report["auc_pr"]["b"]):
            report["labels"] = labels
            report["score_a"] = score_a
            report["score_b"] = score_b
            return report
    raise RuntimeError("failed to construct a ROC/PR disagreement instance")
