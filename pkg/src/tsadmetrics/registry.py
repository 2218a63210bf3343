"""Metric registry: one entry per metric, binding the implementation to
its id, input kind, direction and declared parameters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import binary, nonbinary
from .binary import MetricResult
from .config import MetricConfig


@dataclass(frozen=True)
class MetricSpec:
    name: str
    long_name: str
    kind: str                      # "binary" or "score"
    direction: str                 # "higher-better" or "lower-better"
    parameters: tuple[str, ...]    # declared tunables, for documentation
    fn: Callable                   # (labels, other, config) -> MetricResult


def _bin(fn, **argmap):
    def call(labels, pred, cfg: MetricConfig) -> MetricResult:
        return fn(labels, pred, **{k: getattr(cfg, v) for k, v in argmap.items()})
    return call


METRICS: dict[str, MetricSpec] = {}


def _register(spec: MetricSpec):
    METRICS[spec.name] = spec


_register(MetricSpec(
    "pw_f", "point-wise f-score", "binary", "higher-better",
    ("beta",), _bin(binary.pw_f, beta="beta")))
_register(MetricSpec(
    "pa_f", "point-adjusted f-score", "binary", "higher-better",
    ("beta",), _bin(binary.pa_f, beta="beta")))
_register(MetricSpec(
    "dtpa_f", "delay-thresholded point-adjusted f-score", "binary",
    "higher-better", ("beta", "k"), _bin(binary.dtpa_f, beta="beta", k="k")))
_register(MetricSpec(
    "pak_f", "point-adjusted f-score at K%", "binary", "higher-better",
    ("beta", "k_pct"), _bin(binary.pak_f, beta="beta", k_pct="k_pct")))
_register(MetricSpec(
    "ls_f", "latency and sparsity aware f-score", "binary", "higher-better",
    ("beta", "n"), _bin(binary.ls_f, beta="beta", n="n")))
_register(MetricSpec(
    "seg_f", "segment-wise f-score", "binary", "higher-better",
    ("beta",), _bin(binary.seg_f, beta="beta")))
_register(MetricSpec(
    "cf", "composite f-score", "binary", "higher-better",
    ("beta",), _bin(binary.composite_f, beta="beta")))
_register(MetricSpec(
    "ttol_f", "time-tolerant f-score", "binary", "higher-better",
    ("beta", "tau"), _bin(binary.ttol_f, beta="beta", tau="tau")))
# The range-based score exposes one shared bias/cardinality pair, but its
# published form allows separate overlap, bias and cardinality choices on
# each side; all eight knobs are declared.
_register(MetricSpec(
    "rf", "range-based f-score", "binary", "higher-better",
    ("beta", "alpha", "recall_bias", "recall_cardinality", "recall_overlap",
     "precision_bias", "precision_cardinality", "precision_overlap"),
    _bin(binary.range_f, beta="beta", alpha="alpha", bias="bias",
         cardinality="cardinality")))
_register(MetricSpec(
    "taf", "time-series-aware f-score", "binary", "higher-better",
    ("beta", "alpha", "delta", "theta"),
    _bin(binary.taf, beta="beta", alpha="alpha", delta="delta", theta="theta")))
_register(MetricSpec(
    "etaf", "enhanced time-series-aware f-score", "binary", "higher-better",
    ("beta", "theta_p", "theta_r"),
    _bin(binary.etaf, beta="beta", theta_p="theta_p", theta_r="theta_r")))
_register(MetricSpec(
    "af", "affiliation f-score", "binary", "higher-better",
    ("beta",), _bin(binary.affiliation_f, beta="beta")))
_register(MetricSpec(
    "nab", "NAB score", "binary", "higher-better",
    ("tp_weight", "fp_weight", "fn_weight"),
    _bin(binary.nab_score, tp_weight="nab_tp_weight",
         fp_weight="nab_fp_weight", fn_weight="nab_fn_weight")))
_register(MetricSpec(
    "td", "temporal distance", "binary", "lower-better",
    ("eta",), _bin(binary.temporal_distance, eta="eta")))

_register(MetricSpec(
    "patk", "precision at K", "score", "higher-better",
    ("k_at",), _bin(nonbinary.patk, k="k_at")))
_register(MetricSpec(
    "best_pw_f", "best-threshold point-wise f-score", "score",
    "higher-better", ("beta",), _bin(nonbinary.best_fbeta, beta="beta")))
_register(MetricSpec(
    "auc_roc", "area under the ROC curve", "score", "higher-better",
    (), _bin(nonbinary.auc_roc)))
_register(MetricSpec(
    "auc_pr", "area under the precision-recall curve", "score",
    "higher-better", (), _bin(nonbinary.auc_pr)))
_register(MetricSpec(
    "vus_roc", "volume under the ROC surface", "score", "higher-better",
    ("ell_max",), _bin(nonbinary.vus_roc, ell_max="ell_max")))
_register(MetricSpec(
    "vus_pr", "volume under the precision-recall surface", "score",
    "higher-better", ("ell_max",), _bin(nonbinary.vus_pr, ell_max="ell_max")))

BINARY_METRICS = tuple(n for n, s in METRICS.items() if s.kind == "binary")
SCORE_METRICS = tuple(n for n, s in METRICS.items() if s.kind == "score")


def evaluate_metric(name: str, labels, other,
                    config: MetricConfig | None = None) -> MetricResult:
    """Run one metric by id against labels and a prediction or score."""
    if name not in METRICS:
        raise KeyError(f"unknown metric: {name!r}")
    cfg = config or MetricConfig()
    return METRICS[name].fn(labels, other, cfg)
