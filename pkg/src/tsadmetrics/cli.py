"""Command-line front end: file ingestion, metric selection and
configuration, table and plot emission.

Inputs are CSV (one value per line, optional header) or JSON (one flat
numeric array).  Labels must be exactly 0/1; scores any finite reals.
Exit codes: 0 success, 2 malformed input, 3 metric precondition
violation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from .config import MetricConfig
from .harness import (
    builtin_scenarios,
    evaluate_scenario,
    pr_curve,
    property_matrix,
    positional_response,
    roc_curve,
    PROPERTIES,
)
from .registry import BINARY_METRICS, METRICS, evaluate_metric

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


class InputError(Exception):
    pass


class PreconditionError(Exception):
    pass


def _fmt(x) -> str:
    return f"{float(x):.6f}"


# ------------------------------------------------------------------- IO


def load_series(path: str) -> np.ndarray:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {path}")
    text = p.read_text()
    if p.suffix.lower() == ".json" or text.lstrip().startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: invalid JSON ({e})")
        if not isinstance(data, list):
            raise InputError(f"{path}: expected a flat JSON array")
        values = data
    else:
        values = []
        for ln, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            try:
                values.append(float(line))
            except ValueError:
                if ln == 1:
                    continue  # header line
                raise InputError(f"{path}:{ln}: not a number: {line!r}")
    try:
        arr = np.asarray(values, dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{path}: non-numeric content")
    if arr.ndim != 1 or arr.size == 0:
        raise InputError(f"{path}: expected a non-empty 1-d series")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{path}: values must be finite")
    return arr


def load_labels(path: str) -> np.ndarray:
    arr = load_series(path)
    if not np.all(np.isin(arr, (0.0, 1.0))):
        raise InputError(f"{path}: labels must be exactly 0 or 1")
    return arr.astype(bool)


def load_binary(path: str, what: str) -> np.ndarray:
    arr = load_series(path)
    if not np.all(np.isin(arr, (0.0, 1.0))):
        raise InputError(f"{path}: {what} must be exactly 0 or 1")
    return arr.astype(bool)


# ------------------------------------------------------------- config


_CONFIG_TYPES = {f.name: f for f in fields(MetricConfig)}


def _coerce(key: str, raw: str):
    if key not in _CONFIG_TYPES:
        raise InputError(f"unknown parameter: {key!r}")
    if key == "bias":
        return raw
    try:
        value = float(raw)
    except ValueError:
        raise InputError(f"parameter {key}: not a number: {raw!r}")
    if key in ("k", "n", "tau", "delta", "ell_max", "k_at"):
        if value != int(value):
            raise InputError(f"parameter {key}: expected an integer")
        return int(value)
    return value


def load_config_file(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {path}")
    overrides = {}
    for ln, line in enumerate(p.read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{ln}: expected key=value")
        key, raw = (part.strip() for part in line.split("=", 1))
        overrides[key] = _coerce(key, raw)
    return overrides


_METRIC_RE = re.compile(r"^(\w+)(?:\((.*)\))?$")


def parse_metric_list(spec: str):
    """'pw_f,taf(alpha=0.7,delta=2)' -> [(name, {param: value}), ...]."""
    out = []
    for item in re.split(r",(?![^()]*\))", spec):
        item = item.strip()
        if not item:
            continue
        m = _METRIC_RE.match(item)
        if not m:
            raise InputError(f"cannot parse metric spec: {item!r}")
        name, args = m.group(1), m.group(2)
        if name not in METRICS:
            raise InputError(f"unknown metric: {name!r}")
        params = {}
        if args:
            for pair in args.split(","):
                if "=" not in pair:
                    raise InputError(f"metric {name}: expected param=value")
                key, raw = (part.strip() for part in pair.split("=", 1))
                params[key] = _coerce(key, raw)
        out.append((name, params))
    if not out:
        raise InputError("empty metric list")
    return out


def _build_config(base: dict, extra: dict) -> MetricConfig:
    merged = dict(base)
    merged.update(extra)
    try:
        return MetricConfig().replace(**merged)
    except ValueError as e:
        raise InputError(str(e))


# ------------------------------------------------------------ emission


def _emit(text: str, out: str | None):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(str(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def _rows_to_table(header, rows) -> str:
    cols = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cols) for i in range(len(header))]
    lines = []
    for j, row in enumerate(cols):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if j == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _rows_to_json(header, rows) -> str:
    return json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"


def _format_rows(header, rows, fmt: str) -> str:
    if fmt == "csv":
        return _rows_to_csv(header, rows)
    if fmt == "json":
        return _rows_to_json(header, rows)
    return _rows_to_table(header, rows)


# ------------------------------------------------------------ commands


def cmd_evaluate(args) -> int:
    labels = load_labels(args.labels)
    pred = load_binary(args.prediction, "prediction") if args.prediction else None
    score = load_series(args.score) if args.score else None
    for name, arr in (("prediction", pred), ("score", score)):
        if arr is not None and len(arr) != len(labels):
            raise InputError(f"{name} length {len(arr)} != labels length "
                             f"{len(labels)}")
    base = load_config_file(args.config) if args.config else {}
    rows = []
    for name, params in parse_metric_list(args.metrics):
        spec = METRICS[name]
        series = pred if spec.kind == "binary" else score
        if series is None:
            need = "a prediction" if spec.kind == "binary" else "a score"
            raise InputError(f"metric {name} requires {need} input")
        cfg = _build_config(base, params)
        try:
            result = evaluate_metric(name, labels, series, cfg)
        except ValueError as e:
            raise PreconditionError(f"metric {name}: {e}")
        shown = {}
        for k in spec.parameters:
            for attr in (k, f"nab_{k}",
                         "bias" if k.endswith("bias") else "",
                         "cardinality" if k.endswith("cardinality") else ""):
                if attr and hasattr(cfg, attr):
                    shown[k] = getattr(cfg, attr)
                    break
        rows.append((name, _fmt(result.score), spec.direction,
                     ";".join(f"{k}={v}" for k, v in sorted(shown.items()))))
    header = ("metric", "score", "direction", "parameters")
    _emit(_format_rows(header, rows, args.format), args.out)
    return EXIT_OK


def _plot_curves(path, curves, xlabel, ylabel):
    import matplotlib
    matplotlib.use("svg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(5, 4))
    for label, pts in curves:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        ax.plot(xs, ys, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend()
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_sweep(args) -> int:
    labels = load_labels(args.labels)
    score = load_series(args.score)
    if len(score) != len(labels):
        raise InputError(f"score length {len(score)} != labels length "
                         f"{len(labels)}")
    try:
        roc = roc_curve(labels, score)
        pr = pr_curve(labels, score)
    except ValueError as e:
        raise PreconditionError(f"sweep: {e}")
    rows = [("roc", _fmt(x), _fmt(y)) for x, y in roc]
    rows += [("pr", _fmt(x), _fmt(y)) for x, y in pr]
    header = ("curve", "x", "y")
    _emit(_format_rows(header, rows, args.format), args.out)
    if args.plot:
        _plot_curves(args.plot, [("roc", roc), ("pr", pr)], "x", "y")
    return EXIT_OK


def _outdir(path: str) -> Path:
    d = Path(path)
    try:
        d.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise InputError(f"cannot create output directory {path}: {e}")
    return d


def cmd_casestudies(args) -> int:
    out = _outdir(args.out)
    for scenario in builtin_scenarios():
        rows = []
        for cand, metric, value, exp, tol, status in evaluate_scenario(scenario):
            rows.append((cand, metric, _fmt(value),
                         "" if exp is None else _fmt(exp),
                         "" if tol is None else _fmt(tol), status))
        header = ("candidate", "metric", "score", "expected", "tolerance",
                  "status")
        (out / f"scenario-{scenario.name}.csv").write_text(
            _rows_to_csv(header, rows))
    curves = []
    for name in BINARY_METRICS:
        offsets, raw, norm = positional_response(name)
        rows = [(int(o), _fmt(r), _fmt(v))
                for o, r, v in zip(offsets, raw, norm)]
        (out / f"response-{name}.csv").write_text(
            _rows_to_csv(("offset", "raw", "normalized"), rows))
        curves.append((name, list(zip(offsets.tolist(), norm.tolist()))))
    if args.plot:
        _plot_curves(out / "response-curves.svg", curves,
                     "offset", "normalized score")
    return EXIT_OK


def cmd_matrix(args) -> int:
    out = _outdir(args.out)
    matrix = property_matrix()
    rows = []
    for name in METRICS:
        for cell in matrix.row(name):
            rows.append((name, cell.prop, cell.expected, cell.derived,
                         cell.status))
    header = ("metric", "property", "expected", "derived", "status")
    (out / "property-matrix.csv").write_text(_rows_to_csv(header, rows))
    wide = [(name, *[matrix.cells[(name, p)].derived for p in PROPERTIES])
            for name in METRICS]
    (out / "property-matrix-wide.csv").write_text(
        _rows_to_csv(("metric", *PROPERTIES), wide))
    return EXIT_OK


# --------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsadmetrics",
        description="evaluation metrics for time-series anomaly detection")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, score_required=False, labels=True):
        if labels:
            p.add_argument("--labels", required=True,
                           help="0/1 label series (CSV or JSON)")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json", "table"),
                       default="table")

    p_eval = sub.add_parser("evaluate", help="run metrics on one instance")
    common(p_eval)
    p_eval.add_argument("--prediction", help="0/1 predicted series")
    p_eval.add_argument("--score", help="real-valued anomaly score series")
    p_eval.add_argument("--metrics", required=True,
                        help="comma list, e.g. 'pw_f,taf(alpha=0.7)'")
    p_eval.add_argument("--config", help="key=value parameter file")

    p_sweep = sub.add_parser("sweep", help="emit ROC and PR curve points")
    common(p_sweep)
    p_sweep.add_argument("--score", required=True)
    p_sweep.add_argument("--plot", help="write an SVG rendering here")

    p_cs = sub.add_parser("casestudies",
                          help="regenerate scenario tables and curves")
    p_cs.add_argument("--out", required=True, help="output directory")
    p_cs.add_argument("--plot", action="store_true",
                      help="also render SVG curves")

    p_mx = sub.add_parser("matrix", help="derive the metric property matrix")
    p_mx.add_argument("--out", required=True, help="output directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "evaluate": cmd_evaluate,
        "sweep": cmd_sweep,
        "casestudies": cmd_casestudies,
        "matrix": cmd_matrix,
    }
    try:
        return handlers[args.command](args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
