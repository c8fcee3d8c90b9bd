"""Report serialization (JSON/CSV) and figure rendering.

JSON is emitted with fixed key order and shortest round-trip floats, so a
report serialized twice from the same parameters and seed is byte-identical.
CSV uses '.' decimals, ',' separators, a header row and 17 significant
digits, which round-trips doubles exactly.  Rendering draws each measured
column of a report on log-log axes with its fitted slope and saves a PNG
next to the delimited output.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path

import numpy as np

from .errors import UsageError
from .experiments import ExperimentReport
from .gauss_hermite import QuadratureRule

_FLOAT_FMT = "%.17g"


def report_to_dict(report: ExperimentReport) -> dict:
    return {"id": report.id, "params": report.params, "rows": report.rows,
            "fits": report.fits, "verdicts": report.verdicts}


def report_to_json(report: ExperimentReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=False,
                      allow_nan=True) + "\n"


def report_to_csv(report: ExperimentReport) -> str:
    if not report.rows:
        return "\n"
    header = list(report.rows[0].keys())
    lines = [",".join(header)]
    for row in report.rows:
        cells = []
        for key in header:
            value = row[key]
            if isinstance(value, float):
                cells.append(_FLOAT_FMT % value)
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def rule_to_csv(rule: QuadratureRule) -> str:
    """One row per node: index (1-based), node, Gaussian and scaled weight."""
    lines = ["j,t,lambda,mu"]
    for j in range(rule.size):
        lines.append("%d,%s,%s,%s" % (
            j + 1, _FLOAT_FMT % rule.nodes[j], _FLOAT_FMT % rule.lam[j],
            _FLOAT_FMT % rule.mu[j]))
    return "\n".join(lines) + "\n"


def table_to_csv(header: list[str], columns: list[np.ndarray]) -> str:
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_FLOAT_FMT % v if isinstance(v, float) else str(v)
                              for v in row))
    return "\n".join(lines) + "\n"


def default_out_dir() -> Path:
    return Path(os.environ.get("HERMITE_MZ_OUT_DIR", "."))


def resolve_out_path(out: str | None, default_name: str) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    if not path.is_absolute() and path.parent == Path("."):
        path = default_out_dir() / path
    return path


def render_report_figure(report: ExperimentReport, path) -> Path:
    """Render the report's measurements on log-log axes and save a PNG."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not report.rows:
        raise UsageError("report has no rows to plot")
    keys = list(report.rows[0].keys())
    x_key = keys[0]
    xs = np.array([row[x_key] for row in report.rows], dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for key in keys[1:]:
        ys = np.array([float(row[key]) for row in report.rows])
        if np.all(ys > 0) and np.all(np.isfinite(ys)):
            fit = report.fit(key)
            label = key if fit is None else f"{key} (slope {fit['slope']:+.3f})"
            ax.loglog(xs, ys, marker="o", markersize=3.5, label=label)
            if fit is not None:
                ax.loglog(xs, np.exp(fit["intercept"]) * xs ** fit["slope"],
                          linestyle="--", linewidth=0.9, color="gray")
    ax.set_xlabel(x_key)
    ax.set_title(report.id)
    ax.grid(True, which="both", alpha=0.3)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def write_report(report: ExperimentReport, out_path: Path | None, fmt: str,
                 plot: bool = True) -> list[Path]:
    """Write a report as CSV or JSON; on the file path, render its figure too.

    Returns the list of files written.  With no path the delimited output
    goes to stdout and nothing is rendered.
    """
    text = report_to_json(report) if fmt == "json" else report_to_csv(report)
    if out_path is None:
        print(text, end="")
        return []
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(text)
    written = [out_path]
    if plot:
        written.append(render_report_figure(report, out_path.with_suffix(".png")))
    return written
