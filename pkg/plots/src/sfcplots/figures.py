"""Turn benchmark result CSVs into per-phase figures.

Consumes the results CSV produced by the index benchmark harness (fixed
11-column header) and renders one figure per (phase, dataset) group: one
series per structure over the input-size axis.  Median records are used
exclusively whenever a group contains any.  Output is a pure function of the
CSV bytes and the figure options; a manifest lists the produced files.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

# Must match the harness's write_results header exactly.
RESULTS_HEADER = [
    "structure", "dataset", "n", "curve", "rho", "metric",
    "phase", "ms", "queries", "run", "is_median",
]

PHASES = ("build", "insert", "query")

MANIFEST_NAME = "manifest.txt"

_Y_LABEL = {
    "build": "construction time (s)",
    "insert": "insertion latency (ms/insert)",
    "query": "query latency (ms/query)",
    "replay": "total runtime (s)",
}


class SchemaError(ValueError):
    """The CSV header does not match the expected results schema."""


class NoDataError(ValueError):
    """The selection matched no result rows."""


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    out_dir: str
    phases: tuple[str, ...] = PHASES
    series_keys: tuple[str, ...] = ("structure",)
    image_format: str = "svg"

    def __post_init__(self):
        if self.image_format not in ("svg", "png"):
            raise ValueError(f"image format must be 'svg' or 'png', got {self.image_format!r}")
        bad = [k for k in self.series_keys if k not in RESULTS_HEADER]
        if bad:
            raise SchemaError(f"unknown group-by column: {bad[0]}")


def load_rows(csv_path: str) -> list[dict]:
    with open(csv_path, newline="") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames or []
        for col in RESULTS_HEADER:
            if col not in header:
                raise SchemaError(f"missing column: {col}")
        for col in header:
            if col not in RESULTS_HEADER:
                raise SchemaError(f"unexpected column: {col}")
        rows = []
        for raw in reader:
            rows.append({
                **raw,
                "n": int(raw["n"]),
                "ms": float(raw["ms"]),
                "queries": int(raw["queries"]),
                "run": int(raw["run"]),
                "is_median": raw["is_median"] not in ("0", "", "false", "False"),
            })
    return rows


def _value(row: dict) -> float:
    """Per-phase plotted quantity."""
    phase = row["phase"]
    if phase == "build" or phase == "replay":
        return row["ms"] / 1000.0
    if phase == "insert":
        return row["ms"] / row["n"]
    return row["ms"] / row["queries"]


def build_figure_data(rows: list[dict], spec: FigureSpec) -> dict:
    """Group rows into {(phase, dataset): {series: [(n, value), ...]}}.

    Median records, when a group has any, displace the raw runs.
    """
    selected = [r for r in rows if r["phase"] in spec.phases]
    if not selected:
        raise NoDataError(
            f"no data: no rows for phases {list(spec.phases)} in the selection"
        )
    groups: dict = {}
    for row in selected:
        groups.setdefault((row["phase"], row["dataset"]), []).append(row)
    figures = {}
    for key in sorted(groups):
        grouped = groups[key]
        if any(r["is_median"] for r in grouped):
            grouped = [r for r in grouped if r["is_median"]]
        series: dict = {}
        for row in grouped:
            name = "/".join(str(row[k]) for k in spec.series_keys)
            series.setdefault(name, []).append((row["n"], _value(row)))
        figures[key] = {name: sorted(points) for name, points in sorted(series.items())}
    return figures


def _safe(token: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "-" for c in token)


def plot_results(spec: FigureSpec) -> list[str]:
    """Render one figure per (phase, dataset) group; write a manifest.

    Returns the produced image paths (sorted).  Re-running on the same CSV
    produces a byte-identical manifest.
    """
    figures = build_figure_data(load_rows(spec.csv_path), spec)
    os.makedirs(spec.out_dir, exist_ok=True)
    produced = []
    for (phase, dataset), series in figures.items():
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for name, points in series.items():
            ns = [n for n, _ in points]
            ys = [y for _, y in points]
            ax.plot(ns, ys, marker="o", label=name)
        ax.set_xscale("log")
        if phase in ("insert", "query"):
            ax.set_yscale("log")
        ax.set_xlabel("input size n")
        ax.set_ylabel(_Y_LABEL.get(phase, phase))
        ax.set_title(f"{phase} on {dataset}")
        ax.legend()
        ax.grid(True, which="both", linewidth=0.3, alpha=0.5)
        name = f"{_safe(phase)}__{_safe(dataset)}.{spec.image_format}"
        path = os.path.join(spec.out_dir, name)
        fig.savefig(path, metadata={"Date": None} if spec.image_format == "svg" else None)
        plt.close(fig)
        produced.append(path)
    produced.sort()
    manifest = os.path.join(spec.out_dir, MANIFEST_NAME)
    with open(manifest, "w") as f:
        for path in produced:
            f.write(os.path.basename(path) + "\n")
    return produced
