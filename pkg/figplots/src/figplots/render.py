"""Render sidedot CSV families into figures.

A strictly read-only consumer of the simulator's documented CSV and
manifest formats: current-voltage families (one line per case, reference
dashed), output-voltage curves, and metrics-versus-Zeeman panels with a
guide line at one hundred measurements.  Styling is pinned by a versioned
table so that rendering the same CSV twice yields byte-identical SVG.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = [
    "PlotJob",
    "RenderError",
    "SchemaError",
    "ChecksumError",
    "render",
    "render_all",
    "STYLE_VERSION",
]

STYLE_VERSION = "figplots-style-1"

IV_HEADER = ["case", "v_d_V", "i_up_A", "i_dn_A", "i_total_A", "quad_err_A"]
CIRCUIT_HEADER = IV_HEADER + ["v_out_V", "v_ds_V", "residual_A"]
METRICS_HEADER = [
    "case", "v_d_V", "delta_eV", "delta_i_A", "mean_i_A",
    "shot_noise_A2_per_Hz", "t_meas_s", "t_dec_s", "count",
]

# family -> (required header, plot kind)
FAMILIES = {
    "iv": (IV_HEADER, "iv"),
    "circuit": (CIRCUIT_HEADER, "iv"),
    "vout": (CIRCUIT_HEADER, "vout"),
    "metrics_fixed": (METRICS_HEADER, "metrics"),
    "metrics_region": (METRICS_HEADER, "metrics"),
}

CASE_STYLE = {
    "reference": {"color": "black", "linestyle": "--", "label": "reference"},
    "case_i": {"color": "#1f77b4", "linestyle": "-", "label": "case i"},
    "case_ii": {"color": "#d62728", "linestyle": "-", "label": "case ii"},
    "case_iii": {"color": "#2ca02c", "linestyle": "-", "label": "case iii"},
    "case_iv": {"color": "#9467bd", "linestyle": "-", "label": "case iv"},
}


class RenderError(Exception):
    """Base error for the renderer."""


class SchemaError(RenderError):
    """CSV header does not match the documented schema."""


class ChecksumError(RenderError):
    """A manifest checksum does not match its CSV."""


@dataclass(frozen=True)
class PlotJob:
    input_csv: Path
    figure_id: str
    output_path: Path
    family: str = "iv"
    image_format: str = "svg"

    def __post_init__(self):
        if self.image_format not in ("svg", "png"):
            raise RenderError(f"unsupported format {self.image_format!r}")
        if self.family not in FAMILIES:
            raise RenderError(f"unknown curve family {self.family!r}")


def _deterministic_rc():
    plt.rcParams.update({
        "svg.hashsalt": STYLE_VERSION,
        "svg.fonttype": "none",
        "figure.figsize": (6.4, 4.2),
        "figure.dpi": 120,
        "font.size": 10,
        "axes.grid": True,
        "grid.alpha": 0.3,
    })


def _read_rows(path: Path, expected_header: list[str]) -> list[dict]:
    if not path.exists():
        raise RenderError(f"input CSV not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path.name}: file is empty") from None
        missing = [c for c in expected_header if c not in header]
        extra = [c for c in header if c not in expected_header]
        if missing or extra:
            raise SchemaError(
                f"{path.name}: header mismatch"
                + (f", missing columns {missing}" if missing else "")
                + (f", unexpected columns {extra}" if extra else ""))
        rows = [dict(zip(header, row)) for row in reader if row]
    if not rows:
        raise SchemaError(f"{path.name}: no data rows")
    return rows


def _by_case(rows: list[dict]) -> dict[str, list[dict]]:
    grouped: dict[str, list[dict]] = {}
    for row in rows:
        grouped.setdefault(row["case"], []).append(row)
    return grouped


def _floats(rows: list[dict], column: str) -> list[float]:
    return [float(r[column]) for r in rows]


def _plot_iv(ax, grouped):
    for case, rows in grouped.items():
        style = CASE_STYLE.get(case, {"label": case})
        ax.plot([v * 1e3 for v in _floats(rows, "v_d_V")],
                [i * 1e9 for i in _floats(rows, "i_total_A")], **style)
    ax.set_xlabel("V_D (mV)")
    ax.set_ylabel("I_D (nA)")


def _plot_vout(ax, grouped):
    for case, rows in grouped.items():
        style = CASE_STYLE.get(case, {"label": case})
        ax.plot([v * 1e3 for v in _floats(rows, "v_d_V")],
                [v * 1e3 for v in _floats(rows, "v_out_V")], **style)
    ax.set_xlabel("V_D (mV)")
    ax.set_ylabel("V_out (mV)")


def _plot_metrics(axes, grouped):
    ax_count, ax_tdec = axes
    for case, rows in grouped.items():
        style = CASE_STYLE.get(case, {"label": case})
        delta_mev = [d * 1e3 for d in _floats(rows, "delta_eV")]
        ax_count.plot(delta_mev, _floats(rows, "count"), **style)
        ax_tdec.plot(delta_mev, _floats(rows, "t_dec_s"), **style)
    ax_count.axhline(100.0, color="gray", linewidth=0.8, linestyle=":")
    ax_count.set_ylabel("t_dec / t_meas")
    ax_count.set_yscale("log")
    ax_tdec.set_ylabel("t_dec (s)")
    ax_tdec.set_yscale("log")
    ax_tdec.set_xlabel("Zeeman splitting (meV)")


def render(job: PlotJob) -> Path:
    """Render one CSV into one image; returns the written path.

    Validates the schema before touching the output location, so a bad
    input never leaves a file behind.
    """
    header, kind = FAMILIES[job.family]
    rows = _read_rows(job.input_csv, header)
    grouped = _by_case(rows)

    _deterministic_rc()
    if kind == "metrics":
        fig, axes = plt.subplots(2, 1, sharex=True)
        _plot_metrics(axes, grouped)
        axes[0].set_title(job.figure_id)
        axes[0].legend(loc="best", fontsize=8)
    else:
        fig, ax = plt.subplots()
        if kind == "vout":
            _plot_vout(ax, grouped)
        else:
            _plot_iv(ax, grouped)
        ax.set_title(job.figure_id)
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    job.output_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(job.output_path, format=job.image_format,
                metadata={"Date": None} if job.image_format == "svg" else None)
    plt.close(fig)
    return job.output_path


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def render_all(manifest_path: Path | str, outdir: Path | str,
               image_format: str = "svg") -> list[Path]:
    """Render every CSV a manifest lists, after verifying all checksums.

    Any checksum mismatch aborts before anything is rendered.  An empty
    file list is a no-op success.  The choice between the current-voltage
    and output-voltage view of circuit families follows the figure id
    recorded in the manifest (fig7 presets show V_out).
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.exists():
        raise RenderError(f"manifest not found: {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RenderError(f"manifest is not valid JSON: {exc}") from exc

    entries = manifest.get("files", [])
    base = manifest_path.parent
    for entry in entries:
        path = base / entry["name"]
        if not path.exists():
            raise ChecksumError(f"{entry['name']}: listed in manifest but missing")
        digest = _sha256(path)
        if digest != entry["sha256"]:
            raise ChecksumError(
                f"{entry['name']}: checksum mismatch "
                f"(manifest {entry['sha256'][:12]}..., file {digest[:12]}...)")

    figure_id = manifest.get("figure_id") or manifest.get("name", "run")
    outdir = Path(outdir)
    written: list[Path] = []
    for entry in entries:
        family = entry.get("family", "iv")
        if family == "circuit" and str(figure_id).startswith("fig7"):
            family = "vout"
        stem = Path(entry["name"]).stem
        job = PlotJob(
            input_csv=base / entry["name"],
            figure_id=str(figure_id),
            output_path=outdir / f"{stem}.{image_format}",
            family=family,
            image_format=image_format,
        )
        written.append(render(job))
    return written
