"""Figure builders: gain-vs-N comparison lines and coupling sweep panels."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .csvio import SchemaError, read_csv, require_columns, varphi_label

MODEL_STYLE = {
    "ideal": {"color": "tab:blue", "marker": "o"},
    "dc": {"color": "tab:orange", "marker": "s"},
    "baseline": {"color": "tab:green", "marker": "^"},
}


@dataclass
class FigureSpec:
    inputs: list[str]
    output: str
    kind: str = "gain_vs_N"
    use_db: bool = True
    xlabel: str | None = None
    ylabel: str | None = None
    title: str | None = None


def _gain_series(spec: FigureSpec) -> dict[str, list[tuple[int, float]]]:
    value_col = "gain_db" if spec.use_db else "gain_linear"
    series: dict[str, list[tuple[int, float]]] = {}
    for path in spec.inputs:
        columns, rows, _ = read_csv(path)
        require_columns(columns, ("model", "N", value_col), path)
        for row in rows:
            if row.get("error"):
                continue
            series.setdefault(row["model"], []).append(
                (int(row["N"]), float(row[value_col]))
            )
    if not series:
        raise SchemaError(f"{spec.inputs}: no usable data rows")
    return {model: sorted(points) for model, points in series.items()}


def plot_gain_vs_n(spec: FigureSpec) -> str:
    """One line per PA model; x is the antenna count."""
    series = _gain_series(spec)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for model, points in series.items():
        ns = [p[0] for p in points]
        ys = [p[1] for p in points]
        style = MODEL_STYLE.get(model, {})
        ax.plot(ns, ys, label=model, markersize=5, linewidth=1.4, **style)
    ax.set_xlabel(spec.xlabel or "Number of PAs")
    ax.set_ylabel(spec.ylabel or ("Channel gain (dB)" if spec.use_db else "Channel gain"))
    if spec.title:
        ax.set_title(spec.title)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    Path(spec.output).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
    return spec.output


def plot_kappa_sweep(spec: FigureSpec) -> str:
    """Two panels per input file: amplitudes and phases over the coupling."""
    fig, (ax_amp, ax_ph) = plt.subplots(1, 2, figsize=(9.5, 4.0))
    plotted = False
    for path in spec.inputs:
        columns, rows, comments = read_csv(path)
        require_columns(
            columns, ("kappa", "amp1", "amp2", "phase1_deg", "phase2_deg"), path
        )
        if not rows:
            continue
        plotted = True
        label = varphi_label(comments, Path(path).stem)
        kappa = [float(r["kappa"]) for r in rows]
        ax_amp.plot(kappa, [float(r["amp1"]) for r in rows], label=f"through, {label}")
        ax_amp.plot(
            kappa, [float(r["amp2"]) for r in rows], linestyle="--",
            label=f"radiated, {label}",
        )
        ax_ph.plot(kappa, [float(r["phase1_deg"]) for r in rows], label=f"through, {label}")
        ax_ph.plot(
            kappa, [float(r["phase2_deg"]) for r in rows], linestyle="--",
            label=f"radiated, {label}",
        )
    if not plotted:
        raise SchemaError(f"{spec.inputs}: no usable data rows")
    ax_amp.set_xlabel("Coupling coefficient")
    ax_amp.set_ylabel("Amplitude")
    ax_ph.set_xlabel("Coupling coefficient")
    ax_ph.set_ylabel("Phase (deg)")
    for ax in (ax_amp, ax_ph):
        ax.grid(True, alpha=0.4)
        ax.legend(fontsize=8)
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    Path(spec.output).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
    return spec.output
