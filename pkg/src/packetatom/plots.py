"""Optional SVG rendering of scenario results.

Figures are built from the already-formatted CSV text so they show exactly
what the artifacts contain.  Output is deterministic: fixed hash salt, no
embedded timestamps.
"""

from __future__ import annotations

import io

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams["svg.hashsalt"] = "packetatom"

LINE_PLOTS = {
    "fig1": ("fig1.csv", "t", "ground probability", "linear"),
    "fig2": ("fig2.csv", "t", "decay rate", "linear"),
    "fig3": ("fig3.csv", "t", "excited probability", "linear"),
    "fig4": ("fig4.csv", "omega", "spectral density", "log"),
    "fig5": ("fig5.csv", "omega", "spectral ratio", "linear"),
}


def _columns(csv: str):
    lines = csv.strip().split("\n")
    names = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return names, rows


def _numeric(rows, j) -> np.ndarray:
    return np.array([float(r[j]) for r in rows])


def _to_svg(fig) -> str:
    buf = io.BytesIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue().decode("utf-8")


def _line_figure(csv: str, xlabel: str, ylabel: str, yscale: str):
    names, rows = _columns(csv)
    x = _numeric(rows, 0)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for j, name in enumerate(names[1:], start=1):
        y = _numeric(rows, j)
        ok = np.isfinite(y)
        ax.plot(x[ok], y[ok], lw=1.2, label=name)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_yscale(yscale)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def _bar_figure(labels, values, ylabel: str):
    fig, ax = plt.subplots(figsize=(6.8, 4.2))
    pos = np.arange(len(labels))
    ax.bar(pos, values, color="#4878a8")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xticks(pos)
    ax.set_xticklabels(labels, rotation=40, ha="right", fontsize=7)
    ax.set_ylabel(ylabel)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    return fig


def render(name: str, result) -> dict:
    """SVG files for one scenario result, keyed by file name."""
    if name in LINE_PLOTS:
        csv_name, xlabel, ylabel, yscale = LINE_PLOTS[name]
        fig = _line_figure(result.files[csv_name], xlabel, ylabel, yscale)
    elif name == "semiclassical-table":
        names, rows = _columns(result.files["semiclassical_table.csv"])
        fig = _bar_figure([r[0] for r in rows], _numeric(rows, 3),
                          "relative deviation from reference")
    elif name == "shift-table":
        names, rows = _columns(result.files["shift_table.csv"])
        fig = _bar_figure([r[0] for r in rows], _numeric(rows, 1),
                          "excited-probability shift")
        fig.axes[0].set_yscale("symlog", linthresh=1e-3)
    else:
        names, rows = _columns(result.files["scaling_check.csv"])
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        x = _numeric(rows, 0)
        for j, label in enumerate(names[1:], start=1):
            y = _numeric(rows, j)
            ok = np.isfinite(y)
            ax.loglog(x[ok], y[ok], "o-", label=label)
        ax.set_xlabel("ring length")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
        fig.tight_layout()
    stem = name.replace("-", "_")
    return {stem + ".svg": _to_svg(fig)}
