"""Renderers for the experiment tables: one figure per spec.

Five atomic kinds mirror the tables (measured data, filter responses,
reconstruction overlay, descent traces, operator heatmap); `row` composes
the four panels of a full experiment row: reconstruction, true error on a
log axis with the Tikhonov baseline as a broken line, the squared update
norms, and the final operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import matplotlib.pyplot as plt

from .csvio import Table, read_table

# input tables per kind, in --in order
FIGURE_KINDS = {
    "data_plot": ("data",),
    "filter_response": ("filters",),
    "reconstruction": ("recon",),
    "trace": ("trace", "recon"),
    "b_heatmap": ("b_opt",),
    "row": ("trace", "recon", "b_opt"),
}

# strip volatile metadata so identical inputs give identical bytes
_PNG_METADATA = {"Software": None}


@dataclass
class FigureSpec:
    kind: str
    inputs: list[str]
    outpath: str
    dpi: int = 120

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ValueError(
                f"unknown figure kind {self.kind!r}; choose from {sorted(FIGURE_KINDS)}"
            )
        expected = FIGURE_KINDS[self.kind]
        if self.kind == "trace":
            if len(self.inputs) not in (1, 2):
                raise ValueError("trace takes the trace table and optionally the recon table")
        elif len(self.inputs) != len(expected):
            raise ValueError(
                f"{self.kind} takes {len(expected)} input table(s) {expected}, "
                f"got {len(self.inputs)}"
            )


def _tikhonov_error(recon: Table) -> float:
    recon.require("x_dagger", "x_tikhonov")
    return float(np.linalg.norm(recon.column("x_tikhonov") - recon.column("x_dagger")))


def _panel_reconstruction(ax, recon: Table):
    recon.require("t", "x_dagger", "x_tikhonov", "x_bopt")
    t = recon.column("t")
    ax.plot(t, recon.column("x_dagger"), color="black", lw=1.0, label="truth")
    ax.plot(t, recon.column("x_tikhonov"), color="tab:orange", ls="--", lw=1.2,
            label="Tikhonov")
    ax.plot(t, recon.column("x_bopt"), color="tab:blue", lw=1.2, label="optimized B")
    ax.set_xlabel("t")
    ax.legend(fontsize=8)
    ax.set_title("reconstruction")


def _panel_error(ax, trace: Table, baseline: float | None):
    trace.require("iter", "true_error")
    it = trace.column("iter")
    ax.semilogy(it, trace.column("true_error"), color="tab:blue", lw=1.2)
    if baseline is not None:
        ax.axhline(baseline, color="tab:orange", ls="--", lw=1.2, label="Tikhonov")
        ax.legend(fontsize=8)
    ax.set_xlabel("weight updates")
    ax.set_title("true error")


def _panel_frob(ax, trace: Table):
    trace.require("iter", "frob_sq")
    ax.plot(trace.column("iter"), trace.column("frob_sq"), color="tab:green", lw=1.2)
    ax.set_xlabel("weight updates")
    ax.set_title("squared update norm")


def _panel_heatmap(ax, fig, b: Table):
    im = ax.imshow(b.data, aspect="equal", cmap="viridis")
    fig.colorbar(im, ax=ax, fraction=0.046)
    ax.set_title("final operator")


def _render_data_plot(fig, data: Table):
    data.require("t", "ax_dagger", "y_delta")
    ax = fig.subplots()
    t = data.column("t")
    ax.plot(t, data.column("y_delta"), color="tab:blue", lw=0.8, label="measured")
    ax.plot(t, data.column("ax_dagger"), color="black", lw=1.4, label="noise free")
    ax.set_xlabel("t")
    ax.legend(fontsize=8)
    ax.set_title("data")


_FAMILY_STYLE = {"tikhonov": "--", "tsvd": ":", "soft_tsvd": "-"}


def _render_filter_response(fig, filters: Table):
    filters.require("sigma")
    ax = fig.subplots()
    sigma = filters.column("sigma")
    for name in filters.header:
        if name == "sigma":
            continue
        family = name.rsplit("_", 1)[0]
        ax.plot(sigma, filters.column(name), ls=_FAMILY_STYLE.get(family, "-"),
                lw=1.2, label=name)
    ax.set_xscale("log")
    ax.set_xlabel("sigma")
    ax.set_ylabel("filter value")
    ax.legend(fontsize=7)
    ax.set_title("filter response")


def render(spec: FigureSpec) -> str:
    """Render one figure to spec.outpath and return the path.

    Inputs are read only; rendering twice from identical inputs writes
    identical bytes (volatile PNG metadata is stripped).
    """
    tables = [read_table(p) for p in spec.inputs]

    if spec.kind == "row":
        fig = plt.figure(figsize=(16, 3.6))
        axes = fig.subplots(1, 4)
        trace, recon, b_opt = tables
        _panel_reconstruction(axes[0], recon)
        _panel_error(axes[1], trace, _tikhonov_error(recon))
        _panel_frob(axes[2], trace)
        _panel_heatmap(axes[3], fig, b_opt)
    elif spec.kind == "trace":
        fig = plt.figure(figsize=(8, 3.6))
        axes = fig.subplots(1, 2)
        baseline = _tikhonov_error(tables[1]) if len(tables) == 2 else None
        _panel_error(axes[0], tables[0], baseline)
        _panel_frob(axes[1], tables[0])
    elif spec.kind == "reconstruction":
        fig = plt.figure(figsize=(5, 3.6))
        _panel_reconstruction(fig.subplots(), tables[0])
    elif spec.kind == "b_heatmap":
        fig = plt.figure(figsize=(4.6, 3.8))
        _panel_heatmap(fig.subplots(), fig, tables[0])
    elif spec.kind == "data_plot":
        fig = plt.figure(figsize=(5, 3.6))
        _render_data_plot(fig, tables[0])
    else:  # filter_response
        fig = plt.figure(figsize=(5.4, 3.8))
        _render_filter_response(fig, tables[0])

    fig.tight_layout()
    try:
        metadata = _PNG_METADATA if spec.outpath.lower().endswith(".png") else None
        fig.savefig(spec.outpath, dpi=spec.dpi, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.outpath
