"""Delimited output, JSON reports, and matplotlib figures.

Reports never embed timestamps and SVG output is salted deterministically, so
identical configs (and seeds) reproduce byte-identical artifacts.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "apxlat"

import matplotlib.pyplot as plt

from .cutproject import ModelSet
from .scalars import PScaled, padic_valuation


def write_json(path, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def model_set_rows(ms: ModelSet):
    """(physical_exact, internal_exact, physical_float, internal_float) rows.

    The float columns are plotting companions only; for p-adic internal values
    the float column carries the valuation exponent.
    """
    fmt = ms.scheme.ambient.fmt
    padic_internal = ms.scheme.window.kind == "padic_ball"
    rows = []
    for element, internal in ms.pairs:
        if padic_internal:
            v = padic_valuation(internal, ms.scheme.window.p)
            internal_float = 0.0 if v is None else float(-v)
        else:
            internal_float = float(internal)
        try:
            physical_float = float(element)
        except TypeError:
            physical_float = float(ms.scheme.ambient.size_gauge(element))
        rows.append((fmt(element), str(internal), physical_float, internal_float))
    return rows


def write_model_set_csv(path, ms: ModelSet) -> None:
    lines = ["physical_exact,internal_exact,physical_float,internal_float"]
    for pe, ie, pf, if_ in model_set_rows(ms):
        lines.append(f"{pe},{ie},{pf!r},{if_!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _savefig(fig, path):
    fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
    plt.close(fig)


def render_model_set_figure(path, ms: ModelSet) -> bool:
    """Tick marks plus the physical/internal scatter for one-dimensional
    physical sides; matrix schemes get no figure (CSV only)."""
    if ms.scheme.window.kind == "matrix_ball":
        return False
    rows = model_set_rows(ms)
    xs = [r[2] for r in rows]
    ys = [r[3] for r in rows]
    fig, (ax_ticks, ax_scatter) = plt.subplots(
        2, 1, figsize=(10, 4), height_ratios=[1, 3], sharex=True
    )
    ax_ticks.vlines(xs, 0, 1, colors="tab:blue", linewidth=0.8)
    ax_ticks.set_yticks([])
    ax_ticks.set_title(f"{ms.scheme.name}: {len(rows)} points, range {ms.range}")
    ax_scatter.scatter(xs, ys, s=6, color="tab:orange")
    ax_scatter.set_xlabel("physical")
    ylabel = (
        "internal valuation" if ms.scheme.window.kind == "padic_ball" else "internal"
    )
    ax_scatter.set_ylabel(ylabel)
    fig.tight_layout()
    _savefig(fig, path)
    return True


def render_gap_figure(path, gap_alphabet, min_gap, covering_radius) -> bool:
    if not gap_alphabet:
        return False
    fig, ax = plt.subplots(figsize=(6, 3))
    vals = [float(g) for g in gap_alphabet]
    ax.bar(range(len(vals)), vals, color="tab:green", width=0.5)
    ax.set_xticks(range(len(vals)))
    ax.set_xticklabels([f"{v:.6g}" for v in vals], rotation=30)
    ax.set_ylabel("gap length")
    ax.set_title(
        f"gap alphabet ({len(vals)} values); min gap {float(min_gap):.6g}, "
        f"covering radius {float(covering_radius):.6g}"
    )
    fig.tight_layout()
    _savefig(fig, path)
    return True


def fraction_str(x) -> str:
    if isinstance(x, PScaled):
        x = x.value
    return str(Fraction(x))
