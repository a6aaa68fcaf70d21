"""Closed-form curve data for the four standard plots.

Figure 1: per-row cross-validation error of the oracle vs the memorizer.
Figure 2: best-case instability rate for k = 1, 3, 5, infinity.
Figure 3: worst-case instability rate for k = 1, 3, 5, infinity.
Figure 4: average-case (mixed geometry) instability of m_3 vs m_1.

Curves are emitted as long-format CSV (p, series, value) on a p grid of
step 0.01, and can optionally be rendered to PNG files.
"""

from __future__ import annotations

import csv
import math
import os

import numpy as np

from .decomposition import p_alpha, p_beta
from .stability import (
    best_case_Pk,
    flip_rate,
    theorem15_instability,
    worst_case_Pk,
)

P_GRID = [round(i * 0.01, 2) for i in range(101)]

FIGURE_SERIES = {
    1: ["p_alpha", "p_beta"],
    2: ["inst_best_k1", "inst_best_k3", "inst_best_k5", "inst_best_kinf"],
    3: ["inst_worst_k1", "inst_worst_k3", "inst_worst_k5", "inst_worst_kinf"],
    4: ["inst_avg_m1", "inst_avg_m3"],
}


def _series_value(name: str, p: float) -> float:
    if name == "p_alpha":
        return p_alpha(p)
    if name == "p_beta":
        return p_beta(p)
    if name.startswith("inst_best_k"):
        k = math.inf if name.endswith("inf") else int(name.rsplit("k", 1)[1])
        return flip_rate(best_case_Pk(k, p))
    if name.startswith("inst_worst_k"):
        k = math.inf if name.endswith("inf") else int(name.rsplit("k", 1)[1])
        return flip_rate(worst_case_Pk(k, p))
    if name == "inst_avg_m1":
        return 2.0 * p - 2.0 * p * p
    if name == "inst_avg_m3":
        return theorem15_instability(2, p) / 2.0  # per-row rate
    raise ValueError(f"unknown series {name!r}")


def curve_rows(figures=(1, 2, 3, 4)) -> list[tuple[float, str, float]]:
    """(p, series, value) rows for the requested figures."""
    rows = []
    for fig in figures:
        for name in FIGURE_SERIES[fig]:
            for p in P_GRID:
                rows.append((p, name, _series_value(name, p)))
    return rows


def write_curves_csv(path_or_file, figures=(1, 2, 3, 4), comments=None) -> None:
    close = False
    if isinstance(path_or_file, (str, bytes)):
        fh = open(path_or_file, "w", newline="")
        close = True
    else:
        fh = path_or_file
    try:
        for line in comments or []:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["p", "series", "value"])
        for p, name, value in curve_rows(figures):
            writer.writerow([p, name, repr(value)])
    finally:
        if close:
            fh.close()


def read_curves_csv(path) -> dict[str, dict[float, float]]:
    """Parse a curves CSV back into {series: {p: value}}."""
    out: dict[str, dict[float, float]] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(
            row for row in fh if not row.startswith("#")
        )
        header = next(reader)
        assert header == ["p", "series", "value"]
        for p, name, value in reader:
            out.setdefault(name, {})[float(p)] = float(value)
    return out


_FIGURE_TITLES = {
    1: "Cross-validation error rate: oracle vs memorizer",
    2: "Best-case instability rate by neighborhood size",
    3: "Worst-case instability rate by neighborhood size",
    4: "Average-case instability rate: m_1 vs m_3",
}


def render_figures(outdir, figures=(1, 2, 3, 4)) -> list[str]:
    """Render each figure's series to a PNG next to the CSV output."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    paths = []
    ps = np.array(P_GRID)
    for fig_num in figures:
        fig, ax = plt.subplots(figsize=(6, 4))
        for name in FIGURE_SERIES[fig_num]:
            values = [_series_value(name, p) for p in ps]
            ax.plot(ps, values, label=name)
        ax.set_xlabel("p (noise rate)")
        ax.set_ylabel("rate per row")
        ax.set_title(_FIGURE_TITLES[fig_num])
        ax.legend()
        ax.grid(True, alpha=0.3)
        path = os.path.join(outdir, f"figure{fig_num}.png")
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        paths.append(path)
    return paths
