"""Matplotlib rendering of control charts and bias/MSE curves to files.

SVG output is byte-deterministic: element ids are salted with a fixed
string and the creation date is stripped, so golden-file comparison works.
Every limit line carries an SVG group id of the form ``<limit>-n<size>``
(one line per limit per distinct subgroup size).
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .charts import ChartReport
from .estimators import ESTIMATOR_NAMES

__all__ = ["save_chart_figure", "save_theory_figure"]

_SVG_SALT = "geomchart"

_LIMIT_STYLE = {
    "ucl": {"color": "firebrick", "linestyle": "--", "linewidth": 1.2},
    "cl": {"color": "seagreen", "linestyle": "-", "linewidth": 1.2},
    "lcl": {"color": "firebrick", "linestyle": "--", "linewidth": 1.2},
}

_ESTIMATOR_STYLE = {
    "p_b": {"linestyle": "--"},
    "p_mvu": {"linestyle": "-"},
    "p_ml": {"linestyle": "-."},
}


def _save(fig, path) -> None:
    path = Path(path)
    with plt.rc_context({"svg.hashsalt": _SVG_SALT}):
        if path.suffix.lower() == ".svg":
            fig.savefig(path, metadata={"Date": None})
        else:
            fig.savefig(path)
    plt.close(fig)


def save_chart_figure(
    report: ChartReport,
    path,
    title: str | None = None,
    xlabel: str | None = None,
    ylabel: str | None = None,
) -> None:
    """Draw a control chart: stepped limits per subgroup, the plotted
    statistic as a connected series, and out-of-control points flagged."""
    fig, ax = plt.subplots(figsize=(8, 4.5))

    sizes = sorted({pt.n for pt in report.points})
    for limit in ("ucl", "cl", "lcl"):
        for n_k in sizes:
            xs: list[float] = []
            ys: list[float] = []
            for pt in report.points:
                if pt.n != n_k:
                    continue
                xs += [pt.index - 0.5, pt.index + 0.5, math.nan]
                ys += [getattr(pt, limit)] * 2 + [math.nan]
            (line,) = ax.plot(xs, ys, **_LIMIT_STYLE[limit])
            line.set_gid(f"{limit}-n{n_k}")

    xs = [pt.index for pt in report.points]
    values = [pt.value for pt in report.points]
    (series,) = ax.plot(xs, values, color="steelblue", linewidth=1.0, zorder=2)
    series.set_gid("points-line")

    ok = [pt for pt in report.points if pt.status == "in_control"]
    bad = [pt for pt in report.points if pt.status != "in_control"]
    dots = ax.scatter(
        [pt.index for pt in ok], [pt.value for pt in ok],
        color="steelblue", s=25, zorder=3,
    )
    dots.set_gid("points-ok")
    if bad:
        flags = ax.scatter(
            [pt.index for pt in bad], [pt.value for pt in bad],
            color="firebrick", marker="s", s=35, zorder=3,
        )
        flags.set_gid("points-flagged")

    ax.set_xticks(xs)
    ax.set_xlabel(xlabel or "subgroup")
    ax.set_ylabel(ylabel or report.statistic.replace("_", " "))
    ax.set_title(title or f"{report.kind} chart ({report.basis} basis)")
    fig.tight_layout()
    _save(fig, path)


def save_theory_figure(rows: list[dict], path, title: str | None = None) -> None:
    """Two stacked panels: exact bias and exact MSE of each estimator as a
    function of p, one curve per (estimator, N)."""
    fig, (ax_bias, ax_mse) = plt.subplots(2, 1, figsize=(7, 8), sharex=True)

    n_values = sorted({row["N"] for row in rows})
    colors = {n: f"C{i}" for i, n in enumerate(n_values)}
    for n_obs in n_values:
        for name in ESTIMATOR_NAMES:
            pts = [r for r in rows if r["N"] == n_obs and r["estimator"] == name]
            if not pts:
                continue
            pts.sort(key=lambda r: r["p"])
            ps = [r["p"] for r in pts]
            style = dict(color=colors[n_obs], **_ESTIMATOR_STYLE[name])
            (line,) = ax_bias.plot(ps, [r["bias"] for r in pts],
                                   label=f"{name}, N={n_obs}", **style)
            line.set_gid(f"bias-{name}-N{n_obs}")
            (line,) = ax_mse.plot(ps, [r["mse"] for r in pts], **style)
            line.set_gid(f"mse-{name}-N{n_obs}")

    ax_bias.axhline(0.0, color="gray", linewidth=0.8)
    ax_bias.set_ylabel("bias")
    ax_bias.legend(fontsize=8, ncol=len(n_values))
    ax_mse.set_ylabel("MSE")
    ax_mse.set_xlabel("p")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    _save(fig, path)
