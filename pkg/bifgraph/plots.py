"""Bifurcation diagrams and contour plots (matplotlib, Agg backend)."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .models import Branch  # noqa: E402
from .selection import schematic  # noqa: E402

LOGGER = logging.getLogger(__name__)

GRAY_CUTOFF = 1e-3
MIN_AREA = 12.0
MAX_AREA = 600.0
# disk area per unit |u_i|
AREA_SCALE = 300.0

_LINESTYLES = ["-", "--", ":", "-."]

matplotlib.rcParams["svg.hashsalt"] = "bifgraph"


@dataclass
class DiagramSeries:
    """Polyline (s, y) of one branch with MI and symmetry per vertex."""

    branch_id: int
    symmetry: int
    s: List[float] = field(default_factory=list)
    y: List[float] = field(default_factory=list)
    mi: List[int] = field(default_factory=list)


def diagram_series(branches: Sequence[Branch], mother_of: Dict[int, int],
                   weights: Optional[np.ndarray] = None) -> List[DiagramSeries]:
    """One series per branch; daughter branches start at their bifurcation point.

    ``mother_of`` maps a bifurcation record id to the branch that ends at it.
    """

    by_id = {b.id: b for b in branches}
    series = []
    for branch in branches:
        item = DiagramSeries(branch.id, branch.symmetry)
        points = list(branch.points)
        mother = by_id.get(mother_of.get(branch.parent, -1))
        if mother is not None and mother.points and points:
            start = mother.points[-1]
            # continuation pieces of a split mother already begin at the bifurcation point
            if start.s != points[0].s or not np.allclose(start.u, points[0].u, atol=1e-12):
                points.insert(0, start)
        for p in points:
            item.s.append(p.s)
            item.y.append(schematic(p.u, weights))
            item.mi.append(p.signature)
        series.append(item)
    return series


def write_diagram_data(series: Sequence[DiagramSeries], path: str | Path) -> None:
    lines = ["branch s y mi symmetry"]
    for item in series:
        for s, y, mi in zip(item.s, item.y, item.mi):
            lines.append(f"{item.branch_id} {s:.15g} {y:.15g} {mi} {item.symmetry}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _save(fig, path: Path, fmt: str) -> None:
    fig.savefig(path, format=fmt, metadata={"Date": None} if fmt == "svg" else None, bbox_inches="tight")
    plt.close(fig)


def diagram_plot(series: Sequence[DiagramSeries], bifurcations: Sequence[Tuple[float, float]],
                 path: str | Path, fmt: str = "svg", title: str = "") -> Path:
    """y(u) against s; line style and colour follow the Morse index."""

    path = Path(path)
    fig, ax = plt.subplots(figsize=(8, 6))
    cmap = plt.get_cmap("tab10")
    for item in series:
        s = np.asarray(item.s)
        y = np.asarray(item.y)
        mi = np.asarray(item.mi)
        start = 0
        # draw maximal runs of constant MI
        for stop in list(np.flatnonzero(np.diff(mi)) + 1) + [len(mi)]:
            run = slice(max(start - 1, 0), stop)
            ax.plot(s[run], y[run], linestyle=_LINESTYLES[mi[start] % len(_LINESTYLES)],
                    color=cmap(mi[start] % 10), linewidth=1.0)
            start = stop
    if bifurcations:
        bs, by = zip(*bifurcations)
        ax.plot(bs, by, "o", color="black", markersize=3)
    ax.set_xlabel("s")
    ax.set_ylabel("y(u)")
    if title:
        ax.set_title(title)
    _save(fig, path, fmt)
    LOGGER.info("[RENDER] diagram with %d branches -> %s", len(series), path)
    return path


def area_scale(vectors: Sequence[np.ndarray]) -> float:
    """Scale that gives the largest entry over ``vectors`` an area of MAX_AREA."""

    top = max((float(np.abs(np.asarray(u, dtype=float)).max(initial=0.0)) for u in vectors), default=0.0)
    return MAX_AREA / top if top > 0.0 else AREA_SCALE


def contour_disks(u: np.ndarray, cutoff: float = GRAY_CUTOFF,
                  scale: float = AREA_SCALE) -> Tuple[List[str], np.ndarray]:
    """Disk colours and areas: area = scale·|u_i|, gray below cutoff·max|u|.

    Areas use a fixed scale so contour plots sharing it are comparable;
    see :func:`area_scale`.
    """

    u = np.asarray(u, dtype=float)
    top = float(np.abs(u).max(initial=0.0))
    limit = cutoff * top
    colors = []
    areas = np.full(len(u), MIN_AREA)
    for i, value in enumerate(u):
        if top == 0.0 or abs(value) <= limit:
            colors.append("gray")
            continue
        colors.append("white" if value > 0 else "black")
        areas[i] = max(MIN_AREA, scale * abs(value))
    return colors, areas


def contour_plot(u: np.ndarray, coords: np.ndarray, edges: Sequence[Tuple[int, int]], path: str | Path,
                 fmt: str = "svg", title: str = "", scale: float = AREA_SCALE) -> Path:
    """Edges under disks; white for u_i > 0, black for u_i < 0, gray near zero."""

    path = Path(path)
    coords = np.asarray(coords, dtype=float)
    colors, areas = contour_disks(u, scale=scale)
    fig, ax = plt.subplots(figsize=(6, 6))
    for i, j in edges:
        a, b = coords[i - 1], coords[j - 1]
        ax.plot([a[0], b[0]], [a[1], b[1]], color="0.6", linewidth=0.8, zorder=1)
    ax.scatter(coords[:, 0], coords[:, 1], s=areas, c=colors, edgecolors="black", linewidths=0.6, zorder=2)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=8)
    _save(fig, path, fmt)
    return path
