"""Force-directed planar layouts.

Every vertex repels every other vertex with magnitude Q²/(ε + d^D) and each
edge acts as a spring of natural length ν. Positions follow the force field
with a fixed step δ until the largest force drops below tolerance. Among
several random restarts the layout with the fewest distinct pairwise
distances wins.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import pdist

from .errors import MissingArtifactError, ParseError
from .models import Graph, Layout

LOGGER = logging.getLogger(__name__)


@dataclass
class ForceParams:
    charge: float = 1.0  # Q²
    epsilon: float = 0.001
    spring_length: float = 1.0  # ν
    exponent: float = 1.1  # D
    step: float = 0.1  # δ
    force_tol: float = 1e-6
    max_iterations: int = 20000
    max_move: float = 0.5

    @classmethod
    def from_section(cls, section: dict) -> "ForceParams":
        known = cls.__dataclass_fields__
        return cls(**{k: v for k, v in section.items() if k in known})


def forces(coords: np.ndarray, adj: np.ndarray, params: ForceParams) -> np.ndarray:
    """Net force E_i + H_i on every vertex."""

    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    np.fill_diagonal(dist, 1.0)
    unit = diff / dist[:, :, None]
    repel = params.charge / (params.epsilon + dist ** params.exponent)
    np.fill_diagonal(repel, 0.0)
    spring = np.where(adj, params.spring_length - dist, 0.0)
    return ((repel + spring)[:, :, None] * unit).sum(axis=1)


def relax(coords: np.ndarray, adj: np.ndarray, params: ForceParams,
          fixed_y: Optional[np.ndarray] = None) -> Tuple[np.ndarray, bool]:
    """Damped gradient stepping; returns (coords, converged)."""

    coords = coords.copy()
    for _ in range(params.max_iterations):
        force = forces(coords, adj, params)
        if fixed_y is not None:
            force[:, 1] = 0.0
        norms = np.sqrt((force ** 2).sum(axis=1))
        if norms.max(initial=0.0) < params.force_tol:
            return coords, True
        move = params.step * force
        lengths = params.step * norms
        scale = np.minimum(1.0, params.max_move / np.maximum(lengths, 1e-300))
        coords += move * scale[:, None]
    return coords, False


def complexity(coords: np.ndarray) -> int:
    if len(coords) < 2:
        return 0
    return int(np.unique(np.round(pdist(coords), 6)).size)


def level_edges(coords: np.ndarray, edges: Sequence[Tuple[int, int]]) -> np.ndarray:
    """Rotate so the most common edge direction is horizontal, then center.

    Edge directions are counted in both orientations into 360 one-degree
    buckets; the mean angle of the fullest bucket is rotated to zero.
    """

    coords = coords - coords.mean(axis=0)
    if not edges:
        return coords
    idx = np.asarray(edges) - 1
    d = coords[idx[:, 1]] - coords[idx[:, 0]]
    theta = np.degrees(np.arctan2(d[:, 1], d[:, 0])) % 360.0
    angles = np.concatenate([theta, (theta + 180.0) % 360.0])
    buckets = np.floor(angles).astype(int) % 360
    counts = np.bincount(buckets, minlength=360)
    top = int(np.argmax(counts))
    angle = np.radians(angles[buckets == top].mean())
    rot = np.array([[np.cos(angle), np.sin(angle)], [-np.sin(angle), np.cos(angle)]])
    return coords @ rot.T


def _one_restart(graph: Graph, params: ForceParams, seed: int, idx: int) -> Layout:
    rng = np.random.default_rng([seed, idx])
    start = rng.uniform(-1.0, 1.0, size=(graph.n, 2)) * np.sqrt(max(graph.n, 1))
    coords, converged = relax(start, graph.adjacency, params)
    coords = level_edges(coords, graph.edges)
    return Layout(coords=coords, complexity=complexity(coords), seed_index=idx, converged=converged)


def spring_layout(graph: Graph, restarts: int = 10, seed: int = 1,
                  params: Optional[ForceParams] = None, threads: int = 1) -> Layout:
    """Best of ``restarts`` force-directed layouts, alternates attached."""

    params = params or ForceParams()
    restarts = max(int(restarts), 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda i: _one_restart(graph, params, seed, i), range(restarts)))
    else:
        results = [_one_restart(graph, params, seed, i) for i in range(restarts)]

    converged = [r for r in results if r.converged]
    pool_ = converged or results
    ranked = sorted(pool_, key=lambda r: (r.complexity, r.seed_index))
    best = ranked[0]
    best.alternates = ranked[1:]
    if not converged:
        LOGGER.warning("[LAYOUT] no restart converged; returning best-effort layout")
    LOGGER.info(
        "[LAYOUT] %s: complexity %d from restart %d (%d/%d converged)",
        graph.name or "graph", best.complexity, best.seed_index, len(converged), restarts,
    )
    return best


def digraph_layout(ranks: Dict[int, int], edges: Sequence[Tuple[int, int]], seed: int = 1,
                   params: Optional[ForceParams] = None) -> Dict[int, Tuple[float, float]]:
    """Positions for digraph nodes with y fixed by ``ranks`` (0 = top row)."""

    nodes = sorted(ranks)
    if not nodes:
        return {}
    params = params or ForceParams(max_iterations=5000)
    pos = {v: t for t, v in enumerate(nodes)}
    adj = np.zeros((len(nodes), len(nodes)), dtype=bool)
    for a, b in edges:
        if a != b:
            adj[pos[a], pos[b]] = adj[pos[b], pos[a]] = True
    rng = np.random.default_rng(seed)
    coords = np.column_stack([
        rng.uniform(-1.0, 1.0, len(nodes)),
        -np.array([ranks[v] for v in nodes], dtype=float) * 1.5,
    ])
    fixed = coords[:, 1].copy()
    coords, _ = relax(coords, adj, params, fixed_y=fixed)
    return {v: (float(coords[pos[v], 0]), float(coords[pos[v], 1])) for v in nodes}


def write_layout(layout: Layout, path: str | Path) -> None:
    lines = [f"{i + 1} {x:.6f} {y:.6f}" for i, (x, y) in enumerate(layout.coords)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_layout(path: str | Path) -> Layout:
    path = Path(path)
    if not path.exists():
        raise MissingArtifactError(f"Layout file not found at {path}")
    rows: List[Tuple[int, float, float]] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        parts = raw.split()
        try:
            rows.append((int(parts[0]), float(parts[1]), float(parts[2])))
        except (ValueError, IndexError) as exc:
            raise ParseError(f"{path}:{lineno}: expected 'i x y'") from exc
    rows.sort()
    coords = np.array([[x, y] for _, x, y in rows])
    return Layout(coords=coords, complexity=complexity(coords))
