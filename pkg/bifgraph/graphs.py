"""Edgelist parsing, Laplacian assembly and the dense symmetric eigensolver."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Tuple

import networkx as nx
import numpy as np
from scipy import linalg

from .errors import GraphStructureError, MissingArtifactError, NumericalError, ParseError
from .models import Graph, Spectrum

LOGGER = logging.getLogger(__name__)

__all__ = [
    "build_graph",
    "parse_edgelist",
    "read_edgelist",
    "write_edgelist",
    "laplacian",
    "symmetric_eigen",
    "write_eigen",
    "to_networkx",
    "from_networkx",
]


def build_graph(n: int, pairs: Iterable[Tuple[int, int]], name: str = "") -> Graph:
    """Validate 1-based pairs and return a simple connected :class:`Graph`."""

    edges = set()
    for i, j in pairs:
        if i == j:
            raise GraphStructureError(f"Loop at vertex {i}")
        if i < 1 or j < 1 or i > n or j > n:
            raise GraphStructureError(f"Edge ({i}, {j}) outside vertex range 1..{n}")
        pair = (min(i, j), max(i, j))
        if pair in edges:
            LOGGER.debug("[GRAPH] duplicate edge %s collapsed", pair)
        edges.add(pair)
    graph = Graph(n=n, edges=tuple(sorted(edges)), name=name)
    if n > 1 and not nx.is_connected(to_networkx(graph)):
        raise GraphStructureError(f"Graph {name!r} is disconnected")
    return graph


def parse_edgelist(text: str, name: str = "") -> Graph:
    """Parse "i j" lines into a graph.

    Blank lines and lines starting with ``#`` are skipped. ``n`` is the
    largest index referenced; text without edges gives the single-vertex
    graph.
    """

    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer token in {line!r}") from exc
        if i < 1 or j < 1:
            raise ParseError(f"line {lineno}: vertex indices must be positive")
        pairs.append((i, j))
    n = max((max(p) for p in pairs), default=1)
    return build_graph(n, pairs, name=name)


def read_edgelist(path: str | Path) -> Graph:
    path = Path(path)
    if not path.exists():
        raise MissingArtifactError(f"Edgelist not found at {path}")
    return parse_edgelist(path.read_text(encoding="utf-8"), name=path.stem)


def write_edgelist(graph: Graph, path: str | Path) -> None:
    lines = [f"# {graph.name}" if graph.name else "# graph"]
    lines += [f"{i} {j}" for i, j in graph.edges]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(1, graph.n + 1))
    g.add_edges_from(graph.edges)
    return g


def from_networkx(g: nx.Graph, name: str = "") -> Graph:
    """Relabel nodes to ``1..n`` in sorted-node order and build a graph."""

    nodes = sorted(g.nodes())
    index = {v: t + 1 for t, v in enumerate(nodes)}
    return build_graph(len(nodes), ((index[a], index[b]) for a, b in g.edges()), name=name)


def laplacian(graph: Graph) -> np.ndarray:
    adj = graph.adjacency.astype(int)
    return np.diag(adj.sum(axis=1)) - adj


def symmetric_eigen(lap: np.ndarray, residual_tol: float = 1e-10) -> Spectrum:
    """Dense symmetric eigensolve with residual verification."""

    mat = np.asarray(lap, dtype=float)
    try:
        values, vectors = linalg.eigh(mat)
    except linalg.LinAlgError as exc:
        raise NumericalError(f"Eigensolver did not converge: {exc}") from exc
    residual = np.abs(mat @ vectors - vectors * values).max(axis=0) if len(values) else np.zeros(0)
    limit = residual_tol * np.maximum(1.0, np.abs(values))
    if np.any(residual > limit):
        worst = int(np.argmax(residual / limit))
        raise NumericalError(
            f"Eigenpair {worst} residual {residual[worst]:.3e} exceeds {limit[worst]:.3e}"
        )
    return Spectrum(eigenvalues=values, eigenvectors=vectors)


def write_eigen(spectrum: Spectrum, path: str | Path) -> None:
    """First line n; then per eigenpair λ followed by its n components."""

    n = len(spectrum.eigenvalues)
    lines = [str(n)]
    for j in range(n):
        row = [spectrum.eigenvalues[j], *spectrum.eigenvectors[:, j]]
        lines.append(" ".join(f"{x:.15g}" for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
