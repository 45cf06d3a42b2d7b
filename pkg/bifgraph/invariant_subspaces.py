"""Anomalous invariant subspaces: constant vectors and block-constant vectors.

A block-constant subspace is invariant under −L + f_s for every f exactly
when L maps it into itself, which only depends on the counts of neighbours
across blocks.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy import linalg

from .errors import GraphStructureError
from .graphs import laplacian
from .groups import SignedGroup
from .models import Graph, Spectrum


def is_vertex_transitive(group: SignedGroup) -> bool:
    orbit = np.unique(group.perms[:, 0])
    return len(orbit) == group.n


def constant_subspace_is_anomalous(graph: Graph, group: SignedGroup) -> bool:
    """True iff span{(1,…,1)} is invariant but not a fixed-point subspace.

    The constant subspace is the fixed-point space of the permutation part
    of Γ₀ exactly when the automorphisms act transitively on vertices.
    """

    if graph.n == 1:
        return False
    return not is_vertex_transitive(group)


def _block_labels(n: int, blocks: Sequence[Sequence[int]]) -> np.ndarray:
    labels = np.full(n, -1, dtype=int)
    for b, block in enumerate(blocks):
        for v in block:
            if not 1 <= v <= n:
                raise GraphStructureError(f"Block vertex {v} outside 1..{n}")
            if labels[v - 1] >= 0:
                raise GraphStructureError(f"Vertex {v} appears in two blocks")
            labels[v - 1] = b
    if np.any(labels < 0):
        missing = (np.flatnonzero(labels < 0) + 1).tolist()
        raise GraphStructureError(f"Vertices {missing} are in no block")
    return labels


def _cross_counts(graph: Graph, labels: np.ndarray, nblocks: int) -> np.ndarray:
    indicator = np.eye(nblocks, dtype=int)[labels]
    return graph.adjacency.astype(int) @ indicator


def is_equitable_partition(graph: Graph, blocks: Sequence[Sequence[int]]) -> bool:
    """Every vertex of block A has the same number of neighbours in block B ≠ A.

    ``blocks`` lists 1-based vertices and must partition the vertex set.
    """

    labels = _block_labels(graph.n, blocks)
    counts = _cross_counts(graph, labels, len(blocks))
    for b in range(len(blocks)):
        rows = counts[labels == b]
        others = np.arange(len(blocks)) != b
        if np.any(rows[:, others] != rows[0, others]):
            return False
    return True


def block_eigenvectors(graph: Graph, blocks: Sequence[Sequence[int]]) -> Spectrum:
    """Eigenpairs of L inside the block-constant subspace.

    Solves the quotient problem on block values and lifts the result back to
    unit vectors in vertex coordinates.
    """

    if not is_equitable_partition(graph, blocks):
        raise GraphStructureError("Block partition does not give an L-invariant subspace")
    labels = _block_labels(graph.n, blocks)
    chars = np.eye(len(blocks))[labels]
    sizes = chars.sum(axis=0)
    # orthonormal block indicators make the restricted operator symmetric
    basis = chars / np.sqrt(sizes)[None, :]
    reduced = basis.T @ laplacian(graph) @ basis
    values, vectors = linalg.eigh(reduced)
    return Spectrum(eigenvalues=values, eigenvectors=basis @ vectors)
