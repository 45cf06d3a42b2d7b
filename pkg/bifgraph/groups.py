"""Automorphism search and the signed symmetry group Γ₀ = Aut(G)×Z₂.

Group elements are stored as rows of a permutation array plus a sign vector;
every group-theoretic operation downstream works on integer indices into
those arrays through the multiplication table.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .errors import BudgetExceededError
from .models import Graph, SignedSymmetry

LOGGER = logging.getLogger(__name__)

__all__ = [
    "SignedGroup",
    "SymmetryGroup",
    "automorphisms",
    "build_gamma0",
    "color_refinement",
    "multiplication_table",
    "write_permutations",
]


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------

def color_refinement(adj: np.ndarray) -> np.ndarray:
    """Equitable partition by iterated degree refinement.

    Returns integer colors; vertices of different color are never mapped to
    each other by an automorphism.
    """

    n = adj.shape[0]
    colors = adj.sum(axis=1).astype(int)
    _, colors = np.unique(colors, return_inverse=True)
    while True:
        signatures = []
        for v in range(n):
            neigh = np.sort(colors[adj[v]])
            signatures.append((int(colors[v]), tuple(int(c) for c in neigh)))
        ordered = sorted(set(signatures))
        lookup = {sig: t for t, sig in enumerate(ordered)}
        refined = np.array([lookup[sig] for sig in signatures], dtype=int)
        if len(ordered) == len(np.unique(colors)):
            return refined
        colors = refined


def _search_order(adj: np.ndarray, colors: np.ndarray) -> List[int]:
    n = adj.shape[0]
    class_size = np.bincount(colors)
    placed = np.zeros(n, dtype=bool)
    order: List[int] = []
    links = np.zeros(n, dtype=int)
    for _ in range(n):
        best = None
        for v in range(n):
            if placed[v]:
                continue
            key = (-links[v], class_size[colors[v]], v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        order.append(v)
        placed[v] = True
        links += adj[v]
    return order


def automorphisms(graph: Graph, node_limit: int = 10_000_000) -> np.ndarray:
    """All adjacency-preserving permutations, lexicographically sorted.

    Row ``g`` is 0-based image notation (``perms[g][j] = π(j)``); row 0 is
    the identity. Backtracking over an equitable-partition-refined vertex
    order; raises :class:`BudgetExceededError` past ``node_limit`` nodes.
    """

    adj = graph.adjacency
    n = graph.n
    colors = color_refinement(adj)
    order = _search_order(adj, colors)
    class_masks = {c: colors == c for c in np.unique(colors)}
    mapping = np.full(n, -1, dtype=int)
    used = np.zeros(n, dtype=bool)
    found: List[np.ndarray] = []
    nodes = 0

    def extend(depth: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceededError(
                f"Automorphism search exceeded {node_limit} nodes ({len(found)} automorphisms so far)"
            )
        if depth == n:
            found.append(mapping.copy())
            return
        v = order[depth]
        placed = order[:depth]
        cand = class_masks[colors[v]] & ~used
        if depth:
            images = mapping[placed]
            cand &= np.all(adj[:, images] == adj[v, placed], axis=1)
        for w in np.flatnonzero(cand):
            mapping[v] = w
            used[w] = True
            extend(depth + 1)
            used[w] = False
            mapping[v] = -1

    extend(0)
    perms = np.array(sorted(found, key=tuple), dtype=int).reshape(len(found), n)
    LOGGER.info("[GROUP] %s: |Aut(G)| = %d (%d search nodes)", graph.name or "graph", len(perms), nodes)
    return perms


# ---------------------------------------------------------------------------
# Signed groups
# ---------------------------------------------------------------------------

def multiplication_table(perms: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """``table[g, h]`` is the index of ``g ∘ h`` (apply ``h`` first)."""

    size = len(perms)
    index = {(perms[g].tobytes(), int(signs[g])): g for g in range(size)}
    table = np.empty((size, size), dtype=int)
    for g in range(size):
        composed = perms[g][perms]
        prod_signs = signs[g] * signs
        for h in range(size):
            key = (composed[h].tobytes(), int(prod_signs[h]))
            try:
                table[g, h] = index[key]
            except KeyError as exc:
                raise ValueError("Element set is not closed under composition") from exc
    return table


class SignedGroup:
    """Finite group of signed permutations acting on ℝⁿ.

    The action is ``(γ·u)[π(j)] = β u[j]``, i.e. the matrix of γ is β times
    the permutation matrix with ones at ``(π(j), j)``.
    """

    def __init__(self, perms: np.ndarray, signs: np.ndarray, odd: bool = True):
        self.perms = np.asarray(perms, dtype=int)
        self.signs = np.asarray(signs, dtype=int)
        self.odd = odd
        self.table = multiplication_table(self.perms, self.signs)
        self.inverse = np.argmax(self.table == 0, axis=1)
        self.conj = self.table[self.table, self.inverse[:, None]]
        self.element_orders = self._element_orders()
        self.generators = self.generating_set()

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def n(self) -> int:
        return self.perms.shape[1]

    @property
    def minus_identity(self) -> Optional[int]:
        """Index of −1, present only for odd nonlinearities."""
        return 1 if self.odd else None

    def _element_orders(self) -> np.ndarray:
        size = self.order
        idx = np.arange(size)
        orders = np.zeros(size, dtype=int)
        power = idx.copy()
        k = 1
        while np.any(orders == 0):
            orders[(power == 0) & (orders == 0)] = k
            power = self.table[power, idx]
            k += 1
        return orders

    def element(self, g: int) -> SignedSymmetry:
        return SignedSymmetry(tuple(int(x) for x in self.perms[g]), int(self.signs[g]))

    def format_element(self, g: int) -> str:
        sign = "+" if self.signs[g] > 0 else "-"
        return sign + " " + " ".join(str(int(x) + 1) for x in self.perms[g])

    def act(self, g: int, u: np.ndarray) -> np.ndarray:
        out = np.empty(self.n)
        out[self.perms[g]] = self.signs[g] * np.asarray(u, dtype=float)
        return out

    def act_all(self, u: np.ndarray, elements: Optional[np.ndarray] = None) -> np.ndarray:
        """Images of ``u`` under ``elements`` (all of Γ₀ by default), one per row."""

        idx = np.arange(self.order) if elements is None else np.asarray(elements)
        values = self.signs[idx, None] * np.asarray(u, dtype=float)[None, :]
        out = np.empty((len(idx), self.n))
        np.put_along_axis(out, self.perms[idx], values, axis=1)
        return out

    def action_matrix(self, g: int) -> np.ndarray:
        mat = np.zeros((self.n, self.n))
        mat[self.perms[g], np.arange(self.n)] = self.signs[g]
        return mat

    def weighted_action_sum(self, elements: np.ndarray, weights: np.ndarray) -> np.ndarray:
        """Σ_g w_g A_g over ``elements`` (complex weights allowed)."""

        elements = np.asarray(elements)
        weights = np.asarray(weights) * self.signs[elements]
        out = np.zeros((self.n, self.n), dtype=np.result_type(weights, float))
        rows = self.perms[elements].ravel()
        cols = np.tile(np.arange(self.n), len(elements))
        np.add.at(out, (rows, cols), np.repeat(weights, self.n))
        return out

    def closure(self, generators: Iterable[int]) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by ``generators``."""

        gens = np.unique(np.asarray(list(generators), dtype=int))
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0])
        while len(frontier) and len(gens):
            products = np.unique(self.table[np.ix_(frontier, gens)])
            frontier = products[~mask[products]]
            mask[frontier] = True
        return mask

    def generating_set(self, elements: Optional[Sequence[int]] = None) -> List[int]:
        """Greedy generators of the subgroup spanned by ``elements`` (default Γ₀)."""

        pool = range(self.order) if elements is None else elements
        gens: List[int] = []
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        for g in pool:
            if not mask[g]:
                gens.append(int(g))
                mask = self.closure(gens)
        return gens

    def normalizer(self, within: np.ndarray, sub_mask: np.ndarray) -> np.ndarray:
        """Elements of ``within`` that conjugate the subgroup ``sub_mask`` to itself."""

        members = np.flatnonzero(sub_mask)
        images = self.conj[np.ix_(within, members)]
        keep = np.all(sub_mask[images], axis=1)
        return np.asarray(within)[keep]

    def stabilizer_of_vectors(self, basis: np.ndarray, elements: Optional[np.ndarray] = None,
                              tol: float = 1e-9) -> np.ndarray:
        """Mask over ``elements`` of those fixing every column of ``basis``."""

        idx = np.arange(self.order) if elements is None else np.asarray(elements)
        basis = np.asarray(basis, dtype=float).reshape(self.n, -1)
        if basis.shape[1] == 0:
            return np.ones(len(idx), dtype=bool)
        # (γ·w)[π(j)] = β w[j]  <=>  w[π(j)] == β w[j] for a fixed vector
        moved = basis[self.perms[idx]]
        target = self.signs[idx, None, None] * basis[None, :, :]
        return np.all(np.abs(moved - target) <= tol, axis=(1, 2))


def build_gamma0(aut_perms: np.ndarray, odd: bool = True) -> SignedGroup:
    """Aut(G)×Z₂ for odd nonlinearities, Aut(G)×{+1} otherwise.

    Elements are ordered ``(π, +1), (π, −1)`` per automorphism in the
    automorphism order, so index 0 is the identity and index 1 is −1.
    """

    aut_perms = np.asarray(aut_perms, dtype=int)
    if odd:
        perms = np.repeat(aut_perms, 2, axis=0)
        signs = np.tile(np.array([1, -1]), len(aut_perms))
    else:
        perms = aut_perms.copy()
        signs = np.ones(len(aut_perms), dtype=int)
    group = SignedGroup(perms, signs, odd=odd)
    LOGGER.info("[GROUP] |Γ₀| = %d (%s nonlinearity)", group.order, "odd" if odd else "non-odd")
    return group


@dataclass
class SymmetryGroup:
    """Subgroup of Γ₀ that is an isotropy subgroup.

    Attributes:
        index: Position i in the master list 𝒢.
        elements: Sorted global element indices.
        mask: Membership mask over Γ₀.
        type_index: Index of its conjugacy class in 𝒮.
        generators: Small generating set (global indices).
    """

    index: int
    elements: np.ndarray
    mask: np.ndarray
    type_index: int = -1
    generators: List[int] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.elements)


def write_permutations(group: SignedGroup, path: str | Path) -> None:
    """One signed element per line: sign, then the 1-based image of each vertex."""

    lines = [group.format_element(g) for g in range(group.order)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
