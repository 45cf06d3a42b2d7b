"""Small group presets and decorated Cayley graphs.

A decorated Cayley graph replaces the colored directed edges of a Cayley
color digraph by undirected gadgets, one gadget shape per generator, so that
the automorphism group of the resulting simple graph is the group itself.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import GraphStructureError
from .graphs import build_graph
from .groups import automorphisms
from .models import Graph

LOGGER = logging.getLogger(__name__)

__all__ = [
    "GroupPresentation",
    "cyclic_group",
    "symmetric_group_3",
    "quaternion_group",
    "permutation_group",
    "decorate_cayley",
]


@dataclass
class GroupPresentation:
    """Abstract group with identity at index 0.

    Attributes:
        name: Display name.
        table: ``table[x, y]`` is the index of ``x·y``.
        labels: Human-readable element names.
        generators: Indices of the chosen generators.
    """

    name: str
    table: np.ndarray
    labels: List[str]
    generators: List[int]

    @property
    def order(self) -> int:
        return len(self.table)


def cyclic_group(n: int) -> GroupPresentation:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    labels = ["e"] + [f"a^{k}" if k > 1 else "a" for k in range(1, n)]
    return GroupPresentation(f"Z{n}", table, labels, [1] if n > 1 else [])


def permutation_group(name: str, generators: Sequence[Sequence[int]]) -> GroupPresentation:
    """Group generated by 0-based permutations, elements in discovery order."""

    degree = len(generators[0])
    identity = tuple(range(degree))
    elements: List[Tuple[int, ...]] = [identity]
    index = {identity: 0}
    gens = [tuple(g) for g in generators]
    for g in gens:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
    cursor = 0
    while cursor < len(elements):
        x = elements[cursor]
        for g in gens:
            y = tuple(x[g[j]] for j in range(degree))
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
        cursor += 1
    size = len(elements)
    table = np.empty((size, size), dtype=int)
    for a, x in enumerate(elements):
        for b, y in enumerate(elements):
            table[a, b] = index[tuple(x[y[j]] for j in range(degree))]
    labels = ["(" + " ".join(str(v + 1) for v in p) + ")" for p in elements]
    return GroupPresentation(name, table, labels, [index[g] for g in gens])


def symmetric_group_3() -> GroupPresentation:
    """S₃ generated by the transpositions (1 2) and (2 3)."""
    return permutation_group("S3", [(1, 0, 2), (0, 2, 1)])


_UNIT_PRODUCT = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion_group() -> GroupPresentation:
    """Q = {±1, ±i, ±j, ±k} generated by i and j."""

    elements = [(s, u) for u in "1ijk" for s in (1, -1)]
    index = {e: t for t, e in enumerate(elements)}
    size = len(elements)
    table = np.empty((size, size), dtype=int)
    for a, (s1, u1) in enumerate(elements):
        for b, (s2, u2) in enumerate(elements):
            s3, u3 = _UNIT_PRODUCT[(u1, u2)]
            table[a, b] = index[(s1 * s2 * s3, u3)]
    labels = [("" if s > 0 else "-") + u for s, u in elements]
    return GroupPresentation("Q", table, labels, [index[(1, "i")], index[(1, "j")]])


def _generates(table: np.ndarray, generators: Sequence[int]) -> bool:
    reached = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = int(table[x, g])
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(reached) == len(table)


def decorate_cayley(table: np.ndarray, generators: Sequence[int], name: str = "cayley",
                    verify: bool = True) -> Graph:
    """Decorated Cayley graph of the group ``table`` for ``generators``.

    Group element ``x`` becomes vertex ``x + 1``; decoration vertices follow.
    Generator number ``t`` (position in ``generators``) is drawn as:

    * involution: the edge x–xd plus ``t`` common neighbours of its ends;
    * otherwise, ``t = 0``: edge x–xd with vertices a, b where a is adjacent
      to x, b and xd, and b to xd (the head sits in two triangles);
    * otherwise, ``t > 0``: path x–a–b–xd with ``t`` pendant vertices on a.
    """

    table = np.asarray(table, dtype=int)
    size = len(table)
    if not np.array_equal(table[0], np.arange(size)):
        raise GraphStructureError("Multiplication table must have the identity at index 0")
    if size > 1 and not _generates(table, generators):
        raise GraphStructureError(f"Generators {list(generators)} do not generate the group")

    pairs: List[Tuple[int, int]] = []
    next_vertex = size + 1

    def fresh() -> int:
        nonlocal next_vertex
        v = next_vertex
        next_vertex += 1
        return v

    for t, d in enumerate(generators):
        involution = table[d, d] == 0
        for x in range(size):
            y = int(table[x, d])
            tail, head = x + 1, y + 1
            if involution:
                if x > y:
                    continue
                pairs.append((tail, head))
                for _ in range(t):
                    c = fresh()
                    pairs += [(tail, c), (c, head)]
            elif t == 0:
                a, b = fresh(), fresh()
                pairs += [(tail, head), (tail, a), (a, head), (a, b), (b, head)]
            else:
                a, b = fresh(), fresh()
                pairs += [(tail, a), (a, b), (b, head)]
                for _ in range(t):
                    pairs.append((a, fresh()))

    graph = build_graph(max(next_vertex - 1, 1), pairs, name=name)
    LOGGER.info("[GRAPH] decorated Cayley graph %s: %d vertices, %d edges", name, graph.n, len(graph.edges))
    if verify:
        found = len(automorphisms(graph))
        if found != size:
            LOGGER.warning(
                "[GRAPH] decoration check failed for %s: |Aut| = %d but the group has order %d",
                name, found, size,
            )
    return graph
