"""Named graphs and small-graph enumeration.

Catalog specs are short strings used by the ``graph.catalog`` setting:
``path:N``, ``cycle:N``, ``petersen``, ``dodecahedron``,
``truncated_icosahedron``, ``cayley:Z<n>``, ``cayley:S3``, ``cayley:Q`` and
``z3_z5_join``.
"""
from __future__ import annotations

import logging
from typing import Callable, Dict, List

import networkx as nx

from .cayley import cyclic_group, decorate_cayley, quaternion_group, symmetric_group_3
from .errors import ConfigError
from .graphs import build_graph, from_networkx
from .groups import automorphisms
from .models import Graph

LOGGER = logging.getLogger(__name__)

__all__ = ["catalog_graph", "connected_graphs", "asymmetric_graphs", "truncated_icosahedron"]


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(1, n)], name=f"P{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ConfigError(f"cycle needs at least 3 vertices, got {n}")
    return build_graph(n, [(i, i % n + 1) for i in range(1, n + 1)], name=f"C{n}")


def truncated_icosahedron() -> Graph:
    """Soccer-ball graph: one vertex per arc (u, v) of the icosahedron.

    Arcs (u, v) and (v, u) are joined, and arcs (u, v), (u, w) leaving the
    same vertex are joined when v and w are adjacent.
    """

    ico = nx.icosahedral_graph()
    arcs = sorted((u, v) for a, b in ico.edges() for u, v in ((a, b), (b, a)))
    g = nx.Graph()
    g.add_nodes_from(arcs)
    for u, v in arcs:
        g.add_edge((u, v), (v, u))
        for w in ico.neighbors(u):
            if w != v and ico.has_edge(v, w):
                g.add_edge((u, v), (u, w))
    return from_networkx(g, name="truncated_icosahedron")


def _cayley(token: str) -> Graph:
    if token == "S3":
        group = symmetric_group_3()
    elif token == "Q":
        group = quaternion_group()
    elif token.startswith("Z") and token[1:].isdigit() and int(token[1:]) >= 2:
        group = cyclic_group(int(token[1:]))
    else:
        raise ConfigError(f"Unknown Cayley group {token!r}; expected Z<n>, S3 or Q")
    return decorate_cayley(group.table, group.generators, name=f"cayley_{group.name}")


def z3_z5_join() -> Graph:
    """Decorated Z₃ and Z₅ Cayley graphs joined by every group-vertex pair.

    Γ₀ has order 30 and no vertex of the result is generic.
    """

    z3 = cyclic_group(3)
    z5 = cyclic_group(5)
    left = decorate_cayley(z3.table, z3.generators, name="cayley_Z3", verify=False)
    right = decorate_cayley(z5.table, z5.generators, name="cayley_Z5", verify=False)
    shift = left.n
    pairs = list(left.edges)
    pairs += [(i + shift, j + shift) for i, j in right.edges]
    pairs += [(x, y + shift) for x in range(1, z3.order + 1) for y in range(1, z5.order + 1)]
    return build_graph(left.n + right.n, pairs, name="z3_z5_join")


_NAMED: Dict[str, Callable[[], Graph]] = {
    "petersen": lambda: from_networkx(nx.petersen_graph(), name="petersen"),
    "dodecahedron": lambda: from_networkx(nx.dodecahedral_graph(), name="dodecahedron"),
    "truncated_icosahedron": truncated_icosahedron,
    "z3_z5_join": z3_z5_join,
}


def catalog_graph(key: str) -> Graph:
    """Build the graph named by ``key``; raises :class:`ConfigError` if unknown."""

    key = key.strip()
    name, _, arg = key.partition(":")
    if name in _NAMED and not arg:
        return _NAMED[name]()
    if name == "cayley":
        return _cayley(arg)
    if name in ("path", "cycle"):
        try:
            n = int(arg)
        except ValueError as exc:
            raise ConfigError(f"Catalog entry {key!r} needs an integer size") from exc
        if n < 1:
            raise ConfigError(f"Catalog entry {key!r} needs a positive size")
        return path_graph(n) if name == "path" else cycle_graph(n)
    raise ConfigError(f"Unknown catalog graph {key!r}")


def connected_graphs(n: int) -> List[Graph]:
    """Every connected graph on ``n`` vertices up to isomorphism (n ≤ 7)."""

    if not 1 <= n <= 7:
        raise ConfigError(f"The graph atlas covers 1..7 vertices, got {n}")
    out = []
    for t, g in enumerate(nx.graph_atlas_g()):
        if g.number_of_nodes() == n and nx.is_connected(g):
            out.append(from_networkx(g, name=f"atlas_{t}"))
    return out


def asymmetric_graphs(n: int) -> List[Graph]:
    found = [g for g in connected_graphs(n) if len(automorphisms(g)) == 1]
    LOGGER.info("[GRAPH] %d connected graphs on %d vertices have trivial automorphism group", len(found), n)
    return found
