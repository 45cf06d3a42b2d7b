import numpy as np
import pytest

from bifgraph.graphs import build_graph, laplacian
from bifgraph.groups import automorphisms, build_gamma0
from bifgraph.errors import GraphStructureError
from bifgraph.invariant_subspaces import (
    block_eigenvectors,
    constant_subspace_is_anomalous,
    is_equitable_partition,
    is_vertex_transitive,
)

G2_EDGES = [(1, 3), (1, 4), (2, 5), (2, 6), (3, 5), (3, 4), (1, 2)]
G3_EDGES = [(1, 3), (1, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 5), (3, 4)]
BLOCKS = [[1, 2], [3, 4, 5, 6]]


def _gamma0(graph):
    return build_gamma0(automorphisms(graph), odd=True)


def test_constant_subspace(p3_graph, c4_graph):
    assert constant_subspace_is_anomalous(p3_graph, _gamma0(p3_graph))
    assert not is_vertex_transitive(_gamma0(p3_graph))
    assert not constant_subspace_is_anomalous(c4_graph, _gamma0(c4_graph))
    single = build_graph(1, [], name="K1")
    assert not constant_subspace_is_anomalous(single, _gamma0(single))


@pytest.mark.parametrize("edges", [G2_EDGES, G3_EDGES])
def test_asymmetric_graphs_with_block_invariant_subspace(edges):
    graph = build_graph(6, edges)
    assert len(automorphisms(graph)) == 1
    assert is_equitable_partition(graph, BLOCKS)
    spectrum = block_eigenvectors(graph, BLOCKS)
    assert spectrum.eigenvalues == pytest.approx([0.0, 3.0], abs=1e-10)
    expected = np.array([2.0, 2.0, -1.0, -1.0, -1.0, -1.0]) / np.sqrt(12.0)
    v = spectrum.eigenvectors[:, 1]
    assert abs(v @ expected) == pytest.approx(1.0)
    assert np.allclose(laplacian(graph) @ v, 3.0 * v)


def test_block_eigenvectors_requires_equitable_partition(p3_graph):
    assert not is_equitable_partition(p3_graph, [[1], [2, 3]])
    with pytest.raises(GraphStructureError):
        block_eigenvectors(p3_graph, [[1], [2, 3]])


@pytest.mark.parametrize("blocks", [[[1, 2], [2, 3]], [[1], [2]], [[1, 2], [3, 4]]])
def test_blocks_must_partition_the_vertices(p3_graph, blocks):
    with pytest.raises(GraphStructureError):
        is_equitable_partition(p3_graph, blocks)
