import numpy as np
import pytest

from bifgraph.cayley import (
    cyclic_group,
    decorate_cayley,
    permutation_group,
    quaternion_group,
    symmetric_group_3,
)
from bifgraph.errors import GraphStructureError
from bifgraph.groups import automorphisms


def _is_group_table(table):
    size = len(table)
    rows_are_perms = all(sorted(row) == list(range(size)) for row in table.tolist())
    assoc = all(
        table[table[a, b], c] == table[a, table[b, c]]
        for a in range(size) for b in range(size) for c in range(size)
    )
    return rows_are_perms and assoc and np.array_equal(table[0], np.arange(size))


@pytest.mark.parametrize("presentation", [cyclic_group(5), symmetric_group_3(), quaternion_group()])
def test_presets_are_groups(presentation):
    assert _is_group_table(presentation.table)


def test_preset_orders():
    assert cyclic_group(5).order == 5
    assert symmetric_group_3().order == 6
    assert quaternion_group().order == 8


def test_permutation_group_closure():
    dihedral = permutation_group("D4", [(1, 2, 3, 0), (0, 3, 2, 1)])
    assert dihedral.order == 8
    assert dihedral.labels[0] == "(1 2 3 4)"


def test_decorated_z5_graph():
    z5 = cyclic_group(5)
    graph = decorate_cayley(z5.table, z5.generators, name="cayley_Z5")
    assert graph.n == 15
    assert len(automorphisms(graph)) == 5


def test_decorated_s3_graph_has_s3_symmetry():
    s3 = symmetric_group_3()
    graph = decorate_cayley(s3.table, s3.generators, name="cayley_S3")
    # two involutions: plain edges, then edges with one common neighbour
    assert graph.n == 6 + 3
    assert len(automorphisms(graph)) == 6


def test_decorated_quaternion_graph():
    q = quaternion_group()
    graph = decorate_cayley(q.table, q.generators, name="cayley_Q")
    assert graph.n == 48
    assert len(graph.edges) == 72
    assert len(automorphisms(graph)) == 8


def test_decoration_rejects_bad_input():
    z4 = cyclic_group(4)
    with pytest.raises(GraphStructureError):
        decorate_cayley(z4.table, [2])
    shuffled = z4.table[[1, 0, 2, 3]]
    with pytest.raises(GraphStructureError):
        decorate_cayley(shuffled, [1])
