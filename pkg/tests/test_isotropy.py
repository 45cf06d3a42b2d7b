import numpy as np
import pytest

from bifgraph.catalog import catalog_graph
from bifgraph.errors import BudgetExceededError
from bifgraph.isotropy import (
    fixed_point_subspace,
    generic_vertex_check,
    has_generic_vertex,
    isotropy_of,
    isotropy_symmetries,
)


def test_p3_lattice(p3_graph, lattice_of):
    group, lattice = lattice_of(p3_graph)
    assert len(lattice) == 4
    assert [sym.order for sym in lattice.symmetries] == [4, 2, 2, 1]
    assert [sym.elements.tolist() for sym in lattice.symmetries] == [[0, 1, 2, 3], [0, 2], [0, 3], [0]]
    assert lattice.types == [[0], [1], [2], [3]]
    assert [basis.shape[1] for basis in lattice.fixed_bases] == [0, 2, 1, 3]


def test_fixed_point_subspace_of_the_sign_flip_is_zero(p3_graph, lattice_of):
    group, _ = lattice_of(p3_graph)
    assert fixed_point_subspace(group, np.array([0, 1])).shape == (3, 0)
    basis = fixed_point_subspace(group, np.array([0, 3]))
    assert np.allclose(np.abs(basis[:, 0]), np.array([1.0, 0.0, 1.0]) / np.sqrt(2.0))
    assert basis[0, 0] == -basis[2, 0]


def test_isotropy_closure_of_minus_one_is_everything(p3_graph, lattice_of):
    group, _ = lattice_of(p3_graph)
    mask = np.zeros(group.order, dtype=bool)
    mask[[0, 1]] = True
    assert isotropy_of(group, mask).all()


def test_lattice_lookup(p3_graph, lattice_of):
    group, lattice = lattice_of(p3_graph)
    swap = np.zeros(4, dtype=bool)
    swap[[0, 2]] = True
    assert lattice.index_of(swap) == 1
    assert lattice.largest_contained(swap) == 1
    everything = np.ones(4, dtype=bool)
    assert lattice.largest_contained(everything) == 0
    assert lattice.contains(0, 2)
    assert not lattice.contains(1, 2)
    assert lattice.type_of(3) == 3


def test_c4_has_eleven_symmetry_types(c4_graph, lattice_of):
    group, lattice = lattice_of(c4_graph)
    assert group.order == 16
    assert len(lattice.types) == 11
    assert lattice.symmetries[0].order == 16
    assert lattice.symmetries[-1].order == 1


def test_every_member_is_its_own_isotropy_closure(c4_graph, lattice_of):
    group, lattice = lattice_of(c4_graph)
    for sym in lattice.symmetries:
        assert np.array_equal(isotropy_of(group, sym.mask), sym.mask)


def test_types_are_conjugacy_classes(c4_graph, lattice_of):
    group, lattice = lattice_of(c4_graph)
    for members in lattice.types:
        orders = {lattice.symmetries[i].order for i in members}
        assert len(orders) == 1
        first = lattice.symmetries[members[0]]
        for i in members[1:]:
            target = lattice.symmetries[i].mask
            assert any(np.all(target[group.conj[g, first.elements]]) for g in range(group.order))


def test_generic_vertex_cross_check(p3_graph, c4_graph, lattice_of):
    group, lattice = lattice_of(p3_graph)
    assert has_generic_vertex(group)
    assert generic_vertex_check(lattice)
    group, lattice = lattice_of(c4_graph)
    assert not has_generic_vertex(group)
    assert generic_vertex_check(lattice)


def test_generic_vertex_lattice_matches_sign_free_subgroups(lattice_of):
    graph = catalog_graph("cayley:S3")
    group, lattice = lattice_of(graph)
    assert has_generic_vertex(group)
    assert not any(sym.mask[1] for sym in lattice.symmetries[1:])
    assert generic_vertex_check(lattice)


def test_subgroup_cap(c4_graph, lattice_of):
    group, _ = lattice_of(c4_graph)
    with pytest.raises(BudgetExceededError):
        isotropy_symmetries(group, max_order=8)


@pytest.mark.slow
def test_petersen_symmetries(lattice_of):
    group, lattice = lattice_of(catalog_graph("petersen"))
    assert group.order == 240
    assert len(lattice) == 210
    assert len(lattice.types) == 20


@pytest.mark.slow
def test_dodecahedron_symmetries(lattice_of):
    group, lattice = lattice_of(catalog_graph("dodecahedron"))
    assert group.order == 240
    assert len(lattice) == 383
    assert len(lattice.types) == 39
