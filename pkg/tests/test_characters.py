import numpy as np
import pytest

from bifgraph.cayley import cyclic_group, quaternion_group, symmetric_group_3
from bifgraph.characters import (
    character_table,
    character_table_from_table,
    frobenius_schur,
    isotypic_decomposition,
    local_table,
)
from bifgraph.errors import NumericalError


def test_symmetric_group_degrees_and_classes():
    table = character_table_from_table(symmetric_group_3().table)
    assert table.degrees.tolist() == [1, 1, 2]
    assert sorted(table.class_sizes.tolist()) == [1, 2, 3]
    assert table.classes[0].tolist() == [0]
    assert np.all(table.indicators == 1)


def test_sum_of_squared_degrees_is_the_order():
    for presentation in (cyclic_group(6), symmetric_group_3(), quaternion_group()):
        table = character_table_from_table(presentation.table)
        assert int((table.degrees ** 2).sum()) == presentation.order


def test_cyclic_group_has_complex_pair():
    table = character_table_from_table(cyclic_group(3).table)
    assert table.degrees.tolist() == [1, 1, 1]
    assert table.indicators[0] == 1
    assert sorted(table.indicators.tolist()) == [0, 0, 1]
    assert table.partner[0] == 0
    assert table.partner[1] == 2 and table.partner[2] == 1


def test_quaternion_group_has_one_quaternionic_character():
    table = character_table_from_table(quaternion_group().table)
    assert table.degrees.tolist() == [1, 1, 1, 1, 2]
    assert table.indicators.tolist().count(-1) == 1
    assert table.indicators[-1] == -1


def test_rows_are_orthonormal():
    table = character_table_from_table(symmetric_group_3().table)
    gram = (table.characters * table.class_sizes[None, :]) @ np.conj(table.characters).T / table.order
    assert np.allclose(gram, np.eye(3))


def test_frobenius_schur_rejects_garbage():
    table = character_table_from_table(cyclic_group(2).table)
    with pytest.raises(NumericalError):
        frobenius_schur(np.array([3.0, 0.2]), table.table, table.class_of)


def test_local_table_rejects_non_subgroups(p3_bundle):
    group = p3_bundle.group
    assert local_table(group, np.array([0, 2])).tolist() == [[0, 1], [1, 0]]
    with pytest.raises(ValueError):
        local_table(group, np.array([0, 2, 3]))


def test_gamma0_decomposition_of_p3(p3_bundle):
    dec = p3_bundle.decompositions[0]
    assert [c.k for c in dec.components] == [1, 2, 3, 4]
    assert [c.dim for c in dec.components] == [2, 1, 0, 0]
    # −1 acts as −I on the leading components
    assert dec.components[0].character[1].real == pytest.approx(-1.0)
    assert dec.components[1].character[1].real == pytest.approx(-1.0)
    total = sum(c.projector for c in dec.components)
    assert np.allclose(total, np.eye(3))


def test_trivial_component_of_a_proper_symmetry_is_its_fixed_space(p3_bundle):
    lattice = p3_bundle.lattice
    dec = p3_bundle.decompositions[1]
    first = dec.components[0]
    assert np.allclose(first.character, 1.0)
    fixed = lattice.fixed_bases[1]
    assert np.allclose(first.projector, fixed @ fixed.T)


def test_decomposition_of_c4(c4_graph, lattice_of):
    group, lattice = lattice_of(c4_graph)
    sym = lattice.symmetries[0]
    table = character_table(group, sym.elements)
    dec = isotypic_decomposition(group, sym, table)
    assert sum(c.dim for c in dec.components) == 4
    assert all(c.real_degree in (1, 2) for c in dec.components)
    for c in dec.components:
        assert np.allclose(c.projector @ c.projector, c.projector)
