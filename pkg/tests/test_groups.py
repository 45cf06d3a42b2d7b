import numpy as np
import pytest

from bifgraph.catalog import catalog_graph
from bifgraph.errors import BudgetExceededError
from bifgraph.groups import (
    SignedGroup,
    automorphisms,
    build_gamma0,
    color_refinement,
    multiplication_table,
    write_permutations,
)


def test_automorphisms_of_p3(p3_graph):
    perms = automorphisms(p3_graph)
    assert perms.tolist() == [[0, 1, 2], [2, 1, 0]]


def test_automorphism_counts(c4_graph):
    assert len(automorphisms(c4_graph)) == 8
    assert len(automorphisms(catalog_graph("path:5"))) == 2
    assert len(automorphisms(catalog_graph("cycle:6"))) == 12


@pytest.mark.slow
def test_petersen_automorphism_group():
    assert len(automorphisms(catalog_graph("petersen"))) == 120


def test_every_automorphism_preserves_adjacency(c4_graph):
    adj = c4_graph.adjacency
    for perm in automorphisms(c4_graph):
        assert np.array_equal(adj[np.ix_(perm, perm)], adj)


def test_search_budget(c4_graph):
    with pytest.raises(BudgetExceededError):
        automorphisms(c4_graph, node_limit=3)


def test_color_refinement_separates_path_ends_from_middle(p3_graph):
    colors = color_refinement(p3_graph.adjacency)
    assert colors[0] == colors[2]
    assert colors[0] != colors[1]


def test_gamma0_ordering_for_odd_problems(p3_graph):
    group = build_gamma0(automorphisms(p3_graph), odd=True)
    assert group.order == 4
    assert group.minus_identity == 1
    assert group.perms[1].tolist() == [0, 1, 2] and group.signs[1] == -1
    assert group.table[1, 1] == 0
    assert group.format_element(2) == "+ 3 2 1"


def test_gamma0_without_sign_flip(p3_graph):
    group = build_gamma0(automorphisms(p3_graph), odd=False)
    assert group.order == 2
    assert group.minus_identity is None
    assert np.all(group.signs == 1)


def test_action_convention(p3_graph):
    group = build_gamma0(automorphisms(p3_graph), odd=True)
    u = np.array([1.0, 2.0, 5.0])
    assert group.act(2, u).tolist() == [5.0, 2.0, 1.0]
    assert group.act(3, u).tolist() == [-5.0, -2.0, -1.0]
    assert np.allclose(group.action_matrix(3) @ u, group.act(3, u))
    assert np.allclose(group.act_all(u)[3], group.act(3, u))
    assert np.allclose(group.element(3).act(u), group.act(3, u))


def test_action_is_a_homomorphism(c4_graph):
    group = build_gamma0(automorphisms(c4_graph), odd=True)
    u = np.arange(1.0, 5.0)
    for g in range(group.order):
        for h in range(group.order):
            assert np.allclose(group.act(g, group.act(h, u)), group.act(group.table[g, h], u))


def test_inverse_and_orders(c4_graph):
    group = build_gamma0(automorphisms(c4_graph), odd=True)
    idx = np.arange(group.order)
    assert np.all(group.table[idx, group.inverse] == 0)
    assert sorted(set(group.element_orders.tolist())) == [1, 2, 4]
    assert group.closure(group.generators).all()


def test_multiplication_table_requires_closure():
    perms = np.array([[0, 1, 2], [1, 2, 0]])
    with pytest.raises(ValueError):
        multiplication_table(perms, np.array([1, 1]))


def test_normalizer_and_stabilizer(p3_graph):
    group = build_gamma0(automorphisms(p3_graph), odd=True)
    sub = np.zeros(4, dtype=bool)
    sub[[0, 2]] = True
    assert group.normalizer(np.arange(4), sub).tolist() == [0, 1, 2, 3]
    symmetric = np.array([[1.0], [0.0], [1.0]])
    assert group.stabilizer_of_vectors(symmetric).tolist() == [True, False, True, False]


def test_signed_group_from_explicit_elements():
    group = SignedGroup(np.array([[0, 1], [0, 1]]), np.array([1, -1]))
    assert group.order == 2 and group.n == 2
    assert group.generating_set() == [1]


def test_write_permutations(tmp_path, p3_graph):
    group = build_gamma0(automorphisms(p3_graph), odd=True)
    path = tmp_path / "perms.txt"
    write_permutations(group, path)
    assert path.read_text().splitlines() == ["+ 1 2 3", "- 1 2 3", "+ 3 2 1", "- 3 2 1"]


def test_signed_symmetry_composition_follows_the_table(c4_graph):
    group = build_gamma0(automorphisms(c4_graph), odd=True)
    for g in range(group.order):
        assert np.allclose(group.element(g).matrix(), group.action_matrix(g))
        for h in range(group.order):
            assert group.element(g).compose(group.element(h)) == group.element(group.table[g, h])
