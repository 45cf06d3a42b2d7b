import networkx as nx
import numpy as np
import pytest

from bifgraph.errors import GraphStructureError, MissingArtifactError, ParseError
from bifgraph.graphs import (
    build_graph,
    from_networkx,
    laplacian,
    parse_edgelist,
    read_edgelist,
    symmetric_eigen,
    write_edgelist,
    write_eigen,
)


def test_parse_edgelist_skips_comments_and_blank_lines():
    graph = parse_edgelist("# path\n\n1 2\n 2 3 \n", name="P3")
    assert graph.n == 3
    assert graph.edges == ((1, 2), (2, 3))
    assert graph.name == "P3"


def test_parse_edgelist_normalizes_duplicates_and_orientation():
    graph = parse_edgelist("2 1\n1 2\n3 2\n")
    assert graph.edges == ((1, 2), (2, 3))


def test_empty_edgelist_is_single_vertex():
    graph = parse_edgelist("# nothing\n")
    assert graph.n == 1
    assert graph.edges == ()


@pytest.mark.parametrize("text", ["1 2 3\n", "1 x\n", "0 1\n"])
def test_malformed_lines_raise_parse_error(text):
    with pytest.raises(ParseError):
        parse_edgelist(text)


def test_loops_and_disconnected_graphs_are_rejected():
    with pytest.raises(GraphStructureError):
        parse_edgelist("1 1\n1 2\n")
    with pytest.raises(GraphStructureError):
        parse_edgelist("1 2\n3 4\n")
    with pytest.raises(GraphStructureError):
        build_graph(2, [(1, 3)])


def test_read_edgelist_missing_file(tmp_path):
    with pytest.raises(MissingArtifactError):
        read_edgelist(tmp_path / "absent.edges")


def test_write_then_read_edgelist(tmp_path, p3_graph):
    path = tmp_path / "p3.edges"
    write_edgelist(p3_graph, path)
    again = read_edgelist(path)
    assert again.edges == p3_graph.edges
    assert again.name == "p3"


def test_laplacian_of_p3(p3_graph):
    expected = np.array([[1, -1, 0], [-1, 2, -1], [0, -1, 1]])
    assert np.array_equal(laplacian(p3_graph), expected)
    assert np.array_equal(p3_graph.degrees, [1, 2, 1])
    assert p3_graph.has_edge(2, 1)
    assert not p3_graph.has_edge(1, 3)


def test_symmetric_eigen_p3(p3_graph):
    spectrum = symmetric_eigen(laplacian(p3_graph))
    assert np.allclose(spectrum.eigenvalues, [0.0, 1.0, 3.0])
    vecs = spectrum.eigenvectors
    assert np.allclose(vecs.T @ vecs, np.eye(3))


def test_write_eigen_layout(tmp_path, p3_graph):
    path = tmp_path / "eigen.txt"
    write_eigen(symmetric_eigen(laplacian(p3_graph)), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "3"
    assert len(lines) == 4
    assert len(lines[1].split()) == 4


def test_from_networkx_relabels_in_sorted_order():
    g = nx.Graph([("b", "c"), ("a", "b")])
    graph = from_networkx(g, name="abc")
    assert graph.n == 3
    assert graph.edges == ((1, 2), (2, 3))
