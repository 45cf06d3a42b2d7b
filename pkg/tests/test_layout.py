import numpy as np
import pytest

from bifgraph.errors import MissingArtifactError, ParseError
from bifgraph.graphs import build_graph
from bifgraph.layout import (
    ForceParams,
    complexity,
    digraph_layout,
    forces,
    level_edges,
    read_layout,
    spring_layout,
    write_layout,
)


def test_single_edge_settles_where_repulsion_meets_spring():
    graph = build_graph(2, [(1, 2)], name="P2")
    layout = spring_layout(graph, restarts=1, seed=3)
    assert layout.converged
    distance = np.linalg.norm(layout.coords[0] - layout.coords[1])
    assert distance == pytest.approx(1.597, abs=5e-3)


def test_forces_vanish_at_equilibrium_distance():
    params = ForceParams()
    adj = np.array([[False, True], [True, False]])
    # 1/(ε + d^D) = d − ν at d ≈ 1.5972
    coords = np.array([[0.0, 0.0], [1.5972, 0.0]])
    assert np.abs(forces(coords, adj, params)).max() < 1e-3


def test_complexity_counts_distinct_distances():
    assert complexity(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])) == 2
    assert complexity(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])) == 2
    assert complexity(np.array([[0.0, 0.0]])) == 0


def test_level_edges_makes_the_common_edge_horizontal():
    coords = np.array([[0.0, 0.0], [1.0, 1.0]])
    out = level_edges(coords, [(1, 2)])
    assert abs(out[1, 1] - out[0, 1]) < 1e-12
    assert np.allclose(out.mean(axis=0), 0.0)
    assert np.linalg.norm(out[1] - out[0]) == pytest.approx(np.sqrt(2.0))


def test_restarts_keep_alternates_sorted_by_complexity(p3_graph):
    layout = spring_layout(p3_graph, restarts=3, seed=1)
    assert len(layout.alternates) == 2
    ranked = [layout] + layout.alternates
    assert [r.complexity for r in ranked] == sorted(r.complexity for r in ranked)


def test_threaded_restarts_match_serial(p3_graph):
    serial = spring_layout(p3_graph, restarts=2, seed=5)
    threaded = spring_layout(p3_graph, restarts=2, seed=5, threads=2)
    assert np.allclose(serial.coords, threaded.coords)


def test_digraph_layout_keeps_rows():
    pos = digraph_layout({0: 0, 1: 1, 2: 1, 3: 2}, [(0, 1), (0, 2), (1, 3), (2, 3)], seed=1)
    assert set(pos) == {0, 1, 2, 3}
    assert pos[0][1] == pytest.approx(0.0)
    assert pos[1][1] == pytest.approx(-1.5)
    assert pos[3][1] == pytest.approx(-3.0)
    assert pos[1][0] != pytest.approx(pos[2][0])


def test_layout_file_round_trip(tmp_path, p3_graph):
    layout = spring_layout(p3_graph, restarts=1)
    path = tmp_path / "layout.txt"
    write_layout(layout, path)
    again = read_layout(path)
    assert np.allclose(again.coords, layout.coords, atol=1e-6)


def test_read_layout_errors(tmp_path):
    with pytest.raises(MissingArtifactError):
        read_layout(tmp_path / "missing.txt")
    bad = tmp_path / "bad.txt"
    bad.write_text("1 0.0\n")
    with pytest.raises(ParseError):
        read_layout(bad)
