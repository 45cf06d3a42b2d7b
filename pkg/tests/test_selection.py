import numpy as np
import pytest

from bifgraph.selection import (
    cardinality_objective,
    contour_select,
    has_mirror,
    normalize_layout,
    schematic,
    weighted_objective,
)

LINE = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
TRIANGLE = np.array([[-1.0, 0.0], [0.0, 1.0], [1.0, 0.0]])


def test_schematic():
    u = np.array([1.0, -2.0, 3.0])
    assert schematic(u) == 6.0
    assert schematic(u, np.array([1.0, 0.0, 2.0])) == 7.0


def test_objectives():
    assert weighted_objective(np.array([1.0, 0.0, -1.0]), LINE) == pytest.approx(-2.0)
    assert cardinality_objective(np.ones(3), LINE) == 2.0


def test_normalize_layout():
    out = normalize_layout(np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 2.0]]))
    assert np.allclose(out.mean(axis=0), 0.0)
    assert np.abs(out).max() == pytest.approx(1.0)
    assert np.allclose(normalize_layout(np.array([[3.0, 4.0]])), 0.0)


def test_mirror_detection():
    assert has_mirror(np.array([1.0, 0.0, 1.0]), TRIANGLE)
    assert not has_mirror(np.array([1.0, 0.0, 2.0]), TRIANGLE)


def test_contour_select_minimizes_the_objective(p3_bundle):
    coords = np.array([[0.0, 0.0], [1.0, 0.0], [5.0, 0.0]])
    chosen = contour_select(np.array([1.0, 2.0, 5.0]), coords, p3_bundle.group)
    assert chosen.tolist() == [5.0, 2.0, 1.0]


def test_contour_select_breaks_ties_lexicographically(p3_bundle):
    chosen = contour_select(np.array([1.0, 2.0, 5.0]), LINE, p3_bundle.group)
    assert chosen.tolist() == [1.0, 2.0, 5.0]


def test_contour_select_keeps_signs(p3_bundle):
    chosen = contour_select(np.array([-1.0, 0.0, 3.0]), LINE, p3_bundle.group, objective="cardinality")
    assert sorted(chosen.tolist()) == [-1.0, 0.0, 3.0]
