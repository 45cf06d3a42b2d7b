import numpy as np
import pytest

from bifgraph.basis import symmetry_adapted_basis, write_basis, write_projection_bases
from bifgraph.graphs import laplacian
from bifgraph.pipeline import analyze_graph


def test_p3_basis(p3_bundle):
    basis = p3_bundle.basis
    assert basis.m == 3
    assert basis.eigenvalues == pytest.approx([0.0, 1.0, 3.0], abs=1e-12)
    assert basis.tags.tolist() == [1, 2, 1]
    assert np.allclose(basis.psi[:, 1], np.array([1.0, 0.0, -1.0]) / np.sqrt(2.0))
    assert np.allclose(basis.psi[:, 0], np.full(3, 1.0 / np.sqrt(3.0)))


def test_basis_is_orthonormal_and_adapted(p3_bundle):
    basis = p3_bundle.basis
    lap = laplacian(p3_bundle.graph)
    assert np.allclose(basis.psi.T @ basis.psi, np.eye(basis.m))
    assert np.allclose(lap @ basis.psi, basis.psi * basis.eigenvalues)
    dec = p3_bundle.decompositions[0]
    for j, k in enumerate(basis.tags):
        proj = dec.component(int(k)).projector
        assert np.allclose(proj @ basis.psi[:, j], basis.psi[:, j])


def test_basis_on_c4_is_adapted(c4_graph):
    bundle = analyze_graph(c4_graph, layout_cfg={"restarts": 1})
    basis = bundle.basis
    assert basis.m == 4
    assert basis.eigenvalues == pytest.approx([0.0, 2.0, 2.0, 4.0], abs=1e-10)
    dec = bundle.decompositions[0]
    for j, k in enumerate(basis.tags):
        proj = dec.component(int(k)).projector
        assert np.allclose(proj @ basis.psi[:, j], basis.psi[:, j])


def test_truncated_basis(p3_bundle):
    lap = laplacian(p3_bundle.graph)
    basis = symmetry_adapted_basis(lap, p3_bundle.spectrum, p3_bundle.lattice,
                                   p3_bundle.decompositions, p3_bundle.arrows, m=2)
    assert basis.psi.shape == (3, 2)
    assert basis.coords[(0, 1)].shape == (2, 2)


def test_projection_coordinates(p3_bundle):
    basis = p3_bundle.basis
    coords = basis.coords[(0, 2)]
    assert coords.shape == (3, 1)
    assert np.allclose(np.abs(coords[:, 0]), [0.0, 1.0, 0.0])
    assert basis.coords[(0, 3)].shape == (3, 0)


def test_write_basis(tmp_path, p3_bundle):
    path = tmp_path / "basis.txt"
    write_basis(p3_bundle.basis, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 6
    assert lines[2].split()[0] == "2"
    assert lines[2].split()[2] == "2"
    assert len(lines[3].split()) == 3


def test_write_projection_bases(tmp_path, p3_bundle):
    path = tmp_path / "projection_bases.txt"
    write_projection_bases(p3_bundle.decompositions, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "0 1 2"
    assert lines[3] == "0 2 1"
    psi_path = tmp_path / "projection_bases_psi.txt"
    write_projection_bases(p3_bundle.decompositions, psi_path, basis=p3_bundle.basis)
    assert psi_path.read_text().splitlines()[0] == "0 1 2"
