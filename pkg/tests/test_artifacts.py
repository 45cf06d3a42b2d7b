import numpy as np
import pytest

from bifgraph.artifacts import load_analysis, save_analysis
from bifgraph.errors import MissingArtifactError


def test_round_trip(tmp_path, p3_bundle):
    save_analysis(p3_bundle, tmp_path)
    again = load_analysis(tmp_path)

    assert again.graph.n == 3 and again.graph.edges == p3_bundle.graph.edges
    assert again.graph.name == "P3"
    assert np.allclose(again.layout.coords, p3_bundle.layout.coords)
    assert np.array_equal(again.group.perms, p3_bundle.group.perms)
    assert again.group.odd
    assert again.lattice.types == p3_bundle.lattice.types
    assert [s.elements.tolist() for s in again.lattice.symmetries] == \
        [s.elements.tolist() for s in p3_bundle.lattice.symmetries]
    assert [d.dims for d in again.decompositions] == [d.dims for d in p3_bundle.decompositions]
    assert again.arrows == p3_bundle.arrows
    assert [c.types for c in again.classes] == [[0], [1, 2], [3]]
    assert np.allclose(again.basis.psi, p3_bundle.basis.psi)
    assert again.basis.tags.tolist() == [1, 2, 1]
    assert set(again.basis.coords) == set(p3_bundle.basis.coords)
    assert np.allclose(again.decompositions[0].component(1).projector,
                       p3_bundle.decompositions[0].component(1).projector)


def test_missing_bundle(tmp_path):
    with pytest.raises(MissingArtifactError):
        load_analysis(tmp_path)
