import numpy as np
import pytest

from bifgraph.gnga import action, gradient_coeffs, hessian_coeffs, signature
from bifgraph.graphs import laplacian
from bifgraph.nonlinearities import Cubic
from bifgraph.pipeline import analyze_graph


def test_signature_counts_negative_eigenvalues():
    mi, values, tol = signature(np.diag([-1.0, 0.0, 2.0]))
    assert mi == 1
    assert values.tolist() == [-1.0, 0.0, 2.0]
    assert tol == pytest.approx(2e-6)


def test_trivial_branch_index(p3_solver):
    for s, expected in [(-0.5, 0), (0.5, 1), (2.0, 2), (3.5, 3)]:
        point = p3_solver.make_point(np.zeros(3), s)
        assert point.signature == expected
        assert point.grad_norm == 0.0
        assert point.symmetry == 0


def test_gradient_vanishes_on_the_constant_branch(p3_solver, on_constant_branch):
    point = on_constant_branch(p3_solver, -1.0)
    assert point.grad_norm < 1e-12
    assert point.anomalous_constant
    assert point.symmetry == 1


def test_constant_branch_action(p3_solver, on_constant_branch):
    for s in (-0.5, -2.0):
        point = on_constant_branch(p3_solver, s)
        assert point.action == pytest.approx(3.0 * s ** 2 / 4.0)


def test_action_matches_direct_formula(p3_graph):
    lap = laplacian(p3_graph)
    u = np.array([0.3, -0.2, 0.5])
    expected = 0.5 * u @ lap @ u - np.sum(0.5 * 0.7 * u ** 2 + 0.25 * u ** 4)
    assert action(u, 0.7, Cubic(), lap) == pytest.approx(expected)


def test_hessian_is_the_jacobian_of_the_gradient(p3_bundle):
    a = np.array([0.4, -0.3, 0.2])
    h = hessian_coeffs(a, 0.6, Cubic(), p3_bundle.basis)
    step = 1e-6
    numeric = np.column_stack([
        (gradient_coeffs(a + step * e, 0.6, Cubic(), p3_bundle.basis)
         - gradient_coeffs(a - step * e, 0.6, Cubic(), p3_bundle.basis)) / (2 * step)
        for e in np.eye(3)
    ])
    assert np.allclose(h, numeric, atol=1e-6)
    assert np.allclose(h, h.T)


def test_symmetry_detection(p3_solver):
    assert p3_solver.symmetry_of(np.zeros(3)) == 0
    assert p3_solver.symmetry_of(np.array([1.0, 2.0, 1.0])) == 1
    assert p3_solver.symmetry_of(np.array([1.0, 0.0, -1.0])) == 2
    assert p3_solver.symmetry_of(np.array([1.0, 2.0, 5.0])) == 3


def test_tgnga_returns_to_the_constant_branch(p3_solver, on_constant_branch):
    exact = on_constant_branch(p3_solver, -1.0)
    guess = exact.p.copy()
    guess[:3] *= 1.02
    v = np.zeros(4)
    v[3] = 1.0
    result = p3_solver.tgnga(guess, v)
    assert result.converged
    assert result.point.s == pytest.approx(-1.0)
    assert np.allclose(result.point.u, 1.0, atol=1e-9)
    assert result.residuals[-1] <= 1e-10


def test_tgnga_iteration_cap(p3_solver, on_constant_branch):
    guess = on_constant_branch(p3_solver, -1.0).p
    guess[:3] *= 1.5
    v = np.zeros(4)
    v[3] = 1.0
    result = p3_solver.tgnga(guess, v, max_iter=0)
    assert not result.converged
    assert result.point is None
    assert result.reason == "iteration cap"


def test_secant_on_trivial_branch(p3_solver):
    above = p3_solver.make_point(np.zeros(3), 1.05)
    below = p3_solver.make_point(np.zeros(3), 0.95)
    result = p3_solver.secant(above, below)
    assert result.converged
    assert result.point.s == pytest.approx(1.0, abs=1e-8)
    assert result.point.degenerate
    critical = p3_solver.critical_eigenspace(result.point.a, result.point.s)
    assert critical.dim == 1
    assert np.allclose(np.abs(critical.vectors[:, 0]), [0.0, 1.0, 0.0])


@pytest.mark.parametrize("s_star", [0.0, 1.0, 3.0])
def test_secant_locates_trivial_branch_crossings_tightly(p3_solver, s_star):
    for width in (0.05, 0.013):
        above = p3_solver.make_point(np.zeros(3), s_star + width)
        below = p3_solver.make_point(np.zeros(3), s_star - 0.7 * width)
        result = p3_solver.secant(above, below)
        assert result.converged
        assert abs(result.point.s - s_star) < 1e-8


def test_secant_on_constant_branch(p3_solver, on_constant_branch):
    left = on_constant_branch(p3_solver, -1.4)
    right = on_constant_branch(p3_solver, -1.6)
    assert (left.signature, right.signature) == (2, 3)
    result = p3_solver.secant(left, right)
    assert result.converged
    assert result.point.s == pytest.approx(-1.5, abs=1e-8)
    exact = on_constant_branch(p3_solver, -1.5)
    critical = p3_solver.critical_eigenspace(exact.a, exact.s)
    assert critical.dim == 1
    assert np.allclose(np.abs(critical.vectors[:, 0]), [0.0, 0.0, 1.0])


def test_secant_needs_an_index_change(p3_solver):
    point = p3_solver.make_point(np.zeros(3), 0.5)
    result = p3_solver.secant(point, p3_solver.make_point(np.zeros(3), 0.6))
    assert not result.converged
    assert result.reason == "no index change"


def test_cgnga_finds_the_antisymmetric_daughter(p3_solver):
    star = p3_solver.make_point(np.zeros(3), 1.0, degenerate=True)
    eps = 0.05
    subspace = np.eye(3)[:, [1]]
    guess = star.p + eps * np.append(subspace[:, 0], 0.0)
    result = p3_solver.cgnga(star, guess, subspace, eps)
    assert result.converged
    assert result.point.s == pytest.approx(1.0 - eps ** 2 / 2.0, abs=1e-8)
    assert abs(result.point.a[1]) == pytest.approx(eps)
    assert result.point.symmetry == 2
    assert p3_solver.stats.cgnga_calls == 1


@pytest.mark.parametrize("graph_name", ["p3_graph", "c4_graph"])
def test_gradient_is_equivariant(request, graph_name):
    graph = request.getfixturevalue(graph_name)
    bundle = analyze_graph(graph, layout_cfg={"restarts": 1})
    group = bundle.group
    psi = bundle.basis.psi
    rng = np.random.default_rng(3)
    a = rng.standard_normal(psi.shape[1])
    for g in group.generators:
        rep = psi.T @ group.action_matrix(g) @ psi
        moved = gradient_coeffs(rep @ a, 0.4, Cubic(), bundle.basis)
        assert np.allclose(moved, rep @ gradient_coeffs(a, 0.4, Cubic(), bundle.basis), atol=1e-12)


@pytest.mark.parametrize(
    "index, guess, exact",
    [
        (1, [1.03, 0.98, 1.03], [1.0, 1.0, 1.0]),
        (2, [1.45, 0.0, -1.45], [np.sqrt(2.0), 0.0, -np.sqrt(2.0)]),
    ],
)
def test_newton_stays_in_the_fixed_point_space(p3_solver, p3_bundle, index, guess, exact):
    psi = p3_bundle.basis.psi
    p_g = np.append(psi.T @ np.array(guess), -1.0)
    v = np.zeros(4)
    v[3] = 1.0
    result = p3_solver.tgnga(p_g, v, max_iter=20)
    assert result.converged
    fixed = p3_bundle.lattice.fixed_bases[index]
    u = result.point.u
    assert np.allclose(fixed @ (fixed.T @ u), u, atol=1e-10)
    assert np.allclose(u, exact, atol=1e-8)
    assert result.point.s == pytest.approx(-1.0)
