import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powerwalk.fullwalk import (
    apply_coin,
    apply_oracle,
    apply_shift,
    apply_walk,
    basis_index,
    coin_matrix,
    coin_uniform_state,
    correspondence_report,
    expected_nonreal_phases,
    full_dim,
    index_port,
    path_basis_vectors,
    path_component_check,
    path_ports,
    projection_sum,
    shift_matrix,
    uniform_superposition,
    vertex_overlaps,
    walk_matrix,
    walk_spectrum,
)
from powerwalk.torus import PathPort, TorusGrid, powered_rotation_apply


def random_state(grid, t, seed=0, complex_=True):
    rng = np.random.default_rng(seed)
    dim = full_dim(grid, t)
    vec = rng.normal(size=dim)
    if complex_:
        vec = vec + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def test_basis_index_round_trip():
    grid = TorusGrid(4)
    for i in range(full_dim(grid, 2)):
        assert basis_index(grid, 2, index_port(grid, 2, i)) == i


def test_shift_on_basis_state():
    grid = TorusGrid(5)
    state = np.zeros(full_dim(grid, 1))
    state[basis_index(grid, 1, PathPort((1, 2), (0,)))] = 1.0
    out = apply_shift(grid, 1, state)
    assert out[basis_index(grid, 1, PathPort((2, 2), (1,)))] == 1.0
    assert np.count_nonzero(out) == 1


def test_shift_is_involution():
    grid = TorusGrid(5)
    state = random_state(grid, 1, seed=1)
    assert np.max(np.abs(apply_shift(grid, 1, apply_shift(grid, 1, state)) - state)) <= 1e-14


def test_shift_matrix_symmetric_permutation_no_fixed_points():
    grid = TorusGrid(3)
    S = shift_matrix(grid, 3)
    assert np.array_equal(S, S.T)
    assert np.all(S.sum(axis=0) == 1.0)
    assert np.all(np.diag(S) == 0.0)


def test_coin_fixes_uniform_and_negates_complement():
    grid = TorusGrid(4)
    psi = coin_uniform_state(grid, 1, (2, 2))
    assert np.allclose(apply_coin(grid, 1, psi), psi)
    # orthogonal within one vertex block: difference of two labels
    vec = np.zeros(full_dim(grid, 1))
    vec[basis_index(grid, 1, PathPort((2, 2), (0,)))] = 2**-0.5
    vec[basis_index(grid, 1, PathPort((2, 2), (1,)))] = -(2**-0.5)
    assert np.allclose(apply_coin(grid, 1, vec), -vec)


def test_coin_is_involution():
    grid = TorusGrid(4)
    state = random_state(grid, 2, seed=2)
    assert np.max(np.abs(apply_coin(grid, 2, apply_coin(grid, 2, state)) - state)) <= 1e-14


def test_oracle_reflects_marked_only():
    grid = TorusGrid(4)
    m = (1, 3)
    psi_m = coin_uniform_state(grid, 1, m)
    assert np.allclose(apply_oracle(grid, 1, m, psi_m), -psi_m)
    psi_u = coin_uniform_state(grid, 1, (0, 0))
    assert np.allclose(apply_oracle(grid, 1, m, psi_u), psi_u)


def test_oracle_rejects_bad_vertex():
    grid = TorusGrid(4)
    with pytest.raises(ValueError):
        apply_oracle(grid, 1, (4, 0), random_state(grid, 1))


def test_unitarity_many_random_applications():
    grid = TorusGrid(5)
    state = random_state(grid, 1, seed=3)
    for i in range(1000):
        state = apply_walk(grid, 1, state)
        state = apply_oracle(grid, 1, (2, 2), state)
    assert abs(np.linalg.norm(state) - 1.0) <= 1e-12


def test_walk_matrix_is_orthogonal():
    grid = TorusGrid(3)
    W = walk_matrix(grid, 1)
    assert np.max(np.abs(W @ W.T - np.eye(W.shape[0]))) <= 1e-12
    C = coin_matrix(grid, 1)
    S = shift_matrix(grid, 1)
    assert np.allclose(W, S @ C)


def test_uniform_state_is_walk_fixed_point():
    grid = TorusGrid(5)
    psi = uniform_superposition(grid, 1)
    assert np.allclose(apply_walk(grid, 1, psi), psi)


def test_spectrum_budget():
    with pytest.raises(ValueError, match="budget"):
        walk_spectrum(TorusGrid(3), 5)


def test_spectrum_phases_match_prediction_L5_t1():
    grid = TorusGrid(5)
    spec = walk_spectrum(grid, 1)
    measured = np.sort(spec.signed_phases[spec.nonreal_mask()])
    assert measured.size == 48
    assert np.max(np.abs(measured - expected_nonreal_phases(grid, 1))) <= 1e-9


def test_cube_relation_L5_t3():
    grid = TorusGrid(5)
    spec = walk_spectrum(grid, 3)
    cos_measured = np.sort(np.cos(spec.signed_phases[spec.nonreal_mask()]))
    cos_expected = np.sort(np.cos(expected_nonreal_phases(grid, 3)))
    assert np.max(np.abs(cos_measured - cos_expected)) <= 1e-9


def test_projection_sums():
    grid = TorusGrid(5)
    spec = walk_spectrum(grid, 1)
    mask = spec.nonreal_mask()
    assert np.max(np.abs(spec.projection_sums[mask] - 0.5)) <= 1e-9
    psi = uniform_superposition(grid, 1)
    assert projection_sum(grid, 1, psi) == pytest.approx(1.0, abs=1e-12)
    # The Schur basis is arbitrary inside the degenerate +-1 eigenspaces, so
    # test the basis-free totals: the +1 eigenspace meets span{psi_u} exactly
    # in the uniform state (total weight 1), the -1 eigenspace not at all.
    plus = sum(
        spec.projection_sums[i] for i, k in enumerate(spec.kinds) if k == "plus_one"
    )
    minus = sum(
        spec.projection_sums[i] for i, k in enumerate(spec.kinds) if k == "minus_one"
    )
    assert plus == pytest.approx(1.0, abs=1e-9)
    assert minus == pytest.approx(0.0, abs=1e-9)


def test_path_basis_vectors_are_shift_eigenvectors():
    grid = TorusGrid(3)
    for port in path_ports(grid, 3)[:20]:
        plus, minus, _ = path_basis_vectors(grid, 3, port)
        assert np.allclose(apply_shift(grid, 3, plus), plus)
        assert np.allclose(apply_shift(grid, 3, minus), -minus)


def test_path_components_match_formula_L3_t3():
    grid = TorusGrid(3)
    spec = walk_spectrum(grid, 3)
    ports = path_ports(grid, 3)
    worst = 0.0
    for i in np.flatnonzero(spec.nonreal_mask()):
        vec = spec.vectors[:, i]
        ev = spec.eigenvalues[i]
        for port in ports:
            comp = path_component_check(grid, 3, vec, ev, port)
            worst = max(
                worst,
                abs(comp.plus_measured - comp.plus_predicted),
                abs(comp.minus_measured - comp.minus_predicted),
            )
    assert worst <= 1e-9


def test_path_component_sign_flip_is_consistent():
    grid = TorusGrid(3)
    spec = walk_spectrum(grid, 1)
    idx = int(np.flatnonzero(spec.nonreal_mask())[0])
    vec = spec.vectors[:, idx]
    ev = spec.eigenvalues[idx]
    port = path_ports(grid, 1)[0]
    partner = powered_rotation_apply(grid, 1, port)
    fwd = path_component_check(grid, 1, vec, ev, port)
    bwd = path_component_check(grid, 1, vec, ev, partner)
    assert fwd.minus_measured == pytest.approx(-bwd.minus_measured, abs=1e-12)
    assert fwd.minus_predicted == pytest.approx(-bwd.minus_predicted, abs=1e-12)
    assert fwd.plus_measured == pytest.approx(bwd.plus_measured, abs=1e-12)


def test_vertex_overlaps_definition():
    grid = TorusGrid(4)
    state = random_state(grid, 1, seed=5)
    a = vertex_overlaps(grid, 1, state)
    u = (3, 1)
    # a_u = <state|psi_u>, and vdot conjugates its first argument
    direct = np.vdot(state, coin_uniform_state(grid, 1, u))
    assert a[grid.vertex_index(u)] == pytest.approx(direct, abs=1e-12)


def test_even_step_count_allowed_in_spectrum_paths():
    # even t is legal for the operators and spectrum; doubled-back paths
    # (fixed by the powered rotation) are excluded from the path basis
    grid = TorusGrid(3)
    ports = path_ports(grid, 2)
    assert 2 * len(ports) < full_dim(grid, 2)  # some paths double back
    for port in ports:
        plus, minus, _ = path_basis_vectors(grid, 2, port)
        assert np.allclose(apply_shift(grid, 2, plus), plus)
        assert np.allclose(apply_shift(grid, 2, minus), -minus)
    doubled = PathPort((0, 0), (0, 1))  # right then left: returns to start
    with pytest.raises(ValueError, match="doubles back"):
        path_basis_vectors(grid, 2, doubled)
    spec = walk_spectrum(grid, 2)
    assert np.max(np.abs(np.abs(spec.eigenvalues) - 1.0)) <= 1e-12


def test_correspondence_report_even_side_detects_bipartite_mode():
    rep = correspondence_report(TorusGrid(4), 1)
    assert rep.bipartite_mode_detected
    assert rep.passed(1e-9)
    assert rep.invariant_dim == 2 * 16 - 3  # one conjugate pair lost to -1


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_walk_preserves_norm_random_states(seed):
    grid = TorusGrid(3)
    state = random_state(grid, 1, seed=seed)
    out = apply_walk(grid, 1, state)
    assert abs(np.linalg.norm(out) - 1.0) <= 1e-12
