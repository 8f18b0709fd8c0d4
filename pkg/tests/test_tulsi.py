import math
import warnings

import numpy as np
import pytest

from powerwalk.search import build_model, compute_alpha, iterate_search, overlap_ws, overlap_wt
from powerwalk.torus import TorusGrid
from powerwalk.tulsi import (
    alpha_delta_estimate,
    block_step_matrix,
    build_tulsi,
    circuit_step_matrix,
    circuit_trajectory,
    compute_alpha_delta,
    delta_state,
    iterate_tulsi,
    tulsi_overlaps,
    tulsi_success,
    tune_delta,
    x_delta_matrix,
)


def test_build_rejects_bad_delta():
    model = build_model(TorusGrid(5), 1)
    with pytest.raises(ValueError):
        build_tulsi(model, -0.1)
    with pytest.raises(ValueError):
        build_tulsi(model, math.pi / 2)


def test_delta_zero_reduces_to_plain_model():
    model = build_model(TorusGrid(5), 1)
    tm = build_tulsi(model, 0.0)
    assert tm.a_pi == 0.0
    # identical trajectories, exactly
    plain = iterate_search(model, 25).trajectory
    controlled = iterate_tulsi(tm, 25).trajectory
    assert np.array_equal(plain, controlled)
    # identical alpha and overlaps
    a_plain, est_plain = compute_alpha(model, method="secular")
    a_ctrl, est_ctrl = compute_alpha_delta(tm)
    assert a_ctrl == pytest.approx(a_plain, abs=1e-13)
    assert est_ctrl == pytest.approx(est_plain, abs=1e-13)
    ws, wt = tulsi_overlaps(tm, a_ctrl)
    assert ws == pytest.approx(overlap_ws(model, a_plain), abs=1e-12)
    assert wt == pytest.approx(overlap_wt(model), abs=1e-12)


def test_limiting_overlaps_near_pi_half():
    model = build_model(TorusGrid(5), 1)
    tm = build_tulsi(model, math.pi / 2 - 1e-6)
    assert tm.a_pi == pytest.approx(1.0, abs=1e-9)
    assert np.max(np.abs(tm.target_vector[:-1])) < 1e-5


def test_schedule_identity():
    model = build_model(TorusGrid(33), 3)
    delta = tune_delta(model, "balanced")
    n = 33 * 33
    assert model.t * math.tan(delta) ** 2 == pytest.approx(math.log(n), rel=1e-12)


def test_tune_delta_original():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # side 32 is bipartite; formula check only
        model = build_model(TorusGrid(32), 1)
    delta = tune_delta(model, "original_tulsi")
    assert math.tan(delta) ** 2 == pytest.approx(math.log(1024), rel=1e-12)
    assert delta == pytest.approx(math.atan(math.sqrt(6.931471805599453)), rel=1e-12)


def test_tune_delta_errors_and_clamps():
    model3 = build_model(TorusGrid(17), 3)
    with pytest.raises(ValueError):
        tune_delta(model3, "original_tulsi")
    big_t = build_model(TorusGrid(5), 5)  # t=5 > ln 25 ~ 3.2
    with pytest.raises(ValueError):
        tune_delta(big_t, "balanced")
    assert tune_delta(big_t, "optimal_QO") == 0.0
    mid = build_model(TorusGrid(65), 3)  # ln 4225 ~ 8.35, ratio clamps at 1
    assert math.tan(tune_delta(mid, "optimal_QO")) ** 2 == pytest.approx(1.0)


def test_circuit_equals_block_form():
    grid = TorusGrid(5)
    for delta in (0.0, 0.4, 1.1):
        C = circuit_step_matrix(grid, 1, (1, 3), delta)
        B = block_step_matrix(grid, 1, (1, 3), delta)
        assert np.max(np.abs(C - B)) <= 1e-12


def test_circuit_unitary():
    G = circuit_step_matrix(TorusGrid(3), 1, (0, 0), 0.8)
    assert np.max(np.abs(G @ G.T - np.eye(G.shape[0]))) <= 1e-12


def test_reduced_matches_circuit_trajectory():
    grid = TorusGrid(5)
    m = (2, 4)
    delta = 0.9
    model = build_model(grid, 1, m)
    tm = build_tulsi(model, delta)
    reduced = iterate_tulsi(tm, 40).trajectory
    full = circuit_trajectory(grid, 1, m, delta, 40)
    assert np.max(np.abs(reduced - full)) <= 1e-9


def test_reduced_iteration_is_unitary():
    model = build_model(TorusGrid(9), 1)
    tm = build_tulsi(model, 0.6)
    T = tm.target_vector
    phases = np.exp(1j * tm.phase_vector)
    state = np.zeros(tm.reduced_dim, dtype=complex)
    state[0] = 1.0
    for _ in range(60):
        state = state - 2.0 * np.dot(T, state) * T
        state = state * phases
    assert abs(np.linalg.norm(state) - 1.0) <= 1e-12


def test_delta_state_definition():
    d = 0.7
    vec = delta_state(d)
    assert vec[0] == pytest.approx(math.cos(d))
    assert vec[1] == pytest.approx(math.sin(d))
    X = x_delta_matrix(d)
    assert np.allclose(X @ vec, [1.0, 0.0])


def test_wt_gains_one_plus_tan_squared():
    # direct summation reproduces the (1 + tan^2 delta) gain of wt^2 while
    # the clamp is inactive
    model = build_model(TorusGrid(33), 1)
    alpha0, _ = compute_alpha(model, method="secular")
    _, wt0 = tulsi_overlaps(build_tulsi(model, 0.0), alpha0)
    ratios = []
    for delta in (0.0, 0.2, 0.4, 0.6):
        tm = build_tulsi(model, delta)
        a_d, _ = compute_alpha_delta(tm)
        _, wt = tulsi_overlaps(tm, a_d)
        closed_form = math.sqrt(
            model.t * (1 + math.tan(delta) ** 2) / math.log(33 * 33)
        )
        ratios.append(wt / closed_form)
        assert wt == pytest.approx(wt0 / math.cos(delta), rel=1e-12)
    assert max(ratios) / min(ratios) < 1.1


def test_alpha_delta_scaling_band():
    # alpha_delta * sqrt(N) stays bounded once t tan^2(delta) >= ln N
    values = []
    for side in (17, 33, 65):
        model = build_model(TorusGrid(side), 1)
        tm = build_tulsi(model, tune_delta(model, "original_tulsi"))
        a_d, _ = compute_alpha_delta(tm)
        values.append(a_d * side)
    assert max(values) < 2.0
    assert max(values) / min(values) < 2.0


def test_p_s_improves_with_tan2_at_fixed_t():
    model = build_model(TorusGrid(65), 1)
    previous = None
    for delta in (0.0, 0.3, 0.6, 0.9):
        tm = build_tulsi(model, delta)
        res = tulsi_success(tm)
        if previous is not None:
            assert res.p_s >= previous - 1e-12
        previous = res.p_s
    assert previous <= 1.0


def test_tulsi_success_counters():
    model = build_model(TorusGrid(17), 3)
    tm = build_tulsi(model, tune_delta(model, "balanced"))
    res = tulsi_success(tm)
    assert res.Q_G == 3 * res.Q_O
    alpha, _ = compute_alpha_delta(tm)
    assert res.Q == math.floor(math.pi / (2 * alpha))


def test_estimate_collapses_to_plain_at_zero():
    model = build_model(TorusGrid(9), 1)
    tm = build_tulsi(model, 0.0)
    _, est_plain = compute_alpha(model)
    assert alpha_delta_estimate(tm) == pytest.approx(est_plain, rel=1e-12)
