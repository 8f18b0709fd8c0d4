"""Exact full-space simulation of the multi-step flip-flop walk.

The walk on the t-th graph power lives in the N*d^t dimensional space spanned
by |vertex, g_1..g_t>. This module builds the shift S_t (permutation by the
powered rotation map), the coin C_t (reflection about the per-vertex uniform
label states), the walk W_t = S_t C_t, and the marking oracle
O_t = I - 2|psi_m><psi_m|, all as dense operators. It is the brute-force
oracle that validates the spectral correspondence between W_t and the
adjacency matrix, and the reduced-space search engine built on it.

States are plain complex vectors indexed by vertex-major, then label sequence
with g_1 as the most significant base-d digit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .torus import (
    DEGREE,
    REVERSE,
    STEP,
    PathPort,
    TorusGrid,
    mode_cosines,
    powered_rotation_apply,
)

DEFAULT_DENSE_BUDGET = 4096

# Eigenvalues within this distance of +-1 are classified as the +-1 subspace.
REAL_EIGENVALUE_TOL = 1e-8


def full_dim(grid: TorusGrid, t: int) -> int:
    return grid.vertex_count * DEGREE**t


def basis_index(grid: TorusGrid, t: int, port: PathPort) -> int:
    """Index of the basis state |vertex, g_1..g_t|."""
    if len(port.labels) != t:
        raise ValueError(f"expected {t} labels, got {len(port.labels)}")
    rest = 0
    for g in port.labels:
        rest = rest * DEGREE + g
    return grid.vertex_index(port.vertex) * DEGREE**t + rest


def index_port(grid: TorusGrid, t: int, index: int) -> PathPort:
    v, rest = divmod(index, DEGREE**t)
    labels = []
    for _ in range(t):
        rest, g = divmod(rest, DEGREE)
        labels.append(g)
    return PathPort(grid.vertex_coords(v), tuple(reversed(labels)))


def shift_permutation(grid: TorusGrid, t: int) -> np.ndarray:
    """Self-inverse permutation p with S_t|i> = |p(i)>, built vectorized.

    Walks every basis state's label sequence across the torus, reversing each
    label, then reverses the label order.
    """
    L = grid.side
    d_t = DEGREE**t
    dim = grid.vertex_count * d_t
    idx = np.arange(dim)
    v, rest = np.divmod(idx, d_t)
    x = v % L
    y = v // L
    labels = np.empty((t, dim), dtype=np.int64)
    for i in range(t - 1, -1, -1):
        rest, labels[i] = np.divmod(rest, DEGREE)
    dx = np.array([s[0] for s in STEP])
    dy = np.array([s[1] for s in STEP])
    rev = np.array(REVERSE)
    for i in range(t):
        g = labels[i]
        x = (x + dx[g]) % L
        y = (y + dy[g]) % L
        labels[i] = rev[g]
    out = np.zeros(dim, dtype=np.int64)
    for i in range(t - 1, -1, -1):
        out = out * DEGREE + labels[i]
    return (y * L + x) * d_t + out


def _check_state(grid: TorusGrid, t: int, state: np.ndarray) -> np.ndarray:
    state = np.asarray(state)
    if state.shape != (full_dim(grid, t),):
        raise ValueError(
            f"state has shape {state.shape}, expected ({full_dim(grid, t)},)"
        )
    return state


def apply_shift(grid: TorusGrid, t: int, state: np.ndarray) -> np.ndarray:
    state = _check_state(grid, t, state)
    return state[shift_permutation(grid, t)]


def apply_coin(grid: TorusGrid, t: int, state: np.ndarray) -> np.ndarray:
    """Reflect each vertex block about its uniform label vector."""
    state = _check_state(grid, t, state)
    blocks = state.reshape(grid.vertex_count, DEGREE**t)
    mean = blocks.mean(axis=1, keepdims=True)
    return (2.0 * mean - blocks).ravel()


def apply_walk(grid: TorusGrid, t: int, state: np.ndarray) -> np.ndarray:
    return apply_shift(grid, t, apply_coin(grid, t, state))


def coin_uniform_state(grid: TorusGrid, t: int, u: tuple[int, int]) -> np.ndarray:
    """|psi^t_u> = d^{-t/2} sum_g |u, g>."""
    if not grid.contains(u):
        raise ValueError(f"vertex {u} outside grid")
    d_t = DEGREE**t
    state = np.zeros(full_dim(grid, t))
    i = grid.vertex_index(u) * d_t
    state[i : i + d_t] = d_t**-0.5
    return state


def uniform_superposition(grid: TorusGrid, t: int) -> np.ndarray:
    """The starting state: uniform over all basis states, eigenvalue 1 of W_t."""
    dim = full_dim(grid, t)
    return np.full(dim, dim**-0.5)


def apply_oracle(
    grid: TorusGrid, t: int, m: tuple[int, int], state: np.ndarray
) -> np.ndarray:
    """O_t = I - 2|psi^t_m><psi^t_m|: negate the marked uniform-coin component."""
    if not grid.contains(m):
        raise ValueError(f"marked vertex {m} outside grid")
    state = _check_state(grid, t, state)
    d_t = DEGREE**t
    i = grid.vertex_index(m) * d_t
    overlap = state[i : i + d_t].sum() * d_t**-0.5
    out = np.array(state, dtype=complex if np.iscomplexobj(state) else float)
    out[i : i + d_t] -= 2.0 * overlap * d_t**-0.5
    return out


def shift_matrix(grid: TorusGrid, t: int) -> np.ndarray:
    perm = shift_permutation(grid, t)
    S = np.zeros((perm.size, perm.size))
    S[np.arange(perm.size), perm] = 1.0
    return S


def coin_matrix(grid: TorusGrid, t: int) -> np.ndarray:
    d_t = DEGREE**t
    block = 2.0 * np.full((d_t, d_t), 1.0 / d_t) - np.eye(d_t)
    return np.kron(np.eye(grid.vertex_count), block)


def walk_matrix(grid: TorusGrid, t: int) -> np.ndarray:
    # S_t is a row permutation, so S_t @ C_t is a row reordering of C_t.
    perm = shift_permutation(grid, t)
    return coin_matrix(grid, t)[perm, :]


def oracle_matrix(grid: TorusGrid, t: int, m: tuple[int, int]) -> np.ndarray:
    psi = coin_uniform_state(grid, t, m)
    return np.eye(psi.size) - 2.0 * np.outer(psi, psi)


def vertex_overlaps(grid: TorusGrid, t: int, state: np.ndarray) -> np.ndarray:
    """a_u = <state|psi^t_u> for every vertex u (length-N complex vector)."""
    state = _check_state(grid, t, state)
    blocks = np.conj(state).reshape(grid.vertex_count, DEGREE**t)
    return blocks.sum(axis=1) * DEGREE ** (-t / 2)


def projection_sum(grid: TorusGrid, t: int, state: np.ndarray) -> float:
    """sum_u |<state|psi^t_u>|^2, the weight inside span{|psi^t_u>}.

    Equals 1/2 for every unit eigenvector of W_t with non-real eigenvalue,
    1 for the uniform state, and 0 for +-1 eigenvectors orthogonal to the
    uniform-coin states.
    """
    a = vertex_overlaps(grid, t, state)
    return float(np.sum(np.abs(a) ** 2))


@dataclass
class WalkSpectrum:
    """Complete orthonormal eigendecomposition of W_t.

    ``vectors`` holds orthonormal eigenvectors as columns (from a Schur
    decomposition, so degenerate clusters are orthonormal too); ``kinds``
    classifies each eigenvalue as 'plus_one', 'minus_one' or 'complex'.
    """

    grid: TorusGrid
    t: int
    eigenvalues: np.ndarray
    vectors: np.ndarray
    kinds: list[str]
    projection_sums: np.ndarray = field(init=False)

    def __post_init__(self):
        a = np.conj(self.vectors).reshape(
            self.grid.vertex_count, DEGREE**self.t, -1
        ).sum(axis=1) * DEGREE ** (-self.t / 2)
        self.projection_sums = np.sum(np.abs(a) ** 2, axis=0)

    @property
    def signed_phases(self) -> np.ndarray:
        return np.angle(self.eigenvalues)

    def nonreal_mask(self) -> np.ndarray:
        return np.array([k == "complex" for k in self.kinds])

    def invariant_subspace_dim(self) -> int:
        """Dimension of the search-invariant subspace: the uniform state plus
        every non-real eigenvector."""
        return 1 + int(np.count_nonzero(self.nonreal_mask()))

    def eigenvalue_clusters(self, tol: float = 1e-8) -> list[np.ndarray]:
        """Indices grouped by (numerically) equal eigenvalue."""
        reps: list[complex] = []
        clusters: list[list[int]] = []
        for i, ev in enumerate(self.eigenvalues):
            for c, rep in enumerate(reps):
                if abs(ev - rep) <= tol:
                    clusters[c].append(i)
                    break
            else:
                reps.append(complex(ev))
                clusters.append([i])
        return [np.array(c) for c in clusters]


def walk_spectrum(
    grid: TorusGrid, t: int, budget: int = DEFAULT_DENSE_BUDGET
) -> WalkSpectrum:
    """Dense eigendecomposition of W_t via a real Schur form.

    W_t is real orthogonal, hence normal: its complex Schur form is diagonal
    and the Schur basis is an orthonormal eigenbasis, which keeps degenerate
    clusters well-behaved.
    """
    dim = full_dim(grid, t)
    if dim > budget:
        raise ValueError(
            f"dense eigendecomposition of dimension {dim} exceeds budget {budget}"
        )
    W = walk_matrix(grid, t)
    T, Z = scipy.linalg.schur(W, output="real")
    T, Z = scipy.linalg.rsf2csf(T, Z)
    off = T - np.diag(np.diag(T))
    if np.abs(off).max() > 1e-7:
        raise RuntimeError(
            "Schur form of the walk is not numerically diagonal; "
            f"max off-diagonal {np.abs(off).max():.3e}"
        )
    eigenvalues = np.diag(T).copy()
    kinds = []
    for ev in eigenvalues:
        if abs(ev - 1.0) <= REAL_EIGENVALUE_TOL:
            kinds.append("plus_one")
        elif abs(ev + 1.0) <= REAL_EIGENVALUE_TOL:
            kinds.append("minus_one")
        else:
            kinds.append("complex")
    return WalkSpectrum(grid, t, eigenvalues, Z, kinds)


def expected_nonreal_phases(grid: TorusGrid, t: int) -> np.ndarray:
    """Predicted signed eigenphases +-arccos(cos^t phi_k) over modes with
    |cos phi_k| < 1, sorted ascending."""
    cos = mode_cosines(grid)
    interior = cos[np.abs(cos) < 1.0 - 1e-12]
    phases = np.arccos(np.clip(interior**t, -1.0, 1.0))
    return np.sort(np.concatenate([phases, -phases]))


def path_ports(grid: TorusGrid, t: int) -> list[PathPort]:
    """One canonical port per length-t path (the lower basis index of the pair).

    For even t, ports fixed by the powered rotation map (paths that double
    back onto themselves) are skipped; their |p-> vectors vanish.
    """
    ports = []
    for i in range(full_dim(grid, t)):
        port = index_port(grid, t, i)
        partner = powered_rotation_apply(grid, t, port)
        j = basis_index(grid, t, partner)
        if i < j:
            ports.append(port)
    return ports


def path_basis_vectors(
    grid: TorusGrid, t: int, port: PathPort
) -> tuple[np.ndarray, np.ndarray, PathPort]:
    """|p+> and |p-> for the path named by ``port``, plus its partner port.

    |p+-> = (|u, g_1..g_t> +- |v, h_1..h_t>)/sqrt(2); both are eigenvectors of
    the shift, with eigenvalues +1 and -1.
    """
    partner = powered_rotation_apply(grid, t, port)
    i = basis_index(grid, t, port)
    j = basis_index(grid, t, partner)
    if i == j:
        raise ValueError(f"path {port} doubles back on itself; |p-> vanishes")
    dim = full_dim(grid, t)
    plus = np.zeros(dim)
    minus = np.zeros(dim)
    plus[i] = plus[j] = 2**-0.5
    minus[i] = 2**-0.5
    minus[j] = -(2**-0.5)
    return plus, minus, partner


@dataclass(frozen=True)
class PathComponents:
    """Measured vs predicted eigenvector components in the path basis."""

    plus_measured: complex
    plus_predicted: complex
    minus_measured: complex
    minus_predicted: complex


def path_component_check(
    grid: TorusGrid,
    t: int,
    vector: np.ndarray,
    eigenvalue: complex,
    port: PathPort,
) -> PathComponents:
    """Compare <Phi|p+-> against the closed forms driven by the vertex overlaps.

    For an eigenvector Phi of W_t with non-real eigenvalue e^{i phi} and a path
    between u and v:

        <Phi|p+> = sqrt(2/d^t) (a_u + a_v) / (1 + e^{-i phi})
        <Phi|p-> = sqrt(2/d^t) (a_u - a_v) / (1 - e^{-i phi})

    The minus form flips sign with the (u, v) ordering; measured and predicted
    flip together, so the comparison is ordering-safe.
    """
    partner = powered_rotation_apply(grid, t, port)
    i = basis_index(grid, t, port)
    j = basis_index(grid, t, partner)
    cvec = np.conj(vector)
    plus_measured = (cvec[i] + cvec[j]) * 2**-0.5
    minus_measured = (cvec[i] - cvec[j]) * 2**-0.5

    a = vertex_overlaps(grid, t, vector)
    a_u = a[grid.vertex_index(port.vertex)]
    a_v = a[grid.vertex_index(partner.vertex)]
    scale = (2.0 / DEGREE**t) ** 0.5
    conj_ev = np.conj(eigenvalue)
    plus_predicted = scale * (a_u + a_v) / (1.0 + conj_ev)
    minus_predicted = scale * (a_u - a_v) / (1.0 - conj_ev)
    return PathComponents(
        complex(plus_measured),
        complex(plus_predicted),
        complex(minus_measured),
        complex(minus_predicted),
    )


@dataclass
class CorrespondenceReport:
    """Numerical verdicts for the walk/adjacency spectral correspondence."""

    grid: TorusGrid
    t: int
    phase_multiset_dev: float
    nonreal_count: int
    expected_nonreal_count: int
    invariant_dim: int
    expected_invariant_dim: int
    projection_sum_dev: float
    overlap_law_dev: float
    uniform_intersection_dev: float
    minus_one_intersection_dev: float
    bipartite_mode_detected: bool
    component_dev: float | None = None

    def passed(self, tol: float = 1e-9) -> bool:
        checks = [
            self.phase_multiset_dev <= tol,
            self.nonreal_count == self.expected_nonreal_count,
            self.projection_sum_dev <= tol,
            self.uniform_intersection_dev <= tol,
        ]
        if not self.bipartite_mode_detected:
            checks.append(self.invariant_dim == self.expected_invariant_dim)
            checks.append(self.overlap_law_dev <= tol)
            checks.append(self.minus_one_intersection_dev <= tol)
        if self.component_dev is not None:
            checks.append(self.component_dev <= tol)
        return all(checks)


def correspondence_report(
    grid: TorusGrid,
    t: int,
    budget: int = DEFAULT_DENSE_BUDGET,
    check_components: bool = True,
) -> CorrespondenceReport:
    """Run every full-space spectral check on one (grid, t) instance.

    Verifies, against the dense eigendecomposition of W_t:
      - the non-real eigenphase multiset equals {+-arccos(cos^t phi_k)},
      - the count of non-real eigenvectors matches twice the interior
        adjacency eigenvalue count (invariant subspace dimension 2N-1 for
        odd side),
      - every non-real unit eigenvector carries projection sum 1/2,
      - per eigenvalue cluster, the marked-state overlap law
        <psi_m|P|psi_m> = multiplicity/(2N) for every vertex m,
      - the eigenvalue-1 subspace meets span{|psi_u>} exactly in the uniform
        state (and the -1 subspace not at all for odd side),
      - the path-basis component formulas (optional, small instances).

    For even sides the bipartite -1 mode is reported and the odd-side-only
    checks are skipped.
    """
    spec = walk_spectrum(grid, t, budget=budget)
    N = grid.vertex_count

    measured = np.sort(spec.signed_phases[spec.nonreal_mask()])
    expected = expected_nonreal_phases(grid, t)
    if measured.size == expected.size:
        phase_dev = (
            float(np.max(np.abs(measured - expected))) if measured.size else 0.0
        )
    else:
        phase_dev = float("inf")

    nonreal = int(np.count_nonzero(spec.nonreal_mask()))
    cos = mode_cosines(grid)
    expected_nonreal = 2 * int(np.count_nonzero(np.abs(cos) < 1.0 - 1e-12))

    proj = spec.projection_sums[spec.nonreal_mask()]
    proj_dev = float(np.max(np.abs(proj - 0.5))) if proj.size else 0.0

    # Marked-state overlap law, cluster by cluster so degeneracy is basis-free.
    psi = np.zeros((full_dim(grid, t), N))
    for u in range(N):
        psi[:, u] = coin_uniform_state(grid, t, grid.vertex_coords(u))
    overlaps = np.conj(spec.vectors).T @ psi  # each row: a_u for one eigenvector
    overlap_dev = 0.0
    nonreal_idx = np.flatnonzero(spec.nonreal_mask())
    for cluster in spec.eigenvalue_clusters():
        if not np.isin(cluster, nonreal_idx).all():
            continue
        weight = np.sum(np.abs(overlaps[cluster, :]) ** 2, axis=0)
        target = len(cluster) / (2.0 * N)
        overlap_dev = max(overlap_dev, float(np.max(np.abs(weight - target))))

    # Eigenvalue +1 subspace must meet span{psi_u} in the uniform state only:
    # <psi_u|P_+1|psi_v> = 1/N for all u, v.
    plus_idx = [i for i, k in enumerate(spec.kinds) if k == "plus_one"]
    minus_idx = [i for i, k in enumerate(spec.kinds) if k == "minus_one"]
    gram_plus = _projector_gram(spec.vectors, plus_idx, psi)
    uniform_dev = float(np.max(np.abs(gram_plus - 1.0 / N)))
    gram_minus = _projector_gram(spec.vectors, minus_idx, psi)
    bipartite = grid.is_bipartite
    if bipartite:
        # Bipartite mode: <psi_u|P_-1|psi_v> = (+-)1/N with the checkerboard sign.
        sign = np.array(
            [(-1) ** sum(grid.vertex_coords(u)) for u in range(N)], dtype=float
        )
        minus_dev = float(np.max(np.abs(gram_minus - np.outer(sign, sign) / N)))
        bip_detected = np.max(np.abs(gram_minus)) > 1e-6
    else:
        minus_dev = float(np.max(np.abs(gram_minus)))
        bip_detected = False

    component_dev = None
    if check_components:
        component_dev = 0.0
        ports = path_ports(grid, t)
        iu = np.array([basis_index(grid, t, p) for p in ports])
        partners = [powered_rotation_apply(grid, t, p) for p in ports]
        iv = np.array([basis_index(grid, t, p) for p in partners])
        u_idx = np.array([grid.vertex_index(p.vertex) for p in ports])
        v_idx = np.array([grid.vertex_index(p.vertex) for p in partners])
        scale = (2.0 / DEGREE**t) ** 0.5
        for i in nonreal_idx:
            cvec = np.conj(spec.vectors[:, i])
            conj_ev = np.conj(spec.eigenvalues[i])
            a_u = overlaps[i, u_idx]
            a_v = overlaps[i, v_idx]
            plus_component_dev = np.abs(
                (cvec[iu] + cvec[iv]) * 2**-0.5
                - scale * (a_u + a_v) / (1.0 + conj_ev)
            )
            minus_component_dev = np.abs(
                (cvec[iu] - cvec[iv]) * 2**-0.5
                - scale * (a_u - a_v) / (1.0 - conj_ev)
            )
            component_dev = max(
                component_dev,
                float(plus_component_dev.max()),
                float(minus_component_dev.max()),
            )

    return CorrespondenceReport(
        grid=grid,
        t=t,
        phase_multiset_dev=phase_dev,
        nonreal_count=nonreal,
        expected_nonreal_count=expected_nonreal,
        invariant_dim=spec.invariant_subspace_dim(),
        expected_invariant_dim=2 * N - 1,
        projection_sum_dev=proj_dev,
        overlap_law_dev=overlap_dev,
        uniform_intersection_dev=uniform_dev,
        minus_one_intersection_dev=minus_dev,
        bipartite_mode_detected=bool(bip_detected) if bipartite else False,
        component_dev=component_dev,
    )


def _projector_gram(
    vectors: np.ndarray, indices: list[int], psi: np.ndarray
) -> np.ndarray:
    """<psi_u| P |psi_v> for the projector onto the listed eigenvector columns."""
    if not indices:
        return np.zeros((psi.shape[1], psi.shape[1]))
    block = np.conj(vectors[:, indices]).T @ psi
    return np.conj(block).T @ block
