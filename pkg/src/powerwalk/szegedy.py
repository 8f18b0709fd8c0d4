"""Szegedy quantization of symmetric Markov chains, including multi-step walks.

A symmetric row-stochastic chain M is quantized as the product of two
reflections about the ranges of the isometries A (amplitudes sqrt(M_ij) on
|i>|j>) and B (registers swapped). The k-step construction uses k+1 registers
with path-product amplitudes sqrt(M_{i j_1} ... M_{j_{k-1} j_k}); its
discriminant A_k^dagger B_k equals M^k, so the multi-step walk acts like the
walk of the powered chain on its nontrivial subspace while costing only 4kQ
state-preparation queries per step.

Registers are serialized leftmost-most-significant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_DIM_BUDGET = 4096

# Singular values within this margin of 0 or 1 mark simultaneous eigenvectors
# of the two range projectors (the trivially-acted-on subspace).
SUBSPACE_TOL = 1e-9


@dataclass(frozen=True)
class MarkovChain:
    """Symmetric row-stochastic transition matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", M)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError(f"transition matrix must be square, got {M.shape}")
        if np.min(M) < -1e-12:
            raise ValueError("transition matrix has negative entries")
        if np.max(np.abs(M - M.T)) > 1e-12:
            raise ValueError("transition matrix is not symmetric")
        if np.max(np.abs(M.sum(axis=1) - 1.0)) > 1e-12:
            raise ValueError("rows do not sum to 1")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def cycle_chain(n: int) -> MarkovChain:
    """Symmetric random walk on the n-cycle (n >= 3)."""
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    M = np.zeros((n, n))
    for i in range(n):
        M[i, (i + 1) % n] += 0.5
        M[i, (i - 1) % n] += 0.5
    return MarkovChain(M)


def complete_chain(n: int) -> MarkovChain:
    """Walk on the complete graph: uniform over the other n-1 states."""
    if n < 2:
        raise ValueError(f"complete graph needs n >= 2, got {n}")
    M = np.full((n, n), 1.0 / (n - 1))
    np.fill_diagonal(M, 0.0)
    return MarkovChain(M)


def lazy_chain(chain: MarkovChain, hold: float = 0.5) -> MarkovChain:
    """Lazy variant: stay put with probability ``hold``."""
    if not 0.0 <= hold < 1.0:
        raise ValueError(f"hold probability must lie in [0, 1), got {hold}")
    return MarkovChain(hold * np.eye(chain.size) + (1.0 - hold) * chain.matrix)


def random_symmetric_chain(
    n: int, rng: np.random.Generator, iterations: int = 500
) -> MarkovChain:
    """Random symmetric doubly stochastic chain by symmetric Sinkhorn scaling.

    Draws a strictly positive symmetric seed S and finds the diagonal d with
    diag(d) S diag(d) row-stochastic via the fixed point d = 1/(S d).
    """
    if n < 2:
        raise ValueError(f"chain needs n >= 2, got {n}")
    S = rng.uniform(0.1, 1.0, size=(n, n))
    S = 0.5 * (S + S.T)
    d = np.ones(n)
    for _ in range(iterations):
        d_new = 1.0 / (S @ d)
        if np.max(np.abs(d_new - d)) < 1e-16:
            d = d_new
            break
        d = d_new
    M = d[:, None] * S * d[None, :]
    M = 0.5 * (M + M.T)
    M /= M.sum(axis=1, keepdims=True)
    M = 0.5 * (M + M.T)
    return MarkovChain(M)


def load_chain_csv(path) -> MarkovChain:
    """Read an N x N numeric grid as a transition matrix."""
    return MarkovChain(np.loadtxt(path, delimiter=",", ndmin=2))


def register_reversal(n: int, k: int) -> np.ndarray:
    """Permutation p over [n^(k+1)] reversing the k+1 base-n registers."""
    idx = np.arange(n ** (k + 1))
    rest = idx
    out = np.zeros_like(idx)
    for _ in range(k + 1):
        rest, digit = np.divmod(rest, n)
        out = out * n + digit
    return out


@dataclass
class SzegedyWalk:
    """Multi-step quantized walk: isometries on k+1 registers, two reflections."""

    chain: MarkovChain
    k: int
    A: np.ndarray  # (n^{k+1}, n), column i = |A^k_i>
    B: np.ndarray

    @property
    def dim(self) -> int:
        return self.A.shape[0]


def build_isometries(
    chain: MarkovChain, k: int, budget: int = DEFAULT_DIM_BUDGET
) -> SzegedyWalk:
    """Construct the k-step isometries with path-product amplitudes.

    Column i of A carries sqrt(M_{i j_1} M_{j_1 j_2} ... M_{j_{k-1} j_k}) at
    register content (i, j_1, ..., j_k); B is A with the register order
    reversed.
    """
    if k < 1:
        raise ValueError(f"step count must be >= 1, got {k}")
    n = chain.size
    dim = n ** (k + 1)
    if dim > budget:
        raise ValueError(f"dimension {dim} = {n}^{k + 1} exceeds budget {budget}")
    root = np.sqrt(chain.matrix)
    # amps[i, j_1, ..., j_k]: extend one hop at a time by broadcasting.
    amps = root
    for _ in range(k - 1):
        amps = amps[..., :, None] * root
    blocks = amps.reshape(n, n**k)  # row i = column i's amplitudes, C order
    A = np.zeros((dim, n))
    span = np.arange(n**k)
    for i in range(n):
        A[i * n**k + span, i] = blocks[i]
    B = A[register_reversal(n, k), :]
    return SzegedyWalk(chain=chain, k=k, A=A, B=B)


def discriminant(walk: SzegedyWalk) -> np.ndarray:
    """A_k^dagger B_k, an N x N matrix equal to M^k."""
    return walk.A.T @ walk.B


def walk_apply(walk: SzegedyWalk, state: np.ndarray) -> np.ndarray:
    """Apply W_k = (2 B B^dagger - I)(2 A A^dagger - I) without forming it."""
    state = np.asarray(state)
    if state.shape != (walk.dim,):
        raise ValueError(f"state has shape {state.shape}, expected ({walk.dim},)")
    after_a = 2.0 * (walk.A @ (walk.A.T @ state)) - state
    return 2.0 * (walk.B @ (walk.B.T @ after_a)) - after_a


def walk_matrix(walk: SzegedyWalk) -> np.ndarray:
    eye = np.eye(walk.dim)
    r_a = 2.0 * (walk.A @ walk.A.T) - eye
    r_b = 2.0 * (walk.B @ walk.B.T) - eye
    return r_b @ r_a


def query_cost(walk: SzegedyWalk, per_step: int = 1) -> int:
    """Queries per walk step: 4 k Q, with Q the cost of one V_1/V_2 call."""
    if per_step < 1:
        raise ValueError(f"per-step query cost must be >= 1, got {per_step}")
    return 4 * walk.k * per_step


def nontrivial_basis(walk: SzegedyWalk, tol: float = SUBSPACE_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the nontrivial subspace.

    Rank-revealing route: for each discriminant singular triple (u, sigma, v)
    with sigma strictly inside (0, 1), the plane span{A u, B v} is walk
    invariant and the two range projectors do not commute on it. The planes
    are mutually orthogonal with in-plane Gram [[1, sigma], [sigma, 1]].
    """
    u, s, vt = np.linalg.svd(discriminant(walk))
    basis = []
    for j, sigma in enumerate(s):
        if sigma <= tol or sigma >= 1.0 - tol:
            continue
        a_vec = walk.A @ u[:, j]
        b_vec = walk.B @ vt[j, :]
        basis.append(a_vec)
        basis.append((b_vec - sigma * a_vec) / np.sqrt(1.0 - sigma**2))
    if not basis:
        return np.zeros((walk.dim, 0))
    return np.column_stack(basis)


def nontrivial_eigenphases(walk: SzegedyWalk, tol: float = SUBSPACE_TOL) -> np.ndarray:
    """Sorted eigenphases of the walk restricted to its nontrivial subspace.

    Applies the walk to the rank-revealed basis and diagonalizes the restricted
    operator, so this measures the walk itself rather than assuming the
    discriminant correspondence.
    """
    basis = nontrivial_basis(walk, tol=tol)
    if basis.shape[1] == 0:
        return np.array([])
    image = np.column_stack([walk_apply(walk, basis[:, j]) for j in range(basis.shape[1])])
    restricted = basis.T @ image
    return np.sort(np.angle(np.linalg.eigvals(restricted)))


def predicted_nontrivial_eigenphases(
    walk: SzegedyWalk, tol: float = SUBSPACE_TOL
) -> np.ndarray:
    """+-2 arccos(sigma) over interior discriminant singular values, sorted."""
    s = np.linalg.svd(discriminant(walk), compute_uv=False)
    interior = s[(s > tol) & (s < 1.0 - tol)]
    theta = 2.0 * np.arccos(np.clip(interior, 0.0, 1.0))
    return np.sort(np.concatenate([theta, -theta]))
