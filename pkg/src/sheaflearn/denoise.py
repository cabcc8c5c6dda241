"""Block-sparse coding of node observations over a known dictionary.

Each node is denoised independently by solving

    min_S  ||X - D S||_F^2 + alpha * ||S||_{2,1}

where ||S||_{2,1} sums the l2 norms of the ROWS of S, killing entire atoms.
The solver is proximal gradient (ISTA) with step 1/sigma_max(D)^2 and the
row-wise group soft-threshold with shrinkage alpha*step/2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np


class EmptySupportError(ValueError):
    """Every coefficient row was thresholded away; lower alpha or threshold."""


class SolverWarning(UserWarning):
    """Proximal gradient hit max_iters before reaching rel_tol."""


@dataclass(frozen=True)
class Dictionary:
    """Known synthesis dictionary with d-dimensional atoms as columns."""

    atoms: np.ndarray
    orthonormal: bool = False

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.atoms, dtype=float))
        object.__setattr__(self, "atoms", a)
        if self.orthonormal:
            gram = a.T @ a
            if np.max(np.abs(gram - np.eye(a.shape[1]))) > 1e-9:
                raise ValueError("dictionary flagged orthonormal but D^T D != I")

    @property
    def signal_dim(self) -> int:
        return self.atoms.shape[0]

    @property
    def atom_count(self) -> int:
        return self.atoms.shape[1]


@dataclass(frozen=True)
class DenoiseConfig:
    alpha: float = 0.5
    max_iters: int = 5000
    rel_tol: float = 1e-8
    support_threshold: float = 1e-6  # relative to the largest row norm

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")


@dataclass
class SparseCode:
    """Result of coding one node: full coefficients plus the compact form.

    ``local_basis @ compact_coeffs`` reproduces ``dictionary.atoms @ coefficients``
    with the below-threshold rows zeroed.
    """

    coefficients: np.ndarray          # K x N
    dictionary: Dictionary
    support: tuple[int, ...]          # atom indices with surviving row norm
    local_basis: np.ndarray           # d x d_u
    compact_coeffs: np.ndarray        # d_u x N
    objective: float
    converged: bool
    iterations: int
    final_rel_change: float
    objective_trace: list[float] = field(default_factory=list, repr=False)

    @property
    def subspace_dim(self) -> int:
        return len(self.support)


def l21_norm(S: np.ndarray) -> float:
    """Sum of the l2 norms of the rows."""
    return float(np.sum(np.sqrt(np.sum(S * S, axis=1))))


def coding_objective(X: np.ndarray, D: Dictionary, S: np.ndarray, alpha: float) -> float:
    resid = X - D.atoms @ S
    return float(np.sum(resid * resid)) + alpha * l21_norm(S)


def _row_shrink(S: np.ndarray, kappa: float) -> np.ndarray:
    """Group soft-threshold of the rows: scale each row by max(0, 1 - kappa/||row||)."""
    norms = np.sqrt(np.sum(S * S, axis=1))
    scale = np.zeros_like(norms)
    nz = norms > 0
    scale[nz] = np.maximum(0.0, 1.0 - kappa / norms[nz])
    return S * scale[:, None]


def stationarity_residual(X: np.ndarray, D: Dictionary, S: np.ndarray, alpha: float) -> float:
    """Row-wise optimality residual of the l2,1 problem, relative to the data scale.

    Zero rows: distance of ||2 D^T X - 2 D^T D S||_row above alpha.
    Nonzero rows: norm of 2 D^T(DS - X) + alpha * row/||row||.
    """
    G = 2.0 * D.atoms.T @ (D.atoms @ S - X)
    norms = np.sqrt(np.sum(S * S, axis=1))
    worst = 0.0
    for k in range(S.shape[0]):
        if norms[k] > 0:
            r = np.linalg.norm(G[k] + alpha * S[k] / norms[k])
        else:
            r = max(0.0, np.linalg.norm(G[k]) - alpha)
        worst = max(worst, r)
    scale = max(1.0, 2.0 * np.linalg.norm(D.atoms.T @ X) + alpha)
    return worst / scale


def block_sparse_code(X: np.ndarray, D: Dictionary, cfg: DenoiseConfig) -> SparseCode:
    """Solve the row-sparse coding problem for one node's observations.

    Runs ISTA until the relative objective change drops below ``cfg.rel_tol``
    or ``cfg.max_iters`` is reached (the latter emits SolverWarning; the last
    iterate is still returned with its final relative change).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[0] != D.signal_dim:
        raise ValueError(f"signal has {X.shape[0]} rows, dictionary atoms have {D.signal_dim}")
    smax = np.linalg.norm(D.atoms, 2)
    if smax == 0.0:
        raise ValueError("dictionary is identically zero")
    step = 1.0 / smax ** 2
    kappa = cfg.alpha * step / 2.0

    S = np.zeros((D.atom_count, X.shape[1]))
    f_prev = coding_objective(X, D, S, cfg.alpha)
    trace = [f_prev]
    converged = False
    rel_change = np.inf
    it = 0
    for it in range(1, cfg.max_iters + 1):
        grad = D.atoms.T @ (D.atoms @ S - X)
        S = _row_shrink(S - step * grad, kappa)
        f = coding_objective(X, D, S, cfg.alpha)
        trace.append(f)
        rel_change = abs(f_prev - f) / max(1.0, abs(f_prev))
        f_prev = f
        if rel_change < cfg.rel_tol:
            converged = True
            break
    if not converged:
        warnings.warn(
            f"block_sparse_code: no convergence in {cfg.max_iters} iterations "
            f"(final relative change {rel_change:.3e})",
            SolverWarning,
        )

    try:
        support, basis, compact = extract_support(S, D, cfg.support_threshold)
    except EmptySupportError:
        # alpha killed every row; S = 0 is still the valid minimizer
        support = ()
        basis = np.zeros((D.signal_dim, 0))
        compact = np.zeros((0, X.shape[1]))
    return SparseCode(
        coefficients=S,
        dictionary=D,
        support=support,
        local_basis=basis,
        compact_coeffs=compact,
        objective=f_prev,
        converged=converged,
        iterations=it,
        final_rel_change=float(rel_change),
        objective_trace=trace,
    )


def extract_support(S: np.ndarray, D: Dictionary, threshold: float):
    """Rows whose l2 norm exceeds threshold * max_row_norm, plus the compact form."""
    norms = np.sqrt(np.sum(S * S, axis=1))
    max_norm = float(norms.max()) if norms.size else 0.0
    if max_norm == 0.0:
        raise EmptySupportError("all coefficient rows are zero")
    keep = np.flatnonzero(norms > threshold * max_norm)
    if keep.size == 0:
        raise EmptySupportError("every coefficient row fell below the support threshold")
    return tuple(int(k) for k in keep), D.atoms[:, keep], S[keep, :]


def extract_local_basis(code: SparseCode, threshold: float):
    """Re-cut the compact representation of an existing code at a new threshold."""
    support, basis, compact = extract_support(code.coefficients, code.dictionary, threshold)
    return basis, compact


def code_dataset(dataset, cfg: DenoiseConfig) -> list[SparseCode]:
    """Code every node of a synthetic dataset against its own dictionary."""
    return [
        block_sparse_code(node.observations, Dictionary(node.dictionary, orthonormal=True), cfg)
        for node in dataset.nodes
    ]
