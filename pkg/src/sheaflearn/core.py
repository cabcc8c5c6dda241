"""Sheaves on graphs: data model, coboundary/incidence/Laplacian assembly,
and the spectral quantities derived from them.

A sheaf here assigns the ambient space R^d to every node and edge, and one
orthonormal d x d restriction map per (node, edge) incidence. The Laplacian
is assembled densely; target scale is V*d up to a few thousand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Orthonormality tolerance for restriction maps.
ORTHO_TOL = 1e-9

# Relative agreement required between L = B B^T and the direct block formula.
ASSEMBLY_RTOL = 1e-12


class SheafStructureError(ValueError):
    """A sheaf, cochain or map violates a structural invariant."""


@dataclass(frozen=True)
class StalkSpec:
    """Stalk dimensions of a sheaf: common ambient dimension plus the
    effective per-node subspace dimensions left after denoising.

    Parameters
    ----------
    node_count : int
        Number of nodes V.
    ambient_dim : int
        Common stalk dimension d used for assembly.
    per_node_dim : tuple of int
        Effective subspace dimension at each node; each entry <= ambient_dim.
    """

    node_count: int
    ambient_dim: int
    per_node_dim: tuple[int, ...]

    def __post_init__(self):
        if self.node_count <= 0 or self.ambient_dim <= 0:
            raise SheafStructureError("node_count and ambient_dim must be positive")
        if len(self.per_node_dim) != self.node_count:
            raise SheafStructureError("per_node_dim length must equal node_count")
        for u, du in enumerate(self.per_node_dim):
            if not (0 < du <= self.ambient_dim):
                raise SheafStructureError(
                    f"per_node_dim[{u}] = {du} outside (0, {self.ambient_dim}]"
                )

    @classmethod
    def uniform(cls, node_count: int, ambient_dim: int) -> "StalkSpec":
        return cls(node_count, ambient_dim, (ambient_dim,) * node_count)


@dataclass(frozen=True)
class RestrictionMap:
    """An orthonormal linear map carrying one node's data into an edge stalk."""

    matrix: np.ndarray
    source_node: int
    edge_id: int

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise SheafStructureError("restriction map must be a square matrix")
        gram = m.T @ m
        if np.max(np.abs(gram - np.eye(m.shape[0]))) > ORTHO_TOL:
            raise SheafStructureError(
                f"restriction map at node {self.source_node} is not orthonormal"
            )


@dataclass(frozen=True)
class Sheaf:
    """A cellular sheaf on a graph: topology plus one orthonormal map per
    (node, edge) incidence.

    ``edges[e]`` is an oriented pair (tail, head); ``maps[e]`` holds the
    corresponding (F_tail, F_head). The canonical constructors orient edges
    tail = min(u, v), but any fixed orientation is accepted: the assembled
    Laplacian is orientation-invariant.
    """

    stalks: StalkSpec
    edges: tuple[tuple[int, int], ...]
    maps: tuple[tuple[RestrictionMap, RestrictionMap], ...]

    def __post_init__(self):
        if len(self.maps) != len(self.edges):
            raise SheafStructureError("one map pair required per edge")
        seen = set()
        for e, (u, v) in enumerate(self.edges):
            if u == v:
                raise SheafStructureError(f"edge {e} is a self-loop")
            if not (0 <= u < self.stalks.node_count and 0 <= v < self.stalks.node_count):
                raise SheafStructureError(f"edge {e} references an unknown node")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise SheafStructureError(f"node pair {key} appears more than once")
            seen.add(key)
            for m in self.maps[e]:
                if m.matrix.shape != (self.stalks.ambient_dim, self.stalks.ambient_dim):
                    raise SheafStructureError(
                        f"map on edge {e} has shape {m.matrix.shape}, "
                        f"expected ({self.stalks.ambient_dim}, {self.stalks.ambient_dim})"
                    )

    @property
    def node_count(self) -> int:
        return self.stalks.node_count

    @property
    def ambient_dim(self) -> int:
        return self.stalks.ambient_dim

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def make_sheaf(
    node_count: int,
    ambient_dim: int,
    edges,
    maps,
    per_node_dim=None,
) -> Sheaf:
    """Build a sheaf from raw matrices, orienting each edge min -> max.

    ``maps`` is a sequence of (F_u, F_v) ndarray pairs aligned with ``edges``;
    F_u belongs to the first node of the pair as given, and the pair is swapped
    along with the edge whenever the orientation is normalized.
    """
    if per_node_dim is None:
        per_node_dim = (ambient_dim,) * node_count
    stalks = StalkSpec(node_count, ambient_dim, tuple(per_node_dim))
    oriented = []
    wrapped = []
    for e, ((u, v), (fu, fv)) in enumerate(zip(edges, maps)):
        if u > v:
            u, v = v, u
            fu, fv = fv, fu
        oriented.append((u, v))
        wrapped.append(
            (RestrictionMap(np.asarray(fu, float), u, e), RestrictionMap(np.asarray(fv, float), v, e))
        )
    return Sheaf(stalks, tuple(oriented), tuple(wrapped))


def constant_sheaf(node_count: int, edges, dim: int = 1) -> Sheaf:
    """All stalks R^dim, all maps the identity; reduces to the classic graph."""
    eye = np.eye(dim)
    return make_sheaf(node_count, dim, list(edges), [(eye, eye) for _ in edges])


@dataclass(frozen=True)
class Cochain0:
    """Node-indexed signal: one (ambient_dim x N) block per node."""

    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        blocks = tuple(np.atleast_2d(np.asarray(b, dtype=float)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise SheafStructureError("cochain needs at least one block")
        n = blocks[0].shape[1]
        if any(b.shape[1] != n for b in blocks):
            raise SheafStructureError("all blocks must share the snapshot count")

    @property
    def snapshots(self) -> int:
        return self.blocks[0].shape[1]

    @property
    def stacked(self) -> np.ndarray:
        return np.vstack(self.blocks)


@dataclass(frozen=True)
class SheafLaplacian:
    """Assembled sheaf Laplacian together with its incidence factorization.

    Invariants (checked at assembly): matrix = incidence @ incidence.T,
    matrix symmetric positive semi-definite.
    """

    matrix: np.ndarray
    incidence: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _check_cochain(sheaf: Sheaf, x: Cochain0) -> None:
    if len(x.blocks) != sheaf.node_count:
        raise SheafStructureError("cochain block count != node count")
    d = sheaf.ambient_dim
    for u, b in enumerate(x.blocks):
        if b.shape[0] != d:
            raise SheafStructureError(f"cochain block {u} has {b.shape[0]} rows, expected {d}")


def assemble_incidence(sheaf: Sheaf) -> np.ndarray:
    """Assemble the (V*d) x (E*d) block incidence matrix, the transpose of
    the coboundary operator.

    Block (u, e) is -F_{u<e}^T when u is the tail of e, +F_{u<e}^T when u is
    the head, and zero otherwise. The transposes make L = B B^T reproduce the
    block Laplacian exactly: off-diagonal blocks -F_u^T F_v, diagonal blocks
    the sum of F^T F over incident edges.
    """
    d = sheaf.ambient_dim
    B = np.zeros((sheaf.node_count * d, sheaf.edge_count * d))
    for e, ((u, v), (fu, fv)) in enumerate(zip(sheaf.edges, sheaf.maps)):
        B[u * d:(u + 1) * d, e * d:(e + 1) * d] = -fu.matrix.T
        B[v * d:(v + 1) * d, e * d:(e + 1) * d] = fv.matrix.T
    return B


def _laplacian_blocks(sheaf: Sheaf) -> np.ndarray:
    """Direct block formula: diagonal sum of F^T F, off-diagonal -F_u^T F_v."""
    d = sheaf.ambient_dim
    L = np.zeros((sheaf.node_count * d, sheaf.node_count * d))
    for (u, v), (fu, fv) in zip(sheaf.edges, sheaf.maps):
        L[u * d:(u + 1) * d, u * d:(u + 1) * d] += fu.matrix.T @ fu.matrix
        L[v * d:(v + 1) * d, v * d:(v + 1) * d] += fv.matrix.T @ fv.matrix
        cross = fu.matrix.T @ fv.matrix
        L[u * d:(u + 1) * d, v * d:(v + 1) * d] -= cross
        L[v * d:(v + 1) * d, u * d:(u + 1) * d] -= cross.T
    return L


def assemble_laplacian(sheaf: Sheaf) -> SheafLaplacian:
    """Assemble L = B B^T and cross-check against the direct block formula."""
    B = assemble_incidence(sheaf)
    L = B @ B.T
    direct = _laplacian_blocks(sheaf)
    scale = max(np.linalg.norm(L), 1.0)
    if np.max(np.abs(L - direct)) > ASSEMBLY_RTOL * scale:
        raise SheafStructureError("factorized and direct Laplacian assembly disagree")
    return SheafLaplacian(matrix=L, incidence=B)


def coboundary_apply(sheaf: Sheaf, x: Cochain0) -> list[np.ndarray]:
    """Apply the coboundary edge-wise: block e = F_tail x_tail - F_head x_head."""
    _check_cochain(sheaf, x)
    out = []
    for (u, v), (fu, fv) in zip(sheaf.edges, sheaf.maps):
        out.append(fu.matrix @ x.blocks[u] - fv.matrix @ x.blocks[v])
    return out


def total_variation(L: SheafLaplacian, x) -> float:
    """Quadratic form tr(X^T L X): summed squared edge disagreements."""
    X = x.stacked if isinstance(x, Cochain0) else np.atleast_2d(np.asarray(x, float))
    if X.shape[0] != L.dim:
        raise SheafStructureError(f"signal has {X.shape[0]} rows, Laplacian dim is {L.dim}")
    return float(np.sum((L.incidence.T @ X) ** 2))


def global_section_dim(L: SheafLaplacian, tol: float = 1e-8) -> int:
    """Dimension of the global section space = dim ker L, counted as the
    number of eigenvalues below tol * lambda_max."""
    eigvals = np.linalg.eigvalsh(L.matrix)
    lam_max = float(eigvals[-1]) if eigvals.size else 0.0
    if lam_max <= 0.0:
        # zero operator: everything is a section
        return L.dim
    return int(np.count_nonzero(eigvals < tol * lam_max))
