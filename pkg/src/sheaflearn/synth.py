"""Seeded synthetic data generators.

Two protocols are covered: random coordinate subspaces over a shared standard
basis with a tunable shared-latent correlation, and a 16-node two-cluster
scenario where half the nodes live in 10-dimensional and half in 40-dimensional
subspaces of an ambient R^64, each node carrying its own random orthonormal
dictionary.

Every node draws from an independently keyed substream of the root seed, so
generation order cannot change results, and noise is rescaled exactly to the
requested per-node SNR.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SynthConfig:
    """Configuration of the coordinate-subspace generator.

    ``dims`` is either one int (shared by all nodes), a per-node sequence, or
    the sampler spec ("uniform", lo, hi) drawing each node's dimension
    uniformly in [lo, hi].
    """

    node_count: int = 16
    ambient_dim: int = 64
    dims: object = ("uniform", 8, 32)
    snapshots: int = 512
    rho: float = 0.9
    snr_db: float = 20.0
    seed: int = 0

    def __post_init__(self):
        if self.node_count < 1 or self.ambient_dim < 1 or self.snapshots < 1:
            raise ValueError("node_count, ambient_dim and snapshots must be positive")
        if not (0.0 <= self.rho <= 1.0):
            raise ValueError("rho must lie in [0, 1]")


@dataclass(frozen=True)
class NodeData:
    """One node's observations together with the generating ground truth."""

    observations: np.ndarray     # d x N, noisy
    dictionary: np.ndarray       # d x K, the known (orthonormal) dictionary
    support: tuple[int, ...]     # atom indices actually used
    clean_coeffs: np.ndarray     # K x N, zero outside the support rows
    cluster: int | None = None

    @property
    def clean_signal(self) -> np.ndarray:
        return self.dictionary @ self.clean_coeffs


@dataclass(frozen=True)
class Dataset:
    nodes: tuple[NodeData, ...]
    seed: int
    params: dict = field(default_factory=dict)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def ambient_dim(self) -> int:
        return self.nodes[0].observations.shape[0]

    @property
    def snapshots(self) -> int:
        return self.nodes[0].observations.shape[1]

    @property
    def cluster_labels(self) -> tuple[int, ...] | None:
        labels = tuple(n.cluster for n in self.nodes)
        return None if any(l is None for l in labels) else labels


def _resolve_dims(cfg: SynthConfig, rng: np.random.Generator) -> list[int]:
    dims = cfg.dims
    if isinstance(dims, int):
        out = [dims] * cfg.node_count
    elif isinstance(dims, (tuple, list)) and len(dims) == 3 and dims[0] == "uniform":
        lo, hi = int(dims[1]), int(dims[2])
        out = [int(k) for k in rng.integers(lo, hi + 1, size=cfg.node_count)]
    else:
        out = [int(k) for k in dims]
        if len(out) != cfg.node_count:
            raise ValueError("per-node dims length must equal node_count")
    if any(not (0 < k <= cfg.ambient_dim) for k in out):
        raise ValueError("every subspace dimension must lie in (0, ambient_dim]")
    return out


def _add_noise(clean: np.ndarray, snr_db: float, rng: np.random.Generator) -> np.ndarray:
    """White Gaussian noise rescaled so the realized Frobenius SNR is exact."""
    raw = rng.standard_normal(clean.shape)
    clean_norm = np.linalg.norm(clean)
    raw_norm = np.linalg.norm(raw)
    if clean_norm == 0.0 or raw_norm == 0.0:
        return clean.copy()
    scale = clean_norm / (raw_norm * 10.0 ** (snr_db / 20.0))
    return clean + scale * raw


def generate_dataset(cfg: SynthConfig) -> Dataset:
    """Coordinate-subspace data over the standard basis of R^d.

    Node u samples a size-dims[u] coordinate subset; its coefficients are
    S_u = rho * P_u G + sqrt(1 - rho^2) * G_u with G a latent d x N Gaussian
    matrix shared by all nodes, G_u node-private Gaussian rows, and P_u the
    projection onto the sampled coordinates. Coordinates shared by two nodes
    therefore carry correlation rho^2 between their coefficient streams.
    """
    root = np.random.SeedSequence(cfg.seed)
    shared_ss, *node_ss = root.spawn(cfg.node_count + 1)
    shared_rng = np.random.default_rng(shared_ss)

    d, n = cfg.ambient_dim, cfg.snapshots
    dims = _resolve_dims(cfg, shared_rng)
    latent = shared_rng.standard_normal((d, n))
    dictionary = np.eye(d)
    mix = np.sqrt(max(0.0, 1.0 - cfg.rho ** 2))

    nodes = []
    for u in range(cfg.node_count):
        rng = np.random.default_rng(node_ss[u])
        support = np.sort(rng.choice(d, size=dims[u], replace=False))
        S = np.zeros((d, n))
        S[support, :] = cfg.rho * latent[support, :] + mix * rng.standard_normal((dims[u], n))
        clean = dictionary @ S
        nodes.append(NodeData(
            observations=_add_noise(clean, cfg.snr_db, rng),
            dictionary=dictionary,
            support=tuple(int(i) for i in support),
            clean_coeffs=S,
        ))
    return Dataset(
        nodes=tuple(nodes),
        seed=cfg.seed,
        params={
            "generator": "coordinate_subspaces",
            "node_count": cfg.node_count,
            "ambient_dim": d,
            "dims": dims,
            "snapshots": n,
            "rho": cfg.rho,
            "snr_db": cfg.snr_db,
        },
    )


def generate_cluster_scenario(
    seed: int,
    snapshots: int = 512,
    rho: float = 0.9,
    snr_db: float = 20.0,
) -> Dataset:
    """Two-cluster scenario: 16 nodes in ambient R^64, 8 nodes on
    10-dimensional and 8 on 40-dimensional subspaces.

    Each node owns a random orthonormal dictionary (QR of a Gaussian matrix)
    and uses a random subset of its columns, so local dictionaries genuinely
    differ across nodes. Nodes in the same cluster blend a common per-cluster
    latent into their coefficient rows with weight rho, which makes same-
    dimension nodes correlated while their bases stay unrelated.
    """
    node_count, d = 16, 64
    dims = [10] * 8 + [40] * 8
    labels = [0] * 8 + [1] * 8

    root = np.random.SeedSequence(seed)
    shared_ss, *node_ss = root.spawn(node_count + 1)
    shared_rng = np.random.default_rng(shared_ss)
    cluster_latent = {
        0: shared_rng.standard_normal((10, snapshots)),
        1: shared_rng.standard_normal((40, snapshots)),
    }
    mix = np.sqrt(max(0.0, 1.0 - rho ** 2))

    nodes = []
    for u in range(node_count):
        rng = np.random.default_rng(node_ss[u])
        basis, _ = np.linalg.qr(rng.standard_normal((d, d)))
        support = np.sort(rng.choice(d, size=dims[u], replace=False))
        S = np.zeros((d, snapshots))
        # support row j pairs with latent row j across the whole cluster
        S[support, :] = (
            rho * cluster_latent[labels[u]]
            + mix * rng.standard_normal((dims[u], snapshots))
        )
        clean = basis @ S
        nodes.append(NodeData(
            observations=_add_noise(clean, snr_db, rng),
            dictionary=basis,
            support=tuple(int(i) for i in support),
            clean_coeffs=S,
            cluster=labels[u],
        ))
    return Dataset(
        nodes=tuple(nodes),
        seed=seed,
        params={
            "generator": "two_cluster_subspaces",
            "node_count": node_count,
            "ambient_dim": d,
            "dims": dims,
            "snapshots": snapshots,
            "rho": rho,
            "snr_db": snr_db,
        },
    )
