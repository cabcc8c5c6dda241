import numpy as np
import pytest

from sheaflearn import SynthConfig, generate_cluster_scenario, generate_dataset


def test_deterministic_under_seed():
    cfg = SynthConfig(node_count=4, ambient_dim=8, dims=3, snapshots=16, seed=11)
    a = generate_dataset(cfg)
    b = generate_dataset(cfg)
    for na, nb in zip(a.nodes, b.nodes):
        assert np.array_equal(na.observations, nb.observations)
        assert na.support == nb.support


def test_snr_realized_exactly():
    cfg = SynthConfig(node_count=3, ambient_dim=16, dims=4, snapshots=64,
                      snr_db=20.0, seed=2)
    ds = generate_dataset(cfg)
    for node in ds.nodes:
        clean = node.clean_signal
        noise = node.observations - clean
        snr = 10 * np.log10(np.sum(clean ** 2) / np.sum(noise ** 2))
        assert abs(snr - 20.0) <= 0.01


def test_ground_truth_structure():
    cfg = SynthConfig(node_count=5, ambient_dim=12, dims=(2, 3, 4, 5, 6),
                      snapshots=10, seed=3)
    ds = generate_dataset(cfg)
    for node, want in zip(ds.nodes, (2, 3, 4, 5, 6)):
        assert len(node.support) == want
        off = np.delete(node.clean_coeffs, node.support, axis=0)
        assert np.max(np.abs(off)) == 0.0


def test_rho_zero_decorrelates():
    cfg = SynthConfig(node_count=2, ambient_dim=4, dims=4, snapshots=10_000,
                      rho=0.0, snr_db=100.0, seed=5)
    ds = generate_dataset(cfg)
    C = ds.nodes[0].clean_coeffs @ ds.nodes[1].clean_coeffs.T / cfg.snapshots
    assert np.max(np.abs(C)) <= 5.0 / np.sqrt(cfg.snapshots)


@pytest.mark.parametrize("rho", [0.0, 0.5, 1.0])
def test_shared_coordinate_correlation(rho):
    # the shared-latent model gives correlation rho^2 on shared coordinates
    cfg = SynthConfig(node_count=2, ambient_dim=6, dims=6, snapshots=100_000,
                      rho=rho, snr_db=100.0, seed=7)
    ds = generate_dataset(cfg)
    a = ds.nodes[0].clean_coeffs
    b = ds.nodes[1].clean_coeffs
    corr = np.mean([
        np.corrcoef(a[i], b[i])[0, 1] for i in range(6)
    ])
    assert abs(corr - rho ** 2) <= 0.02


def test_dims_sampler_spec():
    cfg = SynthConfig(node_count=10, ambient_dim=16, dims=("uniform", 2, 6),
                      snapshots=4, seed=9)
    ds = generate_dataset(cfg)
    for node in ds.nodes:
        assert 2 <= len(node.support) <= 6


def test_dims_validation():
    with pytest.raises(ValueError):
        generate_dataset(SynthConfig(node_count=2, ambient_dim=4, dims=5,
                                     snapshots=4, seed=0))
    with pytest.raises(ValueError):
        SynthConfig(rho=1.5)


class TestClusterScenario:
    def test_shapes_and_labels(self):
        ds = generate_cluster_scenario(0, snapshots=32)
        assert ds.node_count == 16
        assert ds.ambient_dim == 64
        assert all(n.observations.shape == (64, 32) for n in ds.nodes)
        labels = ds.cluster_labels
        assert labels.count(0) == 8 and labels.count(1) == 8
        dims = [len(n.support) for n in ds.nodes]
        assert dims == [10] * 8 + [40] * 8

    def test_deterministic(self):
        a = generate_cluster_scenario(42, snapshots=16)
        b = generate_cluster_scenario(42, snapshots=16)
        for na, nb in zip(a.nodes, b.nodes):
            assert np.array_equal(na.observations, nb.observations)
            assert np.array_equal(na.dictionary, nb.dictionary)

    def test_dictionaries_differ_and_are_orthonormal(self):
        ds = generate_cluster_scenario(1, snapshots=8)
        d0, d1 = ds.nodes[0].dictionary, ds.nodes[1].dictionary
        assert not np.allclose(d0, d1)
        for node in ds.nodes:
            gram = node.dictionary.T @ node.dictionary
            assert np.max(np.abs(gram - np.eye(64))) <= 1e-9
