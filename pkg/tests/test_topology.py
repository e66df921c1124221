import numpy as np
import pytest

from kuramoto_rc.errors import ConfigurationError
from kuramoto_rc.topology import (complete_graph, connected_components,
                                  erdos_renyi, from_edges, load_edge_list,
                                  save_edge_list)


def test_complete_graph_small_degrees():
    net = complete_graph(2)
    np.testing.assert_array_equal(net.degrees, [2, 2])
    assert complete_graph(3).to_dense().sum() == 9


def test_complete_graph_mean_degree_includes_diagonal():
    assert complete_graph(500).mean_degree == 500.0


def test_complete_graph_rejects_tiny():
    with pytest.raises(ConfigurationError):
        complete_graph(1)


def test_er_mean_degree_concentrates():
    net = erdos_renyi(500, 6.0, seed=11)
    assert 5.1 <= net.mean_degree <= 6.9


def test_er_full_density_is_complete_minus_diagonal():
    net = erdos_renyi(500, 499.0, seed=0)
    np.testing.assert_array_equal(net.degrees, np.full(500, 499))
    dense = net.to_dense()
    assert dense.trace() == 0
    assert dense.sum() == 500 * 499


def test_er_repair_guarantees_min_degree():
    for seed in range(10):
        net = erdos_renyi(10, 1.0, seed=seed)
        assert net.degrees.min() >= 1


def test_er_rejects_out_of_range_mean_degree():
    with pytest.raises(ConfigurationError):
        erdos_renyi(100, 0.5)
    with pytest.raises(ConfigurationError):
        erdos_renyi(100, 100.0)


def test_er_adjacency_symmetric_and_degrees_consistent():
    net = erdos_renyi(500, 6.0, seed=4)
    dense = net.to_dense()
    np.testing.assert_array_equal(dense, dense.T)
    np.testing.assert_array_equal(dense.sum(axis=1), net.degrees)
    assert net.mean_degree == pytest.approx(net.degrees.mean())


def test_er_seed_determinism_byte_for_byte():
    a = erdos_renyi(300, 8.0, seed=42)
    b = erdos_renyi(300, 8.0, seed=42)
    assert a.indptr.tobytes() == b.indptr.tobytes()
    assert a.indices.tobytes() == b.indices.tobytes()
    c = erdos_renyi(300, 8.0, seed=43)
    assert a.indices.tobytes() != c.indices.tobytes()


def test_components_complete():
    assert connected_components(complete_graph(7)) == [7]


def test_components_two_triangles():
    net = from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert connected_components(net) == [3, 3]


def test_er_giant_component_at_k6():
    hits = 0
    for seed in range(20):
        net = erdos_renyi(500, 6.0, seed=seed)
        if connected_components(net)[0] >= 0.99 * 500:
            hits += 1
    assert hits >= 19


def test_from_edges_rejects_isolated():
    with pytest.raises(ConfigurationError):
        from_edges(3, [(0, 1)])


def test_edge_list_round_trip(tmp_path):
    net = erdos_renyi(60, 5.0, seed=9)
    path = tmp_path / "graph.txt"
    save_edge_list(net, path)
    back = load_edge_list(path)
    np.testing.assert_array_equal(back.to_dense(), net.to_dense())


def test_edge_list_round_trip_complete(tmp_path):
    net = complete_graph(12)
    path = tmp_path / "graph.txt"
    save_edge_list(net, path)
    back = load_edge_list(path)
    np.testing.assert_array_equal(back.to_dense(), net.to_dense())
    np.testing.assert_array_equal(back.degrees, net.degrees)
