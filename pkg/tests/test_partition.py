import pytest

from grovercut.graphs import Graph, generate_complete, generate_erdos_renyi
from grovercut.partition import partition_graph


def edge_multiset(g):
    return sorted((min(u, v), max(u, v), w) for u, v, w in g.edges)


def partition_edge_multiset(p):
    edges = []
    for part_edges in p.internal_edges:
        edges.extend(part_edges)
    edges.extend((u, v, w) for u, v, w, _, _ in p.boundary_edges)
    return sorted((min(u, v), max(u, v), w) for u, v, w in edges)


class TestPartitionGraph:
    def test_four_vertices_two_balanced_parts(self):
        g = generate_complete(4)
        p = partition_graph(g, max_size=2, seed=0)
        assert sorted(len(part) for part in p.parts) == [2, 2]

    def test_small_graph_single_part(self):
        g = generate_erdos_renyi(5, 0.5, 1)
        p = partition_graph(g, max_size=8, seed=0)
        assert p.num_parts == 1
        assert p.boundary_edges == ()

    def test_sizes_and_edge_conservation(self):
        g = generate_erdos_renyi(12, 0.5, 3)
        p = partition_graph(g, max_size=6, seed=7)
        assert all(len(part) <= 6 for part in p.parts)
        assert partition_edge_multiset(p) == edge_multiset(g)

    def test_parts_disjoint_and_cover(self):
        g = generate_erdos_renyi(17, 0.4, 5)
        p = partition_graph(g, max_size=5, seed=2)
        seen = sorted(v for part in p.parts for v in part)
        assert seen == list(range(17))

    def test_deterministic_per_seed(self):
        g = generate_erdos_renyi(20, 0.3, 9)
        assert partition_graph(g, 6, seed=4) == partition_graph(g, 6, seed=4)

    def test_seed_changes_split(self):
        g = generate_erdos_renyi(20, 0.5, 9)
        splits = {partition_graph(g, 6, seed=s).parts for s in range(6)}
        assert len(splits) > 1

    def test_max_size_validation(self):
        with pytest.raises(ValueError):
            partition_graph(generate_complete(4), max_size=1)

    def test_boundary_edge_parts_recorded(self):
        g = generate_erdos_renyi(10, 0.6, 0)
        p = partition_graph(g, max_size=5, seed=1)
        owner = p.part_of()
        for u, v, w, pu, pv in p.boundary_edges:
            assert owner[u] == pu
            assert owner[v] == pv
            assert pu != pv

    def test_refinement_reduces_boundary(self):
        # on a graph with clear community structure the greedy swaps should
        # find a split no worse than a blind balanced split
        edges = []
        for base in (0, 6):
            for i in range(6):
                for j in range(i + 1, 6):
                    edges.append((base + i, base + j, 1))
        edges.append((0, 6, 1))
        g = Graph(12, tuple(edges))
        p = partition_graph(g, max_size=6, seed=3)
        boundary = sum(w for _, _, w, _, _ in p.boundary_edges)
        assert boundary == 1
