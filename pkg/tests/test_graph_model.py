"""
Test di grafi, permutazioni e orbite dei lati
"""

import itertools

import networkx as nx
import pytest

from core.errors import DimensionError
from core.graph_model import (Graph, PermutationMap, close_group, cycle_graph, edge_orbits,
                              graph_state_stabilizer, is_automorphism)
from core.pauli_algebra import commutes
from core.small_codes import V1_LABELS, pi_map, tau_map


class TestGraph:

    def test_cycle_graph(self):
        g = cycle_graph(9)
        assert len(g.edges) == 9
        assert all(g.degree(v) == 2 for v in g.vertices)
        assert g.neighbors(1) == [2, 9]

    def test_triangle(self):
        assert cycle_graph(3).sorted_edges() == [(1, 2), (1, 3), (2, 3)]

    def test_cycle_too_short(self):
        with pytest.raises(DimensionError):
            cycle_graph(2)

    def test_rejects_loops(self):
        with pytest.raises(DimensionError):
            Graph.from_edges([1, 2], [(1, 1)])

    def test_json_roundtrip(self):
        g = cycle_graph(5)
        assert Graph.from_json(g.to_json()) == g

    def test_nx_view(self):
        g = cycle_graph(9)
        assert isinstance(g.nx_graph, nx.Graph)
        assert nx.is_frozen(g.nx_graph)
        assert nx.is_isomorphic(g.nx_graph, nx.cycle_graph(9))
        assert sorted(g.nx_graph.nodes) == list(range(1, 10))

    def test_from_nx(self):
        g = Graph.from_nx(nx.path_graph(4))
        assert g.vertices == (0, 1, 2, 3)
        assert g.sorted_edges() == [(0, 1), (1, 2), (2, 3)]

    def test_adjacency_masks_follow_positions(self):
        # etichette non ordinate: le maschere usano le posizioni, non le etichette
        g = Graph.from_edges([5, 3, 9], [(5, 9)])
        assert g.adjacency_masks() == [0b100, 0b000, 0b001]

    def test_hashable(self):
        assert hash(cycle_graph(5)) == hash(Graph.from_json(cycle_graph(5).to_json()))
        assert len({cycle_graph(5), cycle_graph(5), cycle_graph(6)}) == 2

    def test_rejects_unknown_endpoint(self):
        with pytest.raises(DimensionError):
            Graph.from_edges([1, 2], [(1, 3)])

    def test_rejects_duplicate_labels(self):
        with pytest.raises(DimensionError):
            Graph.from_edges([1, 1, 2], [])


class TestPermutations:

    def test_rotation_is_automorphism_of_cycle(self):
        rot = PermutationMap.from_cycles(range(1, 10), [(1, 4, 7), (2, 5, 8), (3, 6, 9)])
        assert is_automorphism(cycle_graph(9), rot)

    def test_identity(self):
        g = cycle_graph(6)
        assert is_automorphism(g, PermutationMap.identity(g.vertices))

    def test_non_automorphism(self):
        swap = PermutationMap.from_cycles(range(1, 7), [(1, 2)])
        assert not is_automorphism(cycle_graph(6), swap)

    def test_domain_mismatch(self):
        with pytest.raises(DimensionError):
            is_automorphism(cycle_graph(4), PermutationMap.identity(range(1, 4)))

    def test_not_a_bijection(self):
        with pytest.raises(DimensionError):
            PermutationMap.from_dict({1: 2, 2: 2})

    def test_compose(self):
        pi, tau = pi_map(), tau_map()
        pt = pi.compose(tau)
        assert pt(1) == 3 and pt(6) == 8
        assert pi.compose(pi).is_identity()

    def test_group_closure(self):
        assert len(close_group([pi_map(), tau_map()], V1_LABELS)) == 4


class TestEdgeOrbits:

    def test_trivial_group(self):
        orbits = edge_orbits(list(range(10)), [])
        assert len(orbits) == 45
        assert all(len(o) == 1 for o in orbits)

    def test_pi_tau_orbits(self):
        orbits = edge_orbits(V1_LABELS, [pi_map(), tau_map()])
        assert len(orbits) == 15
        assert [(0, 5)] in orbits

    def test_partition_and_closure(self):
        group = close_group([pi_map(), tau_map()], V1_LABELS)
        orbits = edge_orbits(V1_LABELS, group)
        flat = [e for o in orbits for e in o]
        assert sorted(flat) == list(itertools.combinations(V1_LABELS, 2))
        for orbit in orbits:
            for perm in group:
                moved = {tuple(sorted((perm(a), perm(b)))) for a, b in orbit}
                assert moved == set(orbit)


class TestGraphStateStabilizer:

    def test_edgeless(self):
        g = Graph.from_edges([1, 2, 3], [])
        assert graph_state_stabilizer(g, 2).to_string() == "i^0 IXI"

    def test_cycle(self):
        assert graph_state_stabilizer(cycle_graph(9), 1).to_string() == "i^0 XZIIIIIIZ"

    def test_single_edge(self):
        g = Graph.from_edges([7, 8], [(7, 8)])
        assert graph_state_stabilizer(g, 7).to_string() == "i^0 XZ"

    def test_stabilizers_commute(self):
        g = cycle_graph(9)
        stabs = [graph_state_stabilizer(g, v) for v in g.vertices]
        assert all(commutes(a, b) for a, b in itertools.combinations(stabs, 2))

    def test_unknown_vertex(self):
        with pytest.raises(DimensionError):
            graph_state_stabilizer(cycle_graph(4), 9)
