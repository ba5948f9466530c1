"""
Test dei codici seme ((9,12,3)) e ((10,24,3))
"""

from fractions import Fraction

import pytest

from core.artifact_manager import ArtifactManager
from core.dense_engine import DyadicComplex, graph_signs, kl_check
from core.graph_model import cycle_graph, is_automorphism
from core.lp_bound import weight_distribution
from core.pauli_algebra import enumerate_errors
from core.small_codes import (G1_FILENAME, build_code9, build_code10, codeword_subsets,
                              codeword_vector, cws_pure, cws_violations, load_graph10,
                              pi_map, recover_graph10, tau_map)


class TestCodewordSubsets:

    def test_count(self):
        subsets = codeword_subsets()
        assert len(subsets) == 24
        assert len(set(subsets.sets())) == 24

    def test_base_entries(self):
        subsets = codeword_subsets()
        assert subsets.get(1, 0, 0) == frozenset()
        assert subsets.get(2, 0, 0) == frozenset({1, 2, 3, 9})

    def test_empty_subset_is_graph_state(self):
        g = cycle_graph(9)
        assert codeword_vector(g, frozenset()).tolist() == graph_signs(g).tolist()


class TestCode9:

    def test_dimension(self):
        code = build_code9()
        assert code.projector.trace() == DyadicComplex.from_int(12)
        assert code.num_qubits == 9

    def test_a0_trace(self):
        assert build_code9().named["A0"].trace() == DyadicComplex.from_int(2 ** 8)

    def test_observables_commute(self):
        obs = list(build_code9().observables.values())
        assert len(obs) == 6
        for i in range(6):
            for j in range(i + 1, 6):
                assert obs[i].commutes_with(obs[j])

    def test_pure_distance3(self):
        code = build_code9()
        report = kl_check(code.projector, enumerate_errors(9, 2))
        assert report.errors_checked == 351
        assert report.pure

    def test_weight_distribution(self):
        w = weight_distribution(build_code9().projector, Fraction(12))
        assert w.values[0] == 1
        assert w.values[1] == w.values[2] == 0
        assert w.total == Fraction(512, 12)
        assert w.is_consistent()


class TestCwsPurity:

    def test_triangle_single_state(self):
        g = cycle_graph(3)
        assert cws_pure(g, [frozenset()], max_weight=1)
        violations = cws_violations(g, [frozenset()], max_weight=2)
        # Y_a Y_b è nel gruppo stabilizzatore del triangolo
        assert len(violations) == 3
        assert all(e.x_mask == e.z_mask for e in violations)


G1_EDGES = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 6), (2, 7), (3, 4),
    (3, 8), (4, 9), (5, 6), (5, 7), (5, 8), (5, 9), (6, 8), (7, 9),
]


class TestFrozenGraph10:

    def test_edges(self):
        g = load_graph10(ArtifactManager())
        assert g.vertices == tuple(range(10))
        assert g.sorted_edges() == G1_EDGES

    def test_symmetric(self):
        g = load_graph10(ArtifactManager())
        assert is_automorphism(g, pi_map())
        assert is_automorphism(g, tau_map())

    def test_canonical_text(self):
        artifacts = ArtifactManager()
        text = artifacts.path(G1_FILENAME).read_text(encoding="utf-8")
        assert text == ArtifactManager.canonical_dumps(load_graph10(artifacts).to_json())


@pytest.mark.slow
class TestCode10:

    def test_recovered_graph_is_symmetric(self, recovered_graph10):
        assert is_automorphism(recovered_graph10, pi_map())
        assert is_automorphism(recovered_graph10, tau_map())

    def test_recovered_graph_passes_cws(self, recovered_graph10):
        assert cws_pure(recovered_graph10, codeword_subsets().sets())

    def test_dimension_and_b0(self, recovered_graph10):
        code = build_code10(recovered_graph10)
        assert code.projector.trace() == DyadicComplex.from_int(24)
        assert code.observables["B0"].trace() == DyadicComplex.from_int(2 ** 9)

    def test_codewords_stabilized(self, recovered_graph10):
        code = build_code10(recovered_graph10)
        for subset in codeword_subsets().sets():
            vector = codeword_vector(recovered_graph10, subset)
            assert all(op.fixes(vector) for op in code.observables.values())

    def test_pure_distance3(self, recovered_graph10):
        code = build_code10(recovered_graph10)
        report = kl_check(code.projector, enumerate_errors(10, 2), threads=2)
        assert report.errors_checked == 435
        assert report.pure

    def test_find_all(self, recovered_graph10):
        result = recover_graph10(find_all=True)
        assert result.graph == recovered_graph10
        assert result.candidate_index in result.solutions
        assert result.candidates == 2 ** 15

    def test_weight_distribution(self, recovered_graph10):
        code = build_code10(recovered_graph10)
        w = weight_distribution(code.projector, Fraction(24), threads=2)
        assert w.values[:3] == [1, 0, 0]
        assert w.total == Fraction(1024, 24)
        assert w.is_consistent()

    def test_frozen_file(self, tmp_path, recovered_graph10):
        artifacts = ArtifactManager(tmp_path)
        artifacts.write_json(G1_FILENAME, recovered_graph10.to_json())
        assert load_graph10(artifacts) == recovered_graph10
        text = (tmp_path / G1_FILENAME).read_text(encoding="utf-8")
        assert text == ArtifactManager.canonical_dumps(recovered_graph10.to_json())

    def test_committed_file_matches_search(self, recovered_graph10):
        committed = ArtifactManager().path(G1_FILENAME).read_text(encoding="utf-8")
        assert committed == ArtifactManager.canonical_dumps(recovered_graph10.to_json())

    def test_unique_solution(self):
        result = recover_graph10(find_all=True)
        assert len(result.orbits) == 15
        assert result.solutions == [10379]
        assert result.candidate_index == 10379
        assert result.graph.sorted_edges() == G1_EDGES
