"""
Test del codice incollato e del motore strutturato delle tracce
"""

from fractions import Fraction

import pytest

import numpy as np

from core.dense_engine import (DenseOperator, build_t_controlled, build_v, kl_check,
                               projector_from_involutions, trace_pair)
from core.errors import DimensionError
from core.gottesman_family import generators, s_generator, verify_pure_distance3, x_all
from core.graph_model import PermutationMap
from core.pasting_engine import (StructuredTraceEngine, assemble, code_dimension,
                                 dimension_exponent, optimal_stabilizer_parameters, params,
                                 verify_distance3_pure)
from core.pauli_algebra import PauliOperator, enumerate_errors

# righe (parte U, parte V, segno) di un'istanza piccola a 2 + 2 qubit
TOY_ROWS = [
    ("XX", "II", 1),
    ("ZZ", "II", 1),
    ("II", "ZZ", -1),
    ("XX", "XX", 1),
]


def _toy_engine() -> StructuredTraceEngine:
    u_rows = [PauliOperator.from_string(u) for u, _, _ in TOY_ROWS]
    tags = ["identity", "identity", "zz", "xx"]
    factors = {
        "zz": DenseOperator.from_pauli(PauliOperator.from_string("ZZ")),
        "xx": DenseOperator.from_pauli(PauliOperator.from_string("XX")),
    }
    return StructuredTraceEngine(u_rows, tags, factors, [s for _, _, s in TOY_ROWS])


def _toy_projector() -> DenseOperator:
    observables = []
    for u, v, sign in TOY_ROWS:
        op = DenseOperator.from_pauli(PauliOperator.from_string(u + v))
        observables.append(op if sign == 1 else -op)
    return projector_from_involutions(observables)


# istanza 2 + 3 qubit con fattori V non Pauli: X_0 V_12 e lo swap controllato T_0,(12)
DYADIC_ROWS = [
    ("XX", "identity", 1),
    ("ZZ", "identity", 1),
    ("II", "xv", 1),
    ("XX", "t", 1),
    ("ZZ", "xx", -1),
]


def _dyadic_factors():
    x0 = DenseOperator.from_pauli(PauliOperator.from_string("XII"))
    return {
        "xv": x0 @ build_v(1, 2, 3),
        "t": build_t_controlled(0, PermutationMap.from_cycles(range(3), [(1, 2)]), 3),
        "xx": DenseOperator.from_pauli(PauliOperator.from_string("IXX")),
    }


def _tensor(u: PauliOperator, f: DenseOperator) -> DenseOperator:
    """U sui qubit bassi, F sugli alti (fattori reali)"""
    dense_u = DenseOperator.from_pauli(u)
    assert dense_u.im is None and f.im is None
    return DenseOperator(u.n + f.num_qubits, np.kron(f.re, dense_u.re), None, f.exp + dense_u.exp)


def _dyadic_engine() -> StructuredTraceEngine:
    u_rows = [PauliOperator.from_string(u) for u, _, _ in DYADIC_ROWS]
    return StructuredTraceEngine(u_rows, [t for _, t, _ in DYADIC_ROWS], _dyadic_factors(),
                                 [s for _, _, s in DYADIC_ROWS])


def _dyadic_projector() -> DenseOperator:
    factors = {**_dyadic_factors(), "identity": DenseOperator.identity(3)}
    observables = []
    for u, tag, sign in DYADIC_ROWS:
        op = _tensor(PauliOperator.from_string(u), factors[tag])
        observables.append(op if sign == 1 else -op)
    return projector_from_involutions(observables)


class TestParams:

    def test_m1(self):
        assert params(1, 0) == (41, 3 * 2 ** 32, 33)
        assert params(1, 1) == (42, 3 * 2 ** 33, 34)

    def test_seed_codes(self):
        assert params(0, 0) == (9, 12, 3)
        assert params(0, 1) == (10, 24, 4)

    def test_m2(self):
        n, k_dim, k_opt = params(2, 0)
        assert n == 169
        assert k_opt == 159
        assert k_dim == 3 * 2 ** 158

    def test_exponent(self):
        assert dimension_exponent(1, 0) == 32

    def test_gain(self):
        data = optimal_stabilizer_parameters(1, 0)
        assert data["gain"] == "3/2"
        assert data["stabilizer"] == "[[41,33,3]]"

    @pytest.mark.parametrize("m, a", [(-1, 0), (1, 2)])
    def test_invalid(self, m, a):
        with pytest.raises(DimensionError):
            params(m, a)

    def test_assemble_needs_pasting(self):
        with pytest.raises(DimensionError):
            assemble(0, 0)


class TestStructuredEngine:

    def test_kernel(self):
        engine = _toy_engine()
        # {0,3} e {2} generano il nucleo delle maschere U
        assert sorted(engine.kernel) == [0b0000, 0b0100, 0b1001, 0b1101]

    def test_dimension(self):
        assert _toy_engine().dimension() == Fraction(1)
        assert _toy_projector().trace().real == 1

    def test_row_trace(self):
        engine = _toy_engine()
        assert engine.row_trace(0) == 0
        assert engine.row_trace(2) == 0

    def test_matches_dense(self):
        engine = _toy_engine()
        projector = _toy_projector()
        errors = enumerate_errors(4, 2)
        values = engine.trace_pepe(errors)
        assert len(values) == 66
        for error, (re, im) in zip(errors, values):
            dense = trace_pair(projector, projector, error)
            assert (re, im) == (dense.real, dense.imag), error.to_string()

    def test_matches_reference(self):
        engine = _toy_engine()
        for error in enumerate_errors(4, 2):
            assert engine.trace_pepe([error])[0] == engine.reference_trace_pepe(error)

    def test_stabilizer_errors_detected(self):
        engine = _toy_engine()
        # X_0 X_1 è nel gruppo: Tr(P E P E†) = Tr(P) = 1
        error = PauliOperator.from_string("XXII")
        assert engine.trace_pepe([error]) == [(Fraction(1), Fraction(0))]

    def test_error_size_mismatch(self):
        with pytest.raises(DimensionError):
            _toy_engine().trace_pepe([PauliOperator.identity(3)])



class TestDyadicVFactors:

    def test_factors_are_not_pauli(self):
        factors = _dyadic_factors()
        # V_12 ha entrate 1/2
        assert factors["xv"].exp == 1
        assert factors["t"].exp == 1
        assert all(f.is_hermitian() and f.is_involution() for f in factors.values())

    def test_kernel(self):
        # {2}, {0,3}, {1,4} generano il nucleo
        assert len(_dyadic_engine().kernel) == 8

    def test_dimension(self):
        engine = _dyadic_engine()
        assert engine.dimension() == Fraction(2)
        assert _dyadic_projector().trace().real == 2

    def test_matches_dense(self):
        engine = _dyadic_engine()
        projector = _dyadic_projector()
        errors = enumerate_errors(5, 2)
        values = engine.trace_pepe(errors)
        assert len(values) == 105
        for error, (re, im) in zip(errors, values):
            dense = trace_pair(projector, projector, error)
            assert (re, im) == (dense.real, dense.imag), error.to_string()

    def test_matches_reference(self):
        engine = _dyadic_engine()
        errors = enumerate_errors(5, 2)
        for error, value in zip(errors, engine.trace_pepe(errors)):
            assert value == engine.reference_trace_pepe(error), error.to_string()

    def test_some_errors_survive(self):
        # errori che commutano con tutto: la somma non è banalmente nulla
        values = _dyadic_engine().trace_pepe(enumerate_errors(5, 2))
        assert any(v != (0, 0) for v in values)


@pytest.mark.slow
class TestPastedM1:

    def test_layout(self):
        code = assemble(1, 0)
        assert code.num_qubits == 41
        assert len(code.observables) == 8
        assert [b.size for b in code.layout.blocks] == [32, 9]
        assert code.v_tag(7) == "A0"
        assert code.u_part(7).is_identity_up_to_phase()
        assert code.v_tag(0) == "identity"

    def test_json(self):
        data = assemble(1, 0).to_json()
        assert data["N"] == 41
        assert data["K_num"] == "3*2^32"
        assert len(data["observables"]) == 8

    def test_dimension(self):
        assert code_dimension(assemble(1, 0)) == 3 * 2 ** 32

    def test_sweep(self):
        report = verify_distance3_pure(assemble(1, 0))
        assert report.errors_checked == 7503
        assert report.passed

    def test_dimension_a1(self, recovered_graph10):
        code = assemble(1, 1, recovered_graph10)
        assert code.num_qubits == 42
        assert code.v_tag(7) == "B0"
        assert code_dimension(code) == 3 * 2 ** 33

    def test_sweep_a1(self, recovered_graph10):
        report = verify_distance3_pure(assemble(1, 1, recovered_graph10), threads=2)
        assert report.errors_checked == 7872
        assert report.passed

    def test_sweep_cap(self):
        with pytest.raises(DimensionError):
            verify_distance3_pure(assemble(1, 0), sweep_cap=0)

    def test_row_traces(self):
        engine = assemble(1, 0).engine()
        # solo la riga 2m+6 (A_0 da solo) ha parte U identica
        assert [engine.row_trace(i) for i in range(8)] == [0] * 7 + [2 ** 40]

    def test_table_cell_s_generator(self):
        code = assemble(1, 0)
        assert code.observables[6].factors[0].pauli == s_generator(1, 5)
        assert code.v_tag(6) == "A2"

    def test_v_block_errors_match_seed(self):
        code = assemble(1, 0)
        seed_errors = enumerate_errors(9, 2)
        seed = kl_check(code.small_code.projector, seed_errors)
        values = code.engine().trace_pepe([e.embed(41, 32) for e in seed_errors])
        assert seed.errors_checked == len(values) == 351
        assert seed.pure
        assert all(v == (0, 0) for v in values)

    def test_identity_error_gives_dimension(self):
        code = assemble(1, 0)
        value = code.engine().trace_pepe([PauliOperator.identity(41)])
        assert value == [(Fraction(3 * 2 ** 32), Fraction(0))]

    def test_u_block_errors_match_stabilizer_family(self):
        code = assemble(1, 0)
        block_errors = enumerate_errors(32, 2)
        purity = verify_pure_distance3(generators(1))
        values = code.engine().trace_pepe([e.embed(41, 0) for e in block_errors])
        assert purity.errors_checked == len(values) == 4560
        assert purity.passed
        assert all(v == (0, 0) for v in values)


@pytest.mark.slow
class TestPastedM2:

    def test_table_cell_x_all(self):
        code = assemble(2, 1)
        assert [b.name for b in code.layout.blocks] == ["U2", "U1", "V1"]
        first = code.observables[0]
        assert first.factors[0].pauli == x_all(2)
        assert first.factors[1].pauli == PauliOperator.identity(32)
        assert code.v_tag(0) == "identity"
        assert code.num_qubits == 170
