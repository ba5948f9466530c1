"""
Test dell'algebra simbolica dei Pauli
"""

import pytest

from core.errors import DimensionError
from core.pauli_algebra import (BinaryVector, PauliOperator, commutes, count_errors,
                                enumerate_errors, multiply, product, weight)


def p(text: str) -> PauliOperator:
    return PauliOperator.from_string(text)


class TestMultiply:

    def test_x_times_z(self):
        assert multiply(p("X"), p("Z")).to_string() == "i^3 Y"

    def test_z_times_x(self):
        assert multiply(p("Z"), p("X")).to_string() == "i^1 Y"

    def test_pauli_squares_to_identity(self):
        for letter in "XYZ":
            sq = multiply(p(letter), p(letter))
            assert sq.is_identity_up_to_phase()
            assert sq.phase_exp == 0

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            multiply(p("XX"), p("X"))

    def test_product_is_ordered(self):
        assert product([p("X"), p("Z")], 1) == multiply(p("X"), p("Z"))


class TestCommutation:

    def test_single_qubit(self):
        assert not commutes(p("X"), p("Z"))
        assert commutes(p("X"), p("X"))

    def test_two_anticommuting_positions_commute(self):
        assert commutes(p("XX"), p("ZZ"))

    def test_independent_of_phase(self):
        assert commutes(p("i^1 XX"), p("ZZ"))


class TestWeightAndErrors:

    def test_weight(self):
        assert weight(p("XIZ")) == 2
        assert weight(PauliOperator.identity(4)) == 0

    def test_enumeration_order(self):
        errors = enumerate_errors(2, 1)
        assert [e.to_string() for e in errors] == [
            "i^0 XI", "i^3 YI", "i^0 ZI", "i^0 IX", "i^3 IY", "i^0 IZ"]

    def test_counts(self):
        assert len(enumerate_errors(9, 2)) == 351
        assert count_errors(10, 2) == 435
        assert count_errors(41, 2) == 7503
        assert count_errors(42, 2) == 7872
        assert count_errors(32, 2) == 4560

    def test_max_weight_above_n(self):
        with pytest.raises(DimensionError):
            enumerate_errors(3, 4)


class TestSerialization:

    def test_string_roundtrip(self):
        for text in ("i^0 XYZI", "i^2 ZZIY", "i^1 IIX"):
            assert p(text).to_string() == text

    def test_hermitian_constructor(self):
        y = PauliOperator.hermitian(1, 1, 1)
        assert y.to_string() == "i^0 Y"
        assert y.is_hermitian()
        assert y.square_phase() == 0

    def test_compact(self):
        op = p("XYZ")
        assert PauliOperator.from_compact(3, op.to_compact()) == op

    def test_embed_and_restrict(self):
        op = p("XZ").embed(5, 2)
        assert op.to_string() == "i^0 IIXZI"
        assert op.restrict(2, 2) == p("XZ")


class TestBinaryVector:

    def test_dot_and_weight(self):
        a = BinaryVector.from_positions(4, [0, 1])
        b = BinaryVector.from_positions(4, [1, 2])
        assert a.dot(b) == 1
        assert (a ^ b).positions() == [0, 2]
        assert BinaryVector.ones(4).weight() == 4

    def test_out_of_range(self):
        with pytest.raises(DimensionError):
            BinaryVector.from_positions(3, [3])
