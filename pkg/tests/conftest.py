"""
Fixture comuni per i test del verificatore
"""

import sys
from pathlib import Path

import pytest

# src/ nel path come con pip install -e .
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.gottesman_family import StabilizerCode  # noqa: E402
from core.pauli_algebra import PauliOperator  # noqa: E402


@pytest.fixture
def five_qubit_code() -> StabilizerCode:
    """Codice [[5,1,3]] ciclico XZZXI"""
    gens = [PauliOperator.from_string(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")]
    return StabilizerCode(5, gens, name="five_qubit")


@pytest.fixture(scope="session")
def recovered_graph10():
    """G_1 dall'oracolo di ricerca (lento: solo per i test marcati slow)"""
    from core.small_codes import recover_graph10
    return recover_graph10().graph
