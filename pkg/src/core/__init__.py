"""
Core Module per nonadditive-verifier
Algebra di Pauli, operatori densi esatti, codici seme, incollamento e bound LP
"""

__version__ = "1.0.0"
__author__ = "HPL Project"

# Import principali
try:
    from .artifact_manager import ArtifactManager
    from .pauli_algebra import PauliOperator
    from .graph_model import Graph, PermutationMap
    from .dense_engine import DenseOperator, DyadicComplex
except ImportError:
    # Fallback per import relativi
    pass

__all__ = [
    'ArtifactManager',
    'PauliOperator',
    'Graph',
    'PermutationMap',
    'DenseOperator',
    'DyadicComplex',
]
