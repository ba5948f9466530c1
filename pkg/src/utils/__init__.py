"""
Utils Module per nonadditive-verifier
Kernel interi esatti, algebra su GF(2) e logging delle esecuzioni
"""

__version__ = "1.0.0"
__author__ = "HPL Project"

# Import principali
try:
    from .exact_utils import ExactUtils
    from .gf2_utils import GF2Utils
except ImportError:
    # Fallback per import relativi
    pass

__all__ = [
    'ExactUtils',
    'GF2Utils',
]
