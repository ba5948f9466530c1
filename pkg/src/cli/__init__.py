"""
CLI Module per nonadditive-verifier
Interfaccia a riga di comando: parametri, verifiche, bound LP, export
"""

__version__ = "1.0.0"
__author__ = "HPL Project"

