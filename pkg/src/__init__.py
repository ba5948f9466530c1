"""
Nonadditive Verifier - Pacchetto principale

Verifica esatta dei codici nonadditivi a distanza 3 ottenuti incollando
i codici di Gottesman con i codici seme ((9,12,3)) e ((10,24,3)), e del
bound di programmazione lineare sui codici stabilizzatori della stessa lunghezza.
"""

__version__ = "1.0.0"
__author__ = "HPL Project"
__description__ = "Nonadditive Verifier"
