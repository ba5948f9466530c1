#!/usr/bin/env python3
"""
Errors - Eccezioni del verificatore di codici

Le violazioni trovate durante una verifica sono contenuto dei report,
non eccezioni: qui ci sono solo gli errori di precondizione e di
costruzione.
"""


class DimensionError(ValueError):
    """Lunghezze o numero di qubit incompatibili"""


class ConstructionError(ValueError):
    """Osservabili non consistenti (errore di trascrizione o di costruzione)"""


class NotAdmissibleError(ValueError):
    """Lunghezza fuori dal regime del teorema sul bound LP"""


class RecoveryError(RuntimeError):
    """Ricerca esaustiva del grafo G_1 senza soluzioni"""
