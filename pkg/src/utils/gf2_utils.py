#!/usr/bin/env python3
"""
GF2 Utils - Algebra lineare densa su GF(2)

Eliminazione di Gauss con operazioni XOR tra righe su array numpy uint8.
Usata per il rango simplettico dei generatori e per il nucleo sinistro
delle maschere Pauli nei blocchi U.
"""

from typing import List, Optional, Tuple

import numpy as np


class GF2Utils:
    """Classe con utilità GF(2)"""

    @staticmethod
    def row_echelon(matrix, n_pivot_cols: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
        """
        Riduce una matrice binaria a forma a scala su GF(2)

        Args:
            matrix: Matrice binaria (m, n)
            n_pivot_cols: Cerca pivot solo nelle prime n_pivot_cols colonne;
                le operazioni di riga agiscono comunque sull'intera riga

        Returns:
            Tuple (forma a scala uint8, colonne pivot)
        """
        reduced = (np.asarray(matrix, dtype=np.uint8) % 2).copy()
        m, n = reduced.shape
        if n_pivot_cols is None:
            n_pivot_cols = n

        pivot_cols: List[int] = []
        pivot_row = 0
        for col in range(n_pivot_cols):
            if pivot_row >= m:
                break
            rows = np.nonzero(reduced[pivot_row:, col])[0]
            if rows.size == 0:
                continue
            found = pivot_row + int(rows[0])
            if found != pivot_row:
                reduced[[pivot_row, found]] = reduced[[found, pivot_row]]
            below = np.nonzero(reduced[pivot_row + 1:, col])[0] + pivot_row + 1
            if below.size:
                reduced[below] ^= reduced[pivot_row]
            pivot_cols.append(col)
            pivot_row += 1

        return reduced, pivot_cols

    @staticmethod
    def rank(matrix) -> int:
        """Rango su GF(2)"""
        _, pivot_cols = GF2Utils.row_echelon(matrix)
        return len(pivot_cols)

    @staticmethod
    def left_kernel(matrix) -> np.ndarray:
        """
        Base del nucleo sinistro {c : c^T M = 0} su GF(2)

        Args:
            matrix: Matrice binaria (m, n)

        Returns:
            Array (dim_kernel, m) con un vettore di base per riga
        """
        mat = np.asarray(matrix, dtype=np.uint8) % 2
        m, n = mat.shape
        augmented = np.concatenate([mat, np.eye(m, dtype=np.uint8)], axis=1)
        reduced, pivot_cols = GF2Utils.row_echelon(augmented, n_pivot_cols=n)
        return reduced[len(pivot_cols):, n:].copy()

    @staticmethod
    def int_to_bits(value: int, length: int) -> np.ndarray:
        """Intero -> vettore di bit (bit 0 = posizione 0)"""
        return np.array([(value >> i) & 1 for i in range(length)], dtype=np.uint8)

    @staticmethod
    def bits_to_int(bits) -> int:
        value = 0
        for i, bit in enumerate(bits):
            if int(bit) & 1:
                value |= 1 << i
        return value

    @staticmethod
    def span(basis: np.ndarray) -> List[int]:
        """Tutte le combinazioni della base, come maschere intere ordinate"""
        vectors = [GF2Utils.bits_to_int(row) for row in basis]
        elements = {0}
        for vec in vectors:
            elements |= {e ^ vec for e in elements}
        return sorted(elements)
