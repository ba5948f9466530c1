#!/usr/bin/env python3
"""
Exact Utils - Kernel esatti su array di interi

Tutte le matrici del progetto sono numeratori interi con un denominatore
comune 2^e. Queste funzioni scelgono il percorso numerico più veloce tra
quelli che restano esatti:

- float64 (BLAS) quando ogni somma parziale è < 2^53
- int64 quando ogni somma parziale è < 2^62
- array di oggetti (interi Python) altrimenti
"""

import functools
import operator
from typing import List, Sequence, Tuple

import numpy as np

FLOAT_EXACT_LIMIT = 2 ** 53
INT64_LIMIT = 2 ** 62


class ExactUtils:
    """Classe con utilità aritmetiche esatte per array numpy di interi"""

    @staticmethod
    def max_abs(arr: np.ndarray) -> int:
        """Massimo valore assoluto (0 per array vuoti)"""
        if arr.size == 0:
            return 0
        if arr.dtype == object:
            return int(max(abs(int(v)) for v in arr.ravel()))
        return int(np.abs(arr).max())

    @staticmethod
    def normalize(arr: np.ndarray) -> np.ndarray:
        """Riporta un array di oggetti a int64 quando i valori lo permettono"""
        if arr.dtype == object:
            if ExactUtils.max_abs(arr) < INT64_LIMIT:
                return arr.astype(np.int64)
            return arr
        if arr.dtype != np.int64:
            return arr.astype(np.int64)
        return arr

    @staticmethod
    def compact(arr: np.ndarray) -> np.ndarray:
        """Riduce il dtype al più piccolo intero che contiene i valori"""
        bound = ExactUtils.max_abs(arr)
        for dtype in (np.int8, np.int16, np.int32, np.int64):
            if bound <= np.iinfo(dtype).max:
                return arr.astype(dtype)
        return arr

    @staticmethod
    def _widen(arr: np.ndarray, bound: int) -> np.ndarray:
        if bound < INT64_LIMIT:
            return arr.astype(np.int64)
        return arr.astype(object)

    @staticmethod
    def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        bound = ExactUtils.max_abs(a) + ExactUtils.max_abs(b)
        return ExactUtils._widen(a, bound) + ExactUtils._widen(b, bound)

    @staticmethod
    def sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        bound = ExactUtils.max_abs(a) + ExactUtils.max_abs(b)
        return ExactUtils._widen(a, bound) - ExactUtils._widen(b, bound)

    @staticmethod
    def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Prodotto elemento per elemento"""
        bound = ExactUtils.max_abs(a) * ExactUtils.max_abs(b)
        return ExactUtils._widen(a, bound) * ExactUtils._widen(b, bound)

    @staticmethod
    def scale(a: np.ndarray, factor: int) -> np.ndarray:
        bound = ExactUtils.max_abs(a) * abs(factor)
        return ExactUtils._widen(a, bound) * factor

    @staticmethod
    def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """
        Prodotto matriciale esatto

        Args:
            a: Matrice di interi (m, k)
            b: Matrice di interi (k, n)

        Returns:
            Matrice di interi (m, n), int64 o oggetti
        """
        inner = a.shape[-1]
        bound = ExactUtils.max_abs(a) * ExactUtils.max_abs(b) * inner
        if bound == 0:
            return np.zeros((a.shape[0], b.shape[-1]), dtype=np.int64)
        if bound < FLOAT_EXACT_LIMIT:
            res = a.astype(np.float64) @ b.astype(np.float64)
            return np.rint(res).astype(np.int64)
        if bound < INT64_LIMIT:
            return a.astype(np.int64) @ b.astype(np.int64)
        return ExactUtils.normalize(a.astype(object) @ b.astype(object))

    @staticmethod
    def total(arr: np.ndarray) -> int:
        """Somma esatta di tutti gli elementi"""
        if arr.size == 0:
            return 0
        bound = ExactUtils.max_abs(arr) * arr.size
        if bound < INT64_LIMIT and arr.dtype != object:
            return int(arr.astype(np.int64).sum())
        return int(sum(int(v) for v in arr.ravel()))

    @staticmethod
    def column_totals(arr: np.ndarray) -> np.ndarray:
        """Somma esatta lungo l'asse 0"""
        bound = ExactUtils.max_abs(arr) * arr.shape[0]
        return ExactUtils._widen(arr, bound).sum(axis=0)

    @staticmethod
    def or_reduce(arrays: Sequence[np.ndarray]) -> int:
        """OR bit a bit dei valori assoluti di tutti gli array"""
        acc = 0
        for arr in arrays:
            if arr is None or arr.size == 0:
                continue
            if arr.dtype == object:
                acc |= functools.reduce(operator.or_, (abs(int(v)) for v in arr.ravel()), 0)
            else:
                acc |= int(np.bitwise_or.reduce(np.abs(arr.astype(np.int64)).ravel()))
        return acc

    @staticmethod
    def reduce_dyadic(arrays: List[np.ndarray], exp: int) -> Tuple[List[np.ndarray], int]:
        """
        Porta la frazione diadica in forma canonica (esponente minimo)

        Args:
            arrays: Numeratori (parte reale e immaginaria) con denominatore comune
            exp: Esponente del denominatore 2^exp

        Returns:
            Tuple (numeratori ridotti, esponente ridotto)
        """
        common = ExactUtils.or_reduce(arrays)
        if common == 0:
            return [np.zeros_like(a, dtype=np.int64) if a is not None else None
                    for a in arrays], 0
        trailing = (common & -common).bit_length() - 1
        shift = min(trailing, exp)
        if shift == 0:
            return arrays, exp
        return [a >> shift if a is not None else None for a in arrays], exp - shift

    @staticmethod
    def shift_left(arr: np.ndarray, bits: int) -> np.ndarray:
        if bits == 0:
            return arr
        return ExactUtils.scale(arr, 1 << bits)

    @staticmethod
    def fwht(vec: np.ndarray) -> np.ndarray:
        """
        Trasformata di Walsh-Hadamard esatta

        Returns:
            Vettore w con w[k] = sum_i (-1)^{popcount(i & k)} vec[i]
        """
        size = vec.shape[0]
        bound = ExactUtils.max_abs(vec) * size
        out = ExactUtils._widen(vec.copy(), bound)
        h = 1
        while h < size:
            blocks = out.reshape(-1, 2, h)
            lo = blocks[:, 0, :]
            hi = blocks[:, 1, :]
            out = np.stack((lo + hi, lo - hi), axis=1).reshape(-1)
            h *= 2
        return out

    @staticmethod
    @functools.lru_cache(maxsize=8)
    def xor_index(size: int) -> np.ndarray:
        """Tabella (i, k) -> i XOR k"""
        idx = np.arange(size, dtype=np.int64)
        return idx[:, None] ^ idx[None, :]

    @staticmethod
    @functools.lru_cache(maxsize=8)
    def popcount_table(num_bits: int) -> np.ndarray:
        """Popcount di tutti gli interi 0..2^num_bits-1"""
        table = np.zeros(1 << num_bits, dtype=np.int64)
        for bit in range(num_bits):
            table[1 << bit:1 << (bit + 1)] = table[:1 << bit] + 1
        return table

    @staticmethod
    def parity(value: int) -> int:
        return bin(value).count("1") & 1

    @staticmethod
    def popcount(value: int) -> int:
        return bin(value).count("1")
