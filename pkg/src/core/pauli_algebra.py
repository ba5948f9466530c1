#!/usr/bin/env python3
"""
Pauli Algebra - Algebra simbolica esatta dei Pauli a n qubit

Un Pauli è rappresentato da due vettori di bit su GF(2) (maschera X e
maschera Z) e da un esponente di fase k mod 4:

    P = i^k · X^x · Z^z

Il qubit 0 è il bit meno significativo della maschera. Le maschere sono
interi Python (parole di macchina impacchettate, lunghezza arbitraria).
"""

import itertools
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List

from core.errors import DimensionError
from utils.exact_utils import ExactUtils

LETTER_ORDER = ("X", "Y", "Z")
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


@dataclass(frozen=True)
class BinaryVector:
    """Vettore su GF(2) di lunghezza fissa"""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError(f"Lunghezza negativa: {self.length}")
        if self.bits >> self.length:
            raise DimensionError(f"Bit oltre la lunghezza {self.length}")

    @classmethod
    def from_positions(cls, length: int, positions: Iterable[int]) -> "BinaryVector":
        bits = 0
        for pos in positions:
            if not 0 <= pos < length:
                raise DimensionError(f"Posizione {pos} fuori da 0..{length - 1}")
            bits ^= 1 << pos
        return cls(length, bits)

    @classmethod
    def ones(cls, length: int) -> "BinaryVector":
        return cls(length, (1 << length) - 1)

    def __xor__(self, other: "BinaryVector") -> "BinaryVector":
        if self.length != other.length:
            raise DimensionError(f"Lunghezze diverse: {self.length} != {other.length}")
        return BinaryVector(self.length, self.bits ^ other.bits)

    def __getitem__(self, pos: int) -> int:
        if not 0 <= pos < self.length:
            raise IndexError(pos)
        return (self.bits >> pos) & 1

    def weight(self) -> int:
        return ExactUtils.popcount(self.bits)

    def dot(self, other: "BinaryVector") -> int:
        if self.length != other.length:
            raise DimensionError(f"Lunghezze diverse: {self.length} != {other.length}")
        return ExactUtils.parity(self.bits & other.bits)

    def positions(self) -> List[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]


@dataclass(frozen=True)
class PauliOperator:
    """Pauli a n qubit: i^phase_exp · X^x_mask · Z^z_mask"""

    n: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError(f"Numero di qubit negativo: {self.n}")
        if (self.x_mask >> self.n) or (self.z_mask >> self.n):
            raise DimensionError(f"Maschere oltre {self.n} qubit")
        if self.x_mask < 0 or self.z_mask < 0:
            raise DimensionError("Maschere negative")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # --- costruttori ---

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n)

    @classmethod
    def from_vectors(cls, x: BinaryVector, z: BinaryVector, phase_exp: int = 0) -> "PauliOperator":
        if x.length != z.length:
            raise DimensionError(f"Lunghezze diverse: {x.length} != {z.length}")
        return cls(x.length, x.bits, z.bits, phase_exp)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOperator":
        """Pauli di peso 1 (Y inteso come X·Z, fase 0)"""
        if not 0 <= qubit < n:
            raise DimensionError(f"Qubit {qubit} fuori da 0..{n - 1}")
        xb, zb = _LETTER_BITS[letter]
        return cls(n, xb << qubit, zb << qubit)

    @classmethod
    def x_on(cls, n: int, qubits: Iterable[int]) -> "PauliOperator":
        return cls(n, BinaryVector.from_positions(n, qubits).bits, 0)

    @classmethod
    def z_on(cls, n: int, qubits: Iterable[int]) -> "PauliOperator":
        return cls(n, 0, BinaryVector.from_positions(n, qubits).bits)

    @classmethod
    def hermitian(cls, n: int, x_mask: int, z_mask: int) -> "PauliOperator":
        """Pauli hermitiano con le lettere Y esplicite (i·X·Z = Y)"""
        return cls(n, x_mask, z_mask, ExactUtils.popcount(x_mask & z_mask))

    # --- proprietà ---

    @property
    def x(self) -> BinaryVector:
        return BinaryVector(self.n, self.x_mask)

    @property
    def z(self) -> BinaryVector:
        return BinaryVector(self.n, self.z_mask)

    @property
    def support(self) -> int:
        return self.x_mask | self.z_mask

    def is_identity_up_to_phase(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def y_count(self) -> int:
        return ExactUtils.popcount(self.x_mask & self.z_mask)

    def is_hermitian(self) -> bool:
        return (self.phase_exp - self.y_count()) % 2 == 0

    def square_phase(self) -> int:
        """P^2 = i^(valore) · I"""
        return (2 * self.phase_exp + 2 * self.y_count()) % 4

    def adjoint(self) -> "PauliOperator":
        # (i^k X^x Z^z)^† = i^-k Z^z X^x = i^(-k + 2|x∧z|) X^x Z^z
        return PauliOperator(self.n, self.x_mask, self.z_mask,
                             -self.phase_exp + 2 * self.y_count())

    def restrict(self, offset: int, size: int) -> "PauliOperator":
        """Fattore sui qubit offset..offset+size-1 (fase scartata)"""
        mask = (1 << size) - 1
        return PauliOperator(size, (self.x_mask >> offset) & mask, (self.z_mask >> offset) & mask)

    def embed(self, n: int, offset: int) -> "PauliOperator":
        """Immerge il Pauli in un sistema di n qubit a partire da offset"""
        if offset + self.n > n:
            raise DimensionError(f"Blocco {offset}+{self.n} oltre {n} qubit")
        return PauliOperator(n, self.x_mask << offset, self.z_mask << offset, self.phase_exp)

    # --- serializzazione ---

    def to_string(self) -> str:
        """Forma "i^k " + lettere I/X/Y/Z in ordine crescente di qubit (Y = i·X·Z)"""
        letters = []
        for q in range(self.n):
            xb = (self.x_mask >> q) & 1
            zb = (self.z_mask >> q) & 1
            letters.append("IZXY"[2 * xb + zb])
        k = (self.phase_exp - self.y_count()) % 4
        return f"i^{k} " + "".join(letters)

    @classmethod
    def from_string(cls, text: str) -> "PauliOperator":
        text = text.strip()
        k = 0
        if text.startswith("i^"):
            head, _, text = text.partition(" ")
            k = int(head[2:])
        x_mask = z_mask = 0
        for q, letter in enumerate(text.strip()):
            if letter not in _LETTER_BITS:
                raise ValueError(f"Lettera Pauli non valida: {letter!r}")
            xb, zb = _LETTER_BITS[letter]
            x_mask |= xb << q
            z_mask |= zb << q
        n = len(text.strip())
        return cls(n, x_mask, z_mask, k + ExactUtils.popcount(x_mask & z_mask))

    def to_compact(self) -> Dict[str, object]:
        return {
            "x_mask_hex": format(self.x_mask, "x"),
            "z_mask_hex": format(self.z_mask, "x"),
            "phase_exp": self.phase_exp,
        }

    @classmethod
    def from_compact(cls, n: int, data: Dict[str, object]) -> "PauliOperator":
        return cls(n, int(str(data["x_mask_hex"]), 16), int(str(data["z_mask_hex"]), 16),
                   int(data["phase_exp"]))

    def __str__(self) -> str:
        return self.to_string()

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)


def _check_lengths(p: PauliOperator, q: PauliOperator):
    if p.n != q.n:
        raise DimensionError(f"Pauli su {p.n} e {q.n} qubit")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """
    Prodotto nel gruppo di Pauli

    Portare Z^z_p oltre X^x_q costa (-1)^{|x_q ∧ z_p|}.
    """
    _check_lengths(p, q)
    phase = p.phase_exp + q.phase_exp + 2 * ExactUtils.popcount(q.x_mask & p.z_mask)
    return PauliOperator(p.n, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask, phase)


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    _check_lengths(p, q)
    return ExactUtils.parity((p.x_mask & q.z_mask) ^ (q.x_mask & p.z_mask))


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """True se x_p·z_q + x_q·z_p = 0 (mod 2), indipendente dalle fasi"""
    return symplectic_product(p, q) == 0


def weight(p: PauliOperator) -> int:
    """Numero di qubit su cui il Pauli agisce non banalmente"""
    return ExactUtils.popcount(p.support)


def product(paulis: Iterable[PauliOperator], n: int) -> PauliOperator:
    """Prodotto ordinato (da sinistra a destra)"""
    acc = PauliOperator.identity(n)
    for p in paulis:
        acc = multiply(acc, p)
    return acc


def count_errors(n: int, max_weight: int) -> int:
    """sum_{w=1..max_weight} C(n, w) 3^w"""
    return sum(comb(n, w) * 3 ** w for w in range(1, max_weight + 1))


def enumerate_errors(n: int, max_weight: int) -> List[PauliOperator]:
    """
    Tutti i Pauli non identici di peso <= max_weight, fase 0

    Ordine: peso crescente, supporto crescente, poi X < Y < Z per qubit.
    """
    if max_weight > n:
        raise DimensionError(f"max_weight {max_weight} > n {n}")
    errors: List[PauliOperator] = []
    for w in range(1, max_weight + 1):
        for support in itertools.combinations(range(n), w):
            for letters in itertools.product(LETTER_ORDER, repeat=w):
                x_mask = z_mask = 0
                for q, letter in zip(support, letters):
                    xb, zb = _LETTER_BITS[letter]
                    x_mask |= xb << q
                    z_mask |= zb << q
                errors.append(PauliOperator(n, x_mask, z_mask))
    return errors
