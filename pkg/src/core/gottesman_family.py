#!/usr/bin/env python3
"""
Gottesman Family - Sottocodici stabilizzatori [[2^j, 2^j - j - 2, 3]], j = 2r+3

Tutto è simbolico: i generatori sono PauliOperator su 2^j qubit, la
verifica della distanza è un controllo di sindrome.
"""

import functools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from core.errors import ConstructionError, DimensionError
from core.pauli_algebra import LETTER_ORDER, PauliOperator, commutes, count_errors
from utils.gf2_utils import GF2Utils


@dataclass(frozen=True)
class CheckMatrix:
    """H_r: la colonna q è la rappresentazione binaria di q (h_1 = bit più significativo)"""

    r: int
    rows: Tuple[int, ...]

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_columns(self) -> int:
        return 1 << self.num_rows

    def row(self, k: int) -> int:
        """h_k come maschera di qubit; h_0 = 0"""
        if k == 0:
            return 0
        if not 1 <= k <= self.num_rows:
            raise DimensionError(f"Riga h_{k} fuori da 0..{self.num_rows}")
        return self.rows[k - 1]

    def column(self, q: int) -> List[int]:
        return [(row >> q) & 1 for row in self.rows]

    def to_array(self) -> np.ndarray:
        return np.array([[(row >> q) & 1 for q in range(self.num_columns)] for row in self.rows],
                        dtype=np.uint8)


@dataclass
class StabilizerCode:
    """Codice stabilizzatore dato dai generatori"""

    n: int
    generators: List[PauliOperator]
    name: str = ""

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def k(self) -> int:
        return self.n - self.num_generators

    def non_commuting_pairs(self) -> List[Tuple[int, int]]:
        gens = self.generators
        return [(i, j) for i in range(len(gens)) for j in range(i + 1, len(gens))
                if not commutes(gens[i], gens[j])]

    def symplectic_matrix(self) -> np.ndarray:
        """Righe [x | z] su GF(2)"""
        return np.array([GF2Utils.int_to_bits(g.x_mask, self.n).tolist()
                         + GF2Utils.int_to_bits(g.z_mask, self.n).tolist()
                         for g in self.generators], dtype=np.uint8)

    def rank(self) -> int:
        return GF2Utils.rank(self.symplectic_matrix())

    def is_independent(self) -> bool:
        return self.rank() == self.num_generators

    def parameters(self) -> str:
        return f"[[{self.n},{self.k},3]]"

    def to_json(self) -> Dict[str, object]:
        return {"n": self.n, "generators": [g.to_compact() for g in self.generators]}


@dataclass
class PurityReport:
    """Esito della verifica di purezza a distanza 3"""

    code: str
    errors_checked: int
    violations: List[PauliOperator] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, object]:
        return {
            "code": self.code,
            "errors_checked": self.errors_checked,
            "violations": [v.to_string() for v in self.violations],
        }


def block_size(r: int) -> int:
    return 1 << (2 * r + 3)


@functools.lru_cache(maxsize=8)
def h_matrix(r: int) -> CheckMatrix:
    """Matrice (2r+3) x 2^(2r+3) delle rappresentazioni binarie"""
    if r < 1:
        raise DimensionError(f"r deve essere >= 1, ricevuto {r}")
    j = 2 * r + 3
    rows = []
    for k in range(1, j + 1):
        bit = j - k
        rows.append(sum(1 << q for q in range(1 << j) if (q >> bit) & 1))
    return CheckMatrix(r, tuple(rows))


def s_generator(r: int, k: int) -> PauliOperator:
    """S^r_k = X^{h_k} Z^{h_{k-1} + h_1 + h_{2r+3}}, hermitiano"""
    h = h_matrix(r)
    j = h.num_rows
    if not 1 <= k <= j:
        raise DimensionError(f"S^{r}_{k}: k fuori da 1..{j}")
    z = h.row(k - 1) ^ h.row(1) ^ h.row(j)
    return PauliOperator.hermitian(h.num_columns, h.row(k), z)


def x_all(r: int) -> PauliOperator:
    n = block_size(r)
    return PauliOperator(n, (1 << n) - 1, 0)


def z_all(r: int) -> PauliOperator:
    n = block_size(r)
    return PauliOperator(n, 0, (1 << n) - 1)


@functools.lru_cache(maxsize=8)
def generators(r: int) -> StabilizerCode:
    """
    I 2r+5 generatori X_U, Z_U, S^r_1..S^r_{2r+3}

    Raises:
        DimensionError: r < 1
        ConstructionError: Generatori che non commutano
    """
    n = block_size(r)
    gens = [x_all(r), z_all(r)] + [s_generator(r, k) for k in range(1, 2 * r + 4)]
    code = StabilizerCode(n, gens, name=f"gottesman_r{r}")
    bad = code.non_commuting_pairs()
    if bad:
        raise ConstructionError(f"Generatori che non commutano: {bad}")
    return code


def syndrome(code: StabilizerCode, error: PauliOperator) -> int:
    """Bit i = 1 se l'errore anticommuta con il generatore i"""
    if error.n != code.n:
        raise DimensionError(f"Errore su {error.n} qubit, codice su {code.n}")
    value = 0
    for i, gen in enumerate(code.generators):
        if not commutes(gen, error):
            value |= 1 << i
    return value


def hamming_identity(r: int) -> bool:
    """2r+5 = ceil(log2(3·2^(2r+3) + 1))"""
    return 2 * r + 5 == (3 * block_size(r)).bit_length()


def _single_syndromes(code: StabilizerCode) -> np.ndarray:
    """Sindromi degli errori di peso 1, forma (n, 3) in ordine X, Y, Z"""
    out = np.zeros((code.n, 3), dtype=np.int64)
    for q in range(code.n):
        for li, letter in enumerate(LETTER_ORDER):
            out[q, li] = syndrome(code, PauliOperator.single(code.n, q, letter))
    return out


def _pair_violations(single: np.ndarray, first: int, n: int) -> List[Tuple[int, int, int, int]]:
    # la sindrome di un prodotto su qubit diversi è lo XOR delle sindromi
    rest = single[first + 1:]
    equal = single[first][:, None][None, :, :] == rest[:, None, :]
    hits = np.argwhere(equal)
    return [(first, first + 1 + int(b), int(la), int(lb)) for b, la, lb in hits]


def verify_pure_distance3(code: StabilizerCode, max_weight: int = 2,
                          threads: int = 1) -> PurityReport:
    """
    Controlla che ogni errore di peso 1..max_weight abbia sindrome non nulla

    Args:
        code: Codice con generatori commutanti e indipendenti
        max_weight: 1 o 2
        threads: Thread per il controllo delle coppie

    Returns:
        PurityReport con gli errori a sindrome nulla, in ordine di enumerazione
    """
    if max_weight not in (1, 2):
        raise DimensionError(f"max_weight deve essere 1 o 2, ricevuto {max_weight}")
    start = time.perf_counter()
    n = code.n
    single = _single_syndromes(code)
    violations: List[PauliOperator] = []
    for q, li in np.argwhere(single == 0):
        violations.append(PauliOperator.single(n, int(q), LETTER_ORDER[int(li)]))

    if max_weight == 2:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                chunks = list(pool.map(lambda a: _pair_violations(single, a, n), range(n)))
        else:
            chunks = [_pair_violations(single, a, n) for a in range(n)]
        for a, b, la, lb in (hit for chunk in chunks for hit in chunk):
            error = PauliOperator.single(n, a, LETTER_ORDER[la]) * \
                PauliOperator.single(n, b, LETTER_ORDER[lb])
            violations.append(error)

    return PurityReport(
        code=code.parameters(),
        errors_checked=count_errors(n, max_weight),
        violations=violations,
        elapsed_ms=int((time.perf_counter() - start) * 1000),
    )
