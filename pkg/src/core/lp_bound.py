#!/usr/bin/env python3
"""
LP Bound - Enumeratori dei pesi e bound di programmazione lineare ristretto

Tutta l'aritmetica è razionale esatta (fractions.Fraction): le
conclusioni dipendono da disuguaglianze strette su potenze di 2.

Vincoli ristretti per un codice [[n, k, 3]] con s = n - k:
    (a) 2^s A_1 = sum_i (3n - 4i) A_i
    (b) 2^(s+1) A_2 = sum_i ((4i - 3n + 1)^2 - 3n - 1) A_i
    (c) sum_{i pari} A_i >= 2^(s-1)
più A_i >= 0, A_0 = 1, sum_i A_i = 2^s.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.dense_engine import DenseOperator, trace_pauli_all_z
from core.errors import DimensionError, NotAdmissibleError
from core.gottesman_family import StabilizerCode
from utils.exact_utils import ExactUtils

MAX_ENUMERATOR_QUBITS = 10


@dataclass
class WeightEnumerator:
    """A_0..A_n con normalizzazione 2^s (stabilizzatore) o K (proiettore)"""

    n: int
    values: List[Fraction]
    s: Optional[int] = None
    dimension: Optional[Fraction] = None

    @property
    def total(self) -> Fraction:
        """sum_i A_i atteso: 2^s oppure 2^n / K"""
        if self.s is not None:
            return Fraction(2 ** self.s)
        if self.dimension is not None:
            return Fraction(2 ** self.n) / self.dimension
        return sum(self.values, Fraction(0))

    def is_consistent(self) -> bool:
        return (all(v >= 0 for v in self.values) and self.values[0] == 1
                and sum(self.values, Fraction(0)) == self.total)

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "A": [str(v) for v in self.values],
            "s": self.s,
            "K": str(self.dimension) if self.dimension is not None else None,
        }


def average(w: WeightEnumerator, f: Callable[[int], int]) -> Fraction:
    """<f(x)> = sum_i f(i) A_i / sum_i A_i"""
    return sum((f(i) * a for i, a in enumerate(w.values)), Fraction(0)) / w.total


def hamming_bound(n: int) -> int:
    """ceil(log2(3n + 1))"""
    if n < 1:
        raise DimensionError(f"n deve essere >= 1, ricevuto {n}")
    return (3 * n).bit_length()


# --- istanza LP ---

@dataclass
class LPInstance:
    """
    Sistema A x = b, x >= 0 sulle variabili A_0..A_n e una slack per (c)
    """

    n: int
    s: int
    matrix: List[List[Fraction]]
    rhs: List[Fraction]
    labels: List[str]
    variables: List[str]

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def constraint_count(self) -> Dict[str, int]:
        return {"structural": 3, "nonnegativity": self.n, "normalization": 2}

    def residuals(self, point: Sequence[Fraction]) -> List[Fraction]:
        return [sum((c * x for c, x in zip(row, point)), Fraction(0)) - b
                for row, b in zip(self.matrix, self.rhs)]

    def satisfied_by(self, enumerator: WeightEnumerator) -> bool:
        """True se l'enumeratore (con slack calcolata) soddisfa ogni vincolo"""
        if enumerator.n != self.n:
            raise DimensionError(f"Enumeratore su {enumerator.n} qubit, istanza su {self.n}")
        values = list(enumerator.values)
        slack = sum(values[0::2], Fraction(0)) - Fraction(2 ** (self.s - 1))
        point = values + [slack]
        return all(x >= 0 for x in point) and all(r == 0 for r in self.residuals(point))


def restricted_constraints(n: int, s: int) -> LPInstance:
    """Istanza LP con i vincoli (a), (b), (c) e le normalizzazioni"""
    if not 1 <= s <= n:
        raise DimensionError(f"s deve stare in 1..{n}, ricevuto {s}")
    size = n + 2  # A_0..A_n, slack
    two_s = Fraction(2 ** s)

    def row(coeffs: Callable[[int], Fraction], slack: Fraction = Fraction(0)) -> List[Fraction]:
        return [Fraction(coeffs(i)) for i in range(n + 1)] + [slack]

    a0 = [Fraction(0)] * size
    a0[0] = Fraction(1)
    matrix = [
        a0,
        row(lambda i: 1),
        row(lambda i: (two_s if i == 1 else 0) - (3 * n - 4 * i)),
        row(lambda i: (2 * two_s if i == 2 else 0) - ((4 * i - 3 * n + 1) ** 2 - 3 * n - 1)),
        row(lambda i: 1 if i % 2 == 0 else 0, slack=Fraction(-1)),
    ]
    rhs = [Fraction(1), two_s, Fraction(0), Fraction(0), two_s / 2]
    labels = ["A_0 = 1", "sum A_i = 2^s", "(a)", "(b)", "(c)"]
    variables = [f"A_{i}" for i in range(n + 1)] + ["t"]
    return LPInstance(n, s, matrix, rhs, labels, variables)


@dataclass
class LPResult:
    """Esito di lp_feasible con punto o certificato di Farkas"""

    n: int
    s: int
    feasible: bool
    point: List[Fraction] = field(default_factory=list)
    certificate: List[Fraction] = field(default_factory=list)
    verified: bool = False

    @property
    def verdict(self) -> str:
        # solo i vincoli ristretti: la fattibilità non prova l'esistenza
        return "not excluded" if self.feasible else "infeasible"

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "s_tested": self.s,
            "verdict": self.verdict,
            "verified": self.verified,
            "point": [str(x) for x in self.point],
            "certificate": [str(y) for y in self.certificate],
        }


def _pivot(tableau: List[List[Fraction]], row: int, col: int):
    pivot = tableau[row][col]
    tableau[row] = [v / pivot for v in tableau[row]]
    for r, current in enumerate(tableau):
        if r != row and current[col] != 0:
            factor = current[col]
            tableau[r] = [a - factor * b for a, b in zip(current, tableau[row])]


def lp_feasible(instance: LPInstance) -> LPResult:
    """
    Fattibilità esatta con il simplesso di fase 1 (regola di Bland)

    Returns:
        LPResult con il punto ammissibile oppure il certificato y tale
        che y^T A >= 0 e y^T b < 0, entrambi verificati esattamente
    """
    m = len(instance.matrix)
    nv = instance.num_variables
    flips = [1 if b >= 0 else -1 for b in instance.rhs]
    rows = [[f * c for c in r] for f, r in zip(flips, instance.matrix)]
    rhs = [f * b for f, b in zip(flips, instance.rhs)]

    # [A | I | b], base iniziale = artificiali
    tableau = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [nv + i for i in range(m)]
    # riga dei costi ridotti per min sum artificiali
    cost = [Fraction(0)] * nv + [Fraction(1)] * m + [Fraction(0)]
    objective = list(cost)
    for i in range(m):
        objective = [o - t for o, t in zip(objective, tableau[i])]

    while True:
        entering = next((j for j in range(nv + m) if objective[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            if tableau[i][entering] > 0:
                ratio = tableau[i][-1] / tableau[i][entering]
                if best is None or (ratio, basis[i]) < (best[0], basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break  # non limitato: impossibile in fase 1
        leaving = best[1]
        _pivot(tableau, leaving, entering)
        objective = [o - objective[entering] * t for o, t in zip(objective, tableau[leaving])]
        basis[leaving] = entering

    optimum = -objective[-1]
    result = LPResult(instance.n, instance.s, feasible=(optimum == 0))
    if result.feasible:
        point = [Fraction(0)] * nv
        for i, var in enumerate(basis):
            if var < nv:
                point[var] = tableau[i][-1]
        result.point = point
        result.verified = (all(x >= 0 for x in point)
                           and all(r == 0 for r in instance.residuals(point)))
    else:
        # costo ridotto dell'artificiale j = 1 - y_j
        duals = [1 - objective[nv + j] for j in range(m)]
        result.certificate = [-flips[j] * duals[j] for j in range(m)]
        result.verified = verify_certificate(instance, result.certificate)
    return result


def verify_certificate(instance: LPInstance, y: Sequence[Fraction]) -> bool:
    """y^T A >= 0 colonna per colonna e y^T b < 0"""
    for col in range(instance.num_variables):
        if sum((y[i] * instance.matrix[i][col] for i in range(len(y))), Fraction(0)) < 0:
            return False
    return sum((yi * b for yi, b in zip(y, instance.rhs)), Fraction(0)) < 0


# --- replay del teorema ---

@dataclass
class TheoremReplay:
    """Catena di disuguaglianze verificata per una lunghezza ammissibile"""

    n: int
    m: int
    a: int
    min_s: int = 0
    transcript: List[Tuple[str, bool]] = field(default_factory=list)

    def check(self, description: str, value: bool):
        self.transcript.append((description, bool(value)))
        if not value:
            raise NotAdmissibleError(f"n = {self.n}: fallisce {description}")

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "m": self.m,
            "a": self.a,
            "min_s": self.min_s,
            "transcript": [{"check": d, "holds": ok} for d, ok in self.transcript],
        }


def admissible_form(n: int) -> Tuple[int, int]:
    """(m, a) con n = (2^(2m+5) - 5)/3 + a"""
    for a in (0, 1):
        value = 3 * (n - a) + 5
        exponent = value.bit_length() - 1
        if value > 0 and value == 1 << exponent and exponent >= 5 and exponent % 2 == 1:
            return (exponent - 5) // 2, a
    raise NotAdmissibleError(f"n = {n} non è della forma (2^(2m+5) - 5)/3 + a")


def _identity_points(n: int) -> List[int]:
    return [0, 1, 2, 3, n // 2, n]


def theorem_replay(n: int) -> TheoremReplay:
    """
    Ripercorre la dimostrazione per n = N_m^a

    Raises:
        NotAdmissibleError: n non ammissibile o una disuguaglianza non vale
    """
    m, a = admissible_form(n)
    replay = TheoremReplay(n, m, a)
    lp_a = lambda x: 3 * n - 4 * x
    lp_b = lambda x: (4 * x - 3 * n + 1) ** 2 - 3 * n - 1

    if a == 0:
        f = lambda x: (3 * n + 1 - 4 * x) ** 2
        replay.check("(3n+1)/4 è un intero dispari",
                     (3 * n + 1) % 4 == 0 and ((3 * n + 1) // 4) % 2 == 1)
        replay.check("f(0) > (3n+5)(3n-7)+16", f(0) > (3 * n + 5) * (3 * n - 7) + 16)
        replay.check("f(1) > 4(3n+5)", f(1) > 4 * (3 * n + 5))
        replay.check("f(2) > 2(3n+5)+16", f(2) > 2 * (3 * n + 5) + 16)
        replay.check("f(2i) >= 16 per ogni i",
                     all(f(2 * i) >= 16 for i in range(n // 2 + 1)))
        # <f> = 3n+1 + 4A_1 + 2A_2 segue da f(x) = 3n+1 + 4·(a)(x) + (b)(x)
        replay.check("f(x) = 3n+1 + 4(3n-4x) + ((4x-3n+1)^2-3n-1)",
                     all(f(x) == 3 * n + 1 + 4 * lp_a(x) + lp_b(x) for x in _identity_points(n)))
        bound = 3 * n + 5
    else:
        g = lambda x: (3 * n + 2 - 4 * x) * (3 * n - 2 - 4 * x)
        replay.check("(3n+2)/4 è intero", (3 * n + 2) % 4 == 0)
        replay.check("g(x) >= 0 sugli interi 0..n", all(g(x) >= 0 for x in range(n + 1)))
        replay.check("g(1) > 2(3n+2)", g(1) > 2 * (3 * n + 2))
        replay.check("g(2) > 2(3n+2)", g(2) > 2 * (3 * n + 2))
        replay.check("g(0) > (3n+2)(3n-4)", g(0) > (3 * n + 2) * (3 * n - 4))
        replay.check("g(x) = 3n-4 + 2(3n-4x) + ((4x-3n+1)^2-3n-1)",
                     all(g(x) == 3 * n - 4 + 2 * lp_a(x) + lp_b(x) for x in _identity_points(n)))
        bound = 3 * n + 2

    # 2^s > bound
    replay.min_s = bound.bit_length()
    replay.check(f"2^{replay.min_s} > {bound} >= 2^{replay.min_s - 1}",
                 2 ** replay.min_s > bound >= 2 ** (replay.min_s - 1))
    replay.check(f"s minimo = 2m+6 = {2 * m + 6}", replay.min_s == 2 * m + 6)
    return replay


def theorem_lower_bound(n: int) -> int:
    """s minimo ammesso dal teorema per n = N_m^a"""
    return theorem_replay(n).min_s


# --- enumeratori ---

def _weight_sums(p: DenseOperator, x_mask: int) -> List[int]:
    re, im, _ = trace_pauli_all_z(p, x_mask)
    squares = ExactUtils.mul(re, re)
    if im is not None:
        squares = ExactUtils.add(squares, ExactUtils.mul(im, im))
    weights = ExactUtils.popcount_table(p.num_qubits)[np.arange(p.dim) | x_mask]
    return [ExactUtils.total(squares[weights == w]) for w in range(p.num_qubits + 1)]


def weight_distribution(p: DenseOperator, dimension: Fraction, threads: int = 1) -> WeightEnumerator:
    """
    A_i = (1/K^2) sum_{|ω| = i} |Tr(P E_ω)|^2 su tutti i 4^n Pauli

    Args:
        p: Proiettore su al più 10 qubit
        dimension: K = Tr(P)
        threads: Thread sulle maschere X
    """
    n = p.num_qubits
    if n > MAX_ENUMERATOR_QUBITS:
        raise DimensionError(f"Enumeratore limitato a {MAX_ENUMERATOR_QUBITS} qubit")
    masks = range(1 << n)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda x: _weight_sums(p, x), masks))
    else:
        partials = [_weight_sums(p, x) for x in masks]
    totals = [sum(part[w] for part in partials) for w in range(n + 1)]
    denom = Fraction(1 << (2 * p.exp)) * Fraction(dimension) ** 2
    return WeightEnumerator(n, [Fraction(t) / denom for t in totals], dimension=Fraction(dimension))


def stabilizer_weight_distribution(code: StabilizerCode) -> WeightEnumerator:
    """A_i = numero di elementi del gruppo stabilizzatore di peso i"""
    counts = [0] * (code.n + 1)
    gens = [(g.x_mask, g.z_mask) for g in code.generators]
    for choice in itertools.product((0, 1), repeat=len(gens)):
        x = z = 0
        for bit, (gx, gz) in zip(choice, gens):
            if bit:
                x ^= gx
                z ^= gz
        counts[ExactUtils.popcount(x | z)] += 1
    return WeightEnumerator(code.n, [Fraction(c) for c in counts], s=len(gens))
