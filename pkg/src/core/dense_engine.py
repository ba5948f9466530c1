#!/usr/bin/env python3
"""
Dense Engine - Operatori densi esatti su al più 12 qubit

Ogni operatore è memorizzato come numeratori interi (parte reale e, se
serve, immaginaria) con un denominatore comune 2^exp. Le entrate di tutti
gli operatori della costruzione (U_G, V_ab, M_perm, T, proiettori) stanno
in questo anello, quindi nessuna operazione arrotonda.

Convenzione di base: l'indice j ha il bit q uguale allo stato del qubit q.
Un Pauli E = i^k X^x Z^z agisce come E|j> = i^k (-1)^{z·j} |j ⊕ x>.
"""

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import ConstructionError, DimensionError
from core.graph_model import Graph, PermutationMap
from core.pauli_algebra import PauliOperator
from utils.exact_utils import ExactUtils

MAX_QUBITS = 12


@dataclass(frozen=True)
class DyadicComplex:
    """Scalare (re_num + i·im_num) / 2^denom_exp in forma canonica"""

    re_num: int = 0
    im_num: int = 0
    denom_exp: int = 0

    def __post_init__(self):
        re, im, exp = int(self.re_num), int(self.im_num), int(self.denom_exp)
        if exp < 0:
            re, im, exp = re << -exp, im << -exp, 0
        if re == 0 and im == 0:
            exp = 0
        while exp > 0 and re % 2 == 0 and im % 2 == 0:
            re, im, exp = re // 2, im // 2, exp - 1
        object.__setattr__(self, "re_num", re)
        object.__setattr__(self, "im_num", im)
        object.__setattr__(self, "denom_exp", exp)

    @classmethod
    def from_int(cls, value: int) -> "DyadicComplex":
        return cls(value, 0, 0)

    def _aligned(self, other: "DyadicComplex") -> Tuple[int, int, int, int, int]:
        exp = max(self.denom_exp, other.denom_exp)
        s = exp - self.denom_exp
        o = exp - other.denom_exp
        return self.re_num << s, self.im_num << s, other.re_num << o, other.im_num << o, exp

    def __add__(self, other: "DyadicComplex") -> "DyadicComplex":
        ar, ai, br, bi, exp = self._aligned(other)
        return DyadicComplex(ar + br, ai + bi, exp)

    def __sub__(self, other: "DyadicComplex") -> "DyadicComplex":
        ar, ai, br, bi, exp = self._aligned(other)
        return DyadicComplex(ar - br, ai - bi, exp)

    def __neg__(self) -> "DyadicComplex":
        return DyadicComplex(-self.re_num, -self.im_num, self.denom_exp)

    def __mul__(self, other: "DyadicComplex") -> "DyadicComplex":
        re = self.re_num * other.re_num - self.im_num * other.im_num
        im = self.re_num * other.im_num + self.im_num * other.re_num
        return DyadicComplex(re, im, self.denom_exp + other.denom_exp)

    def conjugate(self) -> "DyadicComplex":
        return DyadicComplex(self.re_num, -self.im_num, self.denom_exp)

    def abs2(self) -> "DyadicComplex":
        return DyadicComplex(self.re_num ** 2 + self.im_num ** 2, 0, 2 * self.denom_exp)

    def times_i_power(self, k: int) -> "DyadicComplex":
        re, im = self.re_num, self.im_num
        for _ in range(k % 4):
            re, im = -im, re
        return DyadicComplex(re, im, self.denom_exp)

    def is_zero(self) -> bool:
        return self.re_num == 0 and self.im_num == 0

    @property
    def real(self) -> Fraction:
        return Fraction(self.re_num, 1 << self.denom_exp)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.im_num, 1 << self.denom_exp)

    def __str__(self) -> str:
        if self.im_num == 0:
            return str(self.real)
        return f"{self.real}{'+' if self.im_num > 0 else '-'}{abs(self.imag)}i"


class DenseOperator:
    """Matrice 2^v x 2^v esatta: (re + i·im) / 2^exp"""

    def __init__(self, num_qubits: int, re: np.ndarray,
                 im: Optional[np.ndarray] = None, exp: int = 0):
        if num_qubits > MAX_QUBITS:
            raise DimensionError(f"Troppi qubit: {num_qubits} > {MAX_QUBITS}")
        dim = 1 << num_qubits
        if re.shape != (dim, dim) or (im is not None and im.shape != (dim, dim)):
            raise DimensionError(f"Matrice non {dim}x{dim}")
        if im is not None and ExactUtils.max_abs(im) == 0:
            im = None
        (re, im), exp = ExactUtils.reduce_dyadic([re, im], exp)
        self.num_qubits = num_qubits
        self.re = ExactUtils.normalize(re)
        self.im = ExactUtils.normalize(im) if im is not None else None
        self.exp = exp

    # --- costruttori ---

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    @classmethod
    def identity(cls, num_qubits: int) -> "DenseOperator":
        return cls(num_qubits, np.eye(1 << num_qubits, dtype=np.int64))

    @classmethod
    def diagonal(cls, num_qubits: int, diag: np.ndarray, exp: int = 0) -> "DenseOperator":
        return cls(num_qubits, np.diag(np.asarray(diag, dtype=np.int64)), None, exp)

    @classmethod
    def from_pauli(cls, p: PauliOperator) -> "DenseOperator":
        """Matrice di i^k X^x Z^z"""
        n = p.n
        if n > MAX_QUBITS:
            raise DimensionError(f"Troppi qubit: {n} > {MAX_QUBITS}")
        dim = 1 << n
        cols = np.arange(dim, dtype=np.int64)
        rows = cols ^ p.x_mask
        signs = 1 - 2 * (ExactUtils.popcount_table(n)[cols & p.z_mask] & 1)
        mat = np.zeros((dim, dim), dtype=np.int64)
        k = p.phase_exp
        mat[rows, cols] = signs if k in (0, 1) else -signs
        if k % 2 == 0:
            return cls(n, mat)
        return cls(n, np.zeros_like(mat), mat)

    # --- aritmetica ---

    def _parts(self) -> Tuple[np.ndarray, np.ndarray]:
        im = self.im if self.im is not None else np.zeros_like(self.re)
        return self.re, im

    def _check(self, other: "DenseOperator"):
        if self.num_qubits != other.num_qubits:
            raise DimensionError(f"Operatori su {self.num_qubits} e {other.num_qubits} qubit")

    def _aligned(self, other: "DenseOperator"):
        exp = max(self.exp, other.exp)
        a = [ExactUtils.shift_left(x, exp - self.exp) if x is not None else None
             for x in (self.re, self.im)]
        b = [ExactUtils.shift_left(x, exp - other.exp) if x is not None else None
             for x in (other.re, other.im)]
        return a, b, exp

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        return self._combine(other, ExactUtils.add)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        return self._combine(other, ExactUtils.sub)

    def _combine(self, other: "DenseOperator", op) -> "DenseOperator":
        self._check(other)
        (ar, ai), (br, bi), exp = self._aligned(other)
        re = op(ar, br)
        if ai is None and bi is None:
            return DenseOperator(self.num_qubits, re, None, exp)
        zero = np.zeros_like(ar, dtype=np.int64)
        im = op(ai if ai is not None else zero, bi if bi is not None else zero)
        return DenseOperator(self.num_qubits, re, im, exp)

    def __neg__(self) -> "DenseOperator":
        im = ExactUtils.scale(self.im, -1) if self.im is not None else None
        return DenseOperator(self.num_qubits, ExactUtils.scale(self.re, -1), im, self.exp)

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        self._check(other)
        exp = self.exp + other.exp
        if self.im is None and other.im is None:
            return DenseOperator(self.num_qubits, ExactUtils.matmul(self.re, other.re), None, exp)
        ar, ai = self._parts()
        br, bi = other._parts()
        re = ExactUtils.sub(ExactUtils.matmul(ar, br), ExactUtils.matmul(ai, bi))
        im = ExactUtils.add(ExactUtils.matmul(ar, bi), ExactUtils.matmul(ai, br))
        return DenseOperator(self.num_qubits, re, im, exp)

    def halved(self, times: int = 1) -> "DenseOperator":
        return DenseOperator(self.num_qubits, self.re, self.im, self.exp + times)

    def adjoint(self) -> "DenseOperator":
        im = ExactUtils.scale(self.im.T, -1) if self.im is not None else None
        return DenseOperator(self.num_qubits, self.re.T.copy(), im, self.exp)

    def conjugate_by(self, u: "DenseOperator") -> "DenseOperator":
        """U · self · U†"""
        return u @ self @ u.adjoint()

    def conjugate_by_signs(self, signs: np.ndarray) -> "DenseOperator":
        """D · self · D per una diagonale D di ±1"""
        outer = np.outer(signs, signs).astype(np.int64)
        im = ExactUtils.mul(self.im, outer) if self.im is not None else None
        return DenseOperator(self.num_qubits, ExactUtils.mul(self.re, outer), im, self.exp)

    # --- predicati ---

    def trace(self) -> DyadicComplex:
        im = ExactUtils.total(np.diagonal(self.im)) if self.im is not None else 0
        return DyadicComplex(ExactUtils.total(np.diagonal(self.re)), im, self.exp)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseOperator):
            return NotImplemented
        if self.num_qubits != other.num_qubits or self.exp != other.exp:
            return False
        if (self.im is None) != (other.im is None):
            return False
        if not np.array_equal(self.re, other.re):
            return False
        return self.im is None or bool(np.array_equal(self.im, other.im))

    __hash__ = None

    def is_identity(self) -> bool:
        return self == DenseOperator.identity(self.num_qubits)

    def is_hermitian(self) -> bool:
        return self == self.adjoint()

    def is_involution(self) -> bool:
        return (self @ self).is_identity()

    def is_idempotent(self) -> bool:
        return self @ self == self

    def commutes_with(self, other: "DenseOperator") -> bool:
        return self @ other == other @ self

    def fixes(self, vector: np.ndarray) -> bool:
        """True se self · v == v per un vettore intero reale v"""
        vec = np.asarray(vector, dtype=np.int64).reshape(-1, 1)
        image = ExactUtils.matmul(self.re, vec)
        if self.im is not None and ExactUtils.max_abs(ExactUtils.matmul(self.im, vec)) != 0:
            return False
        return bool(np.array_equal(image, ExactUtils.shift_left(vec, self.exp)))

    def compacted(self) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        """Numeratori nel dtype intero più piccolo (per le cache)"""
        im = ExactUtils.compact(self.im) if self.im is not None else None
        return ExactUtils.compact(self.re), im

    def __repr__(self) -> str:
        kind = "reale" if self.im is None else "complesso"
        return f"DenseOperator({self.num_qubits} qubit, {kind}, 2^-{self.exp})"


# --- costruzione degli operatori ---

def _check_qubits(n: int, *qubits: int):
    if n > MAX_QUBITS:
        raise DimensionError(f"Troppi qubit: {n} > {MAX_QUBITS}")
    for q in qubits:
        if not 0 <= q < n:
            raise DimensionError(f"Qubit {q} fuori da 0..{n - 1}")


def graph_signs(g: Graph) -> np.ndarray:
    """Diagonale di U_G: prod_{lati} (-1)^{b_a b_b}"""
    n = g.num_vertices
    _check_qubits(n)
    basis = np.arange(1 << n, dtype=np.int64)
    parity = np.zeros(1 << n, dtype=np.int64)
    for a, b in g.edges:
        pa, pb = g.position(a), g.position(b)
        parity ^= ((basis >> pa) & 1) & ((basis >> pb) & 1)
    return 1 - 2 * parity


def build_ug(g: Graph) -> DenseOperator:
    """U_G = prod_{lati} (1 + Z_a + Z_b - Z_a Z_b)/2 (diagonale ±1)"""
    return DenseOperator.diagonal(g.num_vertices, graph_signs(g))


def build_v(a: int, b: int, n: int) -> DenseOperator:
    """V_ab = (1 + X_a + X_b - X_a X_b)/2"""
    _check_qubits(n, a, b)
    if a == b:
        raise DimensionError(f"V_ab richiede a != b (ricevuti {a}, {b})")
    xa = DenseOperator.from_pauli(PauliOperator(n, 1 << a))
    xb = DenseOperator.from_pauli(PauliOperator(n, 1 << b))
    xab = DenseOperator.from_pauli(PauliOperator(n, (1 << a) | (1 << b)))
    return (DenseOperator.identity(n) + xa + xb - xab).halved()


def _permutation_targets(perm: PermutationMap, n: int) -> np.ndarray:
    if perm.domain != frozenset(range(n)):
        raise DimensionError(f"La permutazione deve agire sui qubit 0..{n - 1}")
    lookup = perm.as_dict()
    basis = np.arange(1 << n, dtype=np.int64)
    image = np.zeros_like(basis)
    for q in range(n):
        image |= ((basis >> q) & 1) << lookup[q]
    return image


def build_perm_op(perm: PermutationMap, n: int) -> DenseOperator:
    """
    Matrice di permutazione dei qubit

    Il bit perm(q) dell'immagine è il bit q della sorgente, quindi
    M Z_C M† = Z_{perm(C)} e M|+> = |+>.
    """
    _check_qubits(n)
    targets = _permutation_targets(perm, n)
    mat = np.zeros((1 << n, 1 << n), dtype=np.int64)
    mat[targets, np.arange(1 << n)] = 1
    return DenseOperator(n, mat)


def build_t_controlled(source: int, perm: PermutationMap, n: int) -> DenseOperator:
    """T = (1 + X_s + (1 - X_s) M_perm)/2"""
    _check_qubits(n, source)
    if source in perm.moved():
        raise DimensionError(f"Il qubit sorgente {source} è mosso dalla permutazione")
    m_op = build_perm_op(perm, n)
    xs = DenseOperator.from_pauli(PauliOperator(n, 1 << source))
    return (DenseOperator.identity(n) + xs + m_op - xs @ m_op).halved()


def projector_from_involutions(observables: Sequence[DenseOperator]) -> DenseOperator:
    """
    Proiettore prod_i (1 + O_i)/2 sul sottospazio comune +1

    Raises:
        ConstructionError: Osservabile non hermitiano/non involutivo o coppia
            che non commuta (con gli indici)
    """
    if not observables:
        raise ConstructionError("Nessun osservabile")
    n = observables[0].num_qubits
    for i, obs in enumerate(observables):
        if not obs.is_hermitian():
            raise ConstructionError(f"Osservabile {i} non hermitiano")
        if not obs.is_involution():
            raise ConstructionError(f"Osservabile {i} non involutivo")
    for i in range(len(observables)):
        for j in range(i + 1, len(observables)):
            if not observables[i].commutes_with(observables[j]):
                raise ConstructionError(f"Gli osservabili {i} e {j} non commutano")

    identity = DenseOperator.identity(n)
    projector = identity
    for obs in observables:
        projector = projector @ (identity + obs).halved()
    return projector


# --- tracce con la trasformata di Walsh-Hadamard ---

def _complex_mul(ar, ai, br, bi):
    if ai is None and bi is None:
        return ExactUtils.mul(ar, br), None
    zero = np.zeros_like(ar, dtype=np.int64)
    ai = ai if ai is not None else zero
    bi = bi if bi is not None else zero
    re = ExactUtils.sub(ExactUtils.mul(ar, br), ExactUtils.mul(ai, bi))
    im = ExactUtils.add(ExactUtils.mul(ar, bi), ExactUtils.mul(ai, br))
    return re, im


def _xor_diagonal_sums(mat: np.ndarray) -> np.ndarray:
    """m_k = sum_i mat[i, i ⊕ k]"""
    dim = mat.shape[0]
    gathered = mat[np.arange(dim)[:, None], ExactUtils.xor_index(dim)]
    return ExactUtils.column_totals(gathered)


def trace_pair_all_z(fa: DenseOperator, fb: DenseOperator, x_mask: int
                     ) -> Tuple[np.ndarray, Optional[np.ndarray], int]:
    """
    Tr(F_a E F_b E†) per E = X^x Z^z e tutti gli z in un solo passaggio

    Returns:
        Tuple (numeratori reali per z, numeratori immaginari o None, esponente)
    """
    re, im = trace_pair_arrays((fa.re, fa.im), (fb.re, fb.im), x_mask)
    return re, im, fa.exp + fb.exp


def trace_pair_arrays(a: Tuple[np.ndarray, Optional[np.ndarray]],
                      b: Tuple[np.ndarray, Optional[np.ndarray]],
                      x_mask: int) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Come trace_pair_all_z ma sui soli numeratori (re, im) di F_a e F_b"""
    ar, ai = a
    br, bi = b
    idx = np.arange(ar.shape[0], dtype=np.int64) ^ x_mask
    br = br.T[np.ix_(idx, idx)]
    bi = bi.T[np.ix_(idx, idx)] if bi is not None else None
    mre, mim = _complex_mul(ar, ai, br, bi)
    re = ExactUtils.fwht(_xor_diagonal_sums(mre))
    im = ExactUtils.fwht(_xor_diagonal_sums(mim)) if mim is not None else None
    return re, im


def trace_pauli_all_z(p: DenseOperator, x_mask: int) -> Tuple[np.ndarray, Optional[np.ndarray], int]:
    """Tr(P X^x Z^z) per tutti gli z"""
    dim = p.dim
    rows = np.arange(dim, dtype=np.int64)
    cols = rows ^ x_mask
    re = ExactUtils.fwht(p.re[rows, cols])
    im = ExactUtils.fwht(p.im[rows, cols]) if p.im is not None else None
    return re, im, p.exp


def trace_pair(fa: DenseOperator, fb: DenseOperator, error: PauliOperator) -> DyadicComplex:
    """Tr(F_a E F_b E†), indipendente dalla fase di E"""
    re, im, exp = trace_pair_all_z(fa, fb, error.x_mask)
    return DyadicComplex(int(re[error.z_mask]), int(im[error.z_mask]) if im is not None else 0, exp)


# --- Knill-Laflamme ---

@dataclass
class KLEntry:
    """Esito per un singolo errore"""

    error: PauliOperator
    trace_num: DyadicComplex
    k_numerator: int
    passed: bool

    def constant(self) -> Tuple[Fraction, Fraction]:
        """c_E = Tr(PE)/Tr(P) come coppia (reale, immaginaria) esatta"""
        return (Fraction(self.trace_num.re_num, self.k_numerator),
                Fraction(self.trace_num.im_num, self.k_numerator))

    def constant_str(self) -> str:
        re, im = self.constant()
        if im == 0:
            return str(re)
        return f"{re}{'+' if im > 0 else '-'}{abs(im)}i"


@dataclass
class KLReport:
    """Risultato di kl_check"""

    dimension: Fraction
    entries: List[KLEntry] = field(default_factory=list)

    @property
    def errors_checked(self) -> int:
        return len(self.entries)

    @property
    def violations(self) -> List[KLEntry]:
        return [e for e in self.entries if not e.passed]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def pure(self) -> bool:
        return self.passed and all(e.trace_num.is_zero() for e in self.entries
                                   if not e.error.is_identity_up_to_phase())

    def to_dict(self) -> Dict[str, object]:
        return {
            "dimension": str(self.dimension),
            "errors_checked": self.errors_checked,
            "violations": [e.error.to_string() for e in self.violations],
            "nonzero_constants": {e.error.to_string(): e.constant_str() for e in self.entries
                                  if not e.trace_num.is_zero()},
            "pure": self.pure,
        }


def _kl_group(p: DenseOperator, k_num: int, x_mask: int,
              errors: List[Tuple[int, PauliOperator]]) -> List[Tuple[int, KLEntry]]:
    pair_re, pair_im, _ = trace_pair_all_z(p, p, x_mask)
    single_re, single_im, _ = trace_pauli_all_z(p, x_mask)
    out = []
    for index, error in errors:
        z = error.z_mask
        t2 = int(pair_re[z])
        t2_im = int(pair_im[z]) if pair_im is not None else 0
        t1 = DyadicComplex(int(single_re[z]), int(single_im[z]) if single_im is not None else 0, 0)
        t1 = t1.times_i_power(error.phase_exp)
        # Tr(PEPE†)·Tr(P) == |Tr(PE)|² (numeratori sul denominatore 2^(3·exp))
        lhs = t2 * k_num
        rhs = (t1.re_num ** 2 + t1.im_num ** 2) << p.exp
        passed = t2_im == 0 and lhs == rhs
        out.append((index, KLEntry(error, t1, k_num, passed)))
    return out


def kl_check(p: DenseOperator, errors: Sequence[PauliOperator], threads: int = 1,
             check_projector: bool = True) -> KLReport:
    """
    Verifica P E P = c_E P per ogni errore

    Usa l'identità ||PEP - c_E P||² = Tr(PEPE†) - |Tr(PE)|²/Tr(P), quindi
    il test resta esatto senza formare PEP. Gli errori con la stessa
    maschera X condividono una sola trasformata.

    Args:
        p: Proiettore hermitiano idempotente
        errors: Errori Pauli su p.num_qubits qubit
        threads: Numero di thread per i gruppi di errori
        check_projector: Verifica P² = P e P† = P prima del test

    Returns:
        KLReport con c_E esatto per ogni errore
    """
    if check_projector and not (p.is_hermitian() and p.is_idempotent()):
        raise ConstructionError("L'operatore non è un proiettore hermitiano")
    trace = p.trace()
    if trace.im_num != 0 or trace.re_num <= 0:
        raise ConstructionError(f"Traccia del proiettore non positiva: {trace}")
    # numeratore della traccia sul denominatore 2^p.exp
    k_num = trace.re_num << (p.exp - trace.denom_exp)

    groups: Dict[int, List[Tuple[int, PauliOperator]]] = defaultdict(list)
    for index, error in enumerate(errors):
        if error.n != p.num_qubits:
            raise DimensionError(f"Errore su {error.n} qubit, proiettore su {p.num_qubits}")
        groups[error.x_mask].append((index, error))

    tasks = sorted(groups.items())
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda item: _kl_group(p, k_num, item[0], item[1]), tasks))
    else:
        chunks = [_kl_group(p, k_num, x, errs) for x, errs in tasks]

    ordered = sorted((pair for chunk in chunks for pair in chunk), key=lambda pair: pair[0])
    report = KLReport(dimension=Fraction(k_num, 1 << p.exp))
    report.entries = [entry for _, entry in ordered]
    return report
