#!/usr/bin/env python3
"""
Pasting Engine - Codici incollati D_(m,a)

I blocchi sono [U_m, ..., U_1, V_a] con indici globali contigui. Ogni
riga della tabella degli osservabili è un prodotto tensoriale: Pauli
simbolici sui blocchi U, un fattore denso con nome sul blocco V.

Le tracce Tr(P) e Tr(P E P E†) sono calcolate esattamente senza mai
formare P: le somme sui sottoinsiemi di righe si fattorizzano blocco per
blocco, i termini con prodotto non identico sui blocchi U sono nulli e
vengono saltati (nucleo sinistro su GF(2) delle maschere U).
"""

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.dense_engine import DenseOperator, trace_pair, trace_pair_arrays
from core.errors import ConstructionError, DimensionError
from core.gottesman_family import block_size, s_generator, x_all, z_all
from core.graph_model import Graph
from core.pauli_algebra import PauliOperator, enumerate_errors, multiply, symplectic_product
from core.small_codes import SmallCode, code_for
from utils.exact_utils import ExactUtils
from utils.gf2_utils import GF2Utils

IDENTITY_TAG = "identity"
DEFAULT_SWEEP_CAP = 2

_V_TAGS = {
    0: ("alpha1", "alpha2", "alpha3", "A1", "A2", "A0"),
    1: ("beta1", "beta2", "beta3", "B1", "B2", "B0"),
}
_UNIT = ((1, 0), (0, 1), (-1, 0), (0, -1))


# --- parametri ---

def params(m: int, a: int) -> Tuple[int, int, int]:
    """
    Parametri di D_(m,a)

    Returns:
        Tuple (N, K, k del codice stabilizzatore ottimo della stessa lunghezza)
    """
    if m < 0:
        raise DimensionError(f"m deve essere >= 0, ricevuto {m}")
    if a not in (0, 1):
        raise DimensionError(f"a deve essere 0 o 1, ricevuto {a}")
    numerator = 2 ** (2 * m + 5) - 5
    if numerator % 3:
        raise ConstructionError(f"3 non divide 2^{2 * m + 5} - 5")
    n = numerator // 3 + a
    k_opt = n - 2 * m - 6
    return n, 3 * 2 ** (k_opt - 1), k_opt


def dimension_exponent(m: int, a: int) -> int:
    """e tale che K = 3·2^e"""
    return params(m, a)[2] - 1


def optimal_stabilizer_parameters(m: int, a: int) -> Dict[str, object]:
    """Confronto con il codice stabilizzatore ottimo [[N, N-2m-6, 3]]"""
    n, k_dim, k_opt = params(m, a)
    return {
        "N": n,
        "K": f"3*2^{k_opt - 1}",
        "stabilizer": f"[[{n},{k_opt},3]]",
        "stabilizer_dimension": f"2^{k_opt}",
        "gain": str(Fraction(k_dim, 2 ** k_opt)),
    }


# --- struttura a blocchi ---

@dataclass(frozen=True)
class Block:
    name: str
    size: int
    offset: int

    @property
    def stop(self) -> int:
        return self.offset + self.size


@dataclass(frozen=True)
class BlockLayout:
    """[U_m, ..., U_1, V_a] con offset globali"""

    m: int
    a: int
    blocks: Tuple[Block, ...]

    @classmethod
    def build(cls, m: int, a: int) -> "BlockLayout":
        blocks = []
        offset = 0
        for r in range(m, 0, -1):
            blocks.append(Block(f"U{r}", block_size(r), offset))
            offset += block_size(r)
        blocks.append(Block(f"V{a}", 9 + a, offset))
        return cls(m, a, tuple(blocks))

    @property
    def total_qubits(self) -> int:
        return self.blocks[-1].stop

    @property
    def u_qubits(self) -> int:
        return self.blocks[-1].offset

    @property
    def v_block(self) -> Block:
        return self.blocks[-1]

    def u_block(self, r: int) -> Block:
        return self.blocks[self.m - r]

    def to_json(self) -> List[Dict[str, object]]:
        return [{"name": b.name, "size": b.size, "offset": b.offset} for b in self.blocks]


@dataclass(frozen=True)
class BlockFactor:
    """Pauli simbolico su un blocco U oppure fattore denso con nome sul blocco V"""

    pauli: Optional[PauliOperator] = None
    named: Optional[str] = None

    def is_identity(self) -> bool:
        if self.pauli is not None:
            return self.pauli.is_identity_up_to_phase() and self.pauli.phase_exp == 0
        return self.named == IDENTITY_TAG

    def to_json(self) -> Dict[str, object]:
        if self.pauli is not None:
            return {"pauli": self.pauli.to_compact()}
        return {"named": self.named}


@dataclass(frozen=True)
class BlockObservable:
    """Una riga: un fattore per blocco e un segno globale"""

    factors: Tuple[BlockFactor, ...]
    sign: int = 1

    def to_json(self) -> List[Dict[str, object]]:
        return [f.to_json() for f in self.factors]


@dataclass
class PastedCode:
    """Il codice D_(m,a): struttura a blocchi e 2m+6 osservabili"""

    m: int
    a: int
    layout: BlockLayout
    observables: List[BlockObservable]
    small_code: SmallCode
    _engine: Optional["StructuredTraceEngine"] = field(default=None, repr=False, compare=False)

    @property
    def num_qubits(self) -> int:
        return self.layout.total_qubits

    def u_part(self, row: int) -> PauliOperator:
        """Parte U della riga come Pauli globale sui primi N_U qubit"""
        n_u = self.layout.u_qubits
        acc = PauliOperator.identity(n_u)
        for block, factor in zip(self.layout.blocks[:-1], self.observables[row].factors[:-1]):
            acc = multiply(acc, factor.pauli.embed(n_u, block.offset))
        return acc

    def v_tag(self, row: int) -> str:
        return self.observables[row].factors[-1].named

    def v_factors(self) -> Dict[str, DenseOperator]:
        tags = {self.v_tag(i) for i in range(len(self.observables))}
        return {tag: self.small_code.factor(tag) for tag in sorted(tags)}

    def engine(self) -> "StructuredTraceEngine":
        if self._engine is None:
            self._engine = StructuredTraceEngine(
                [self.u_part(i) for i in range(len(self.observables))],
                [self.v_tag(i) for i in range(len(self.observables))],
                self.v_factors(),
                [o.sign for o in self.observables],
            )
        return self._engine

    def to_json(self) -> Dict[str, object]:
        n, _, _ = params(self.m, self.a)
        return {
            "m": self.m,
            "a": self.a,
            "N": n,
            "K_num": f"3*2^{dimension_exponent(self.m, self.a)}",
            "blocks": self.layout.to_json(),
            "observables": [o.to_json() for o in self.observables],
        }


def _u_factor(r: int, local_row: int) -> PauliOperator:
    """Fattore del blocco U_r nella riga locale (1-based), identità fuori"""
    if local_row == 1:
        return x_all(r)
    if local_row == 2:
        return z_all(r)
    if 3 <= local_row <= 2 * r + 5:
        return s_generator(r, local_row - 2)
    return PauliOperator.identity(block_size(r))


def _v_factor_tag(m: int, a: int, row: int) -> str:
    tags = _V_TAGS[a]
    first = 2 * m + 1
    if first <= row <= 2 * m + 6:
        return tags[row - first]
    return IDENTITY_TAG


def assemble(m: int, a: int, graph10: Optional[Graph] = None) -> PastedCode:
    """
    Costruisce le 2m+6 righe della tabella degli osservabili

    Il blocco U_r porta X_U nella riga 2(m-r)+1, Z_U nella 2(m-r)+2 e
    S^r_{j-2(m-r)-2} nelle righe successive fino a 2m+5; il blocco V porta
    α/β nelle righe 2m+1..2m+3, A_1/B_1 e A_2/B_2 nelle 2m+4, 2m+5 e
    A_0/B_0 da solo nella 2m+6.

    Raises:
        ConstructionError: Righe non involutive o che non commutano
    """
    if m < 1:
        raise DimensionError(f"m deve essere >= 1 (m = 0 è un codice seme), ricevuto {m}")
    layout = BlockLayout.build(m, a)
    rows = []
    for j in range(1, 2 * m + 7):
        factors = []
        for r in range(m, 0, -1):
            factors.append(BlockFactor(pauli=_u_factor(r, j - 2 * (m - r))))
        factors.append(BlockFactor(named=_v_factor_tag(m, a, j)))
        rows.append(BlockObservable(tuple(factors)))

    code = PastedCode(m, a, layout, rows, code_for(a, graph10))
    validate(code)
    return code


def validate(code: PastedCode):
    """Involuzione di ogni riga e commutazione di ogni coppia, blocco per blocco"""
    factors = code.v_factors()
    for tag, op in factors.items():
        if not (op.is_hermitian() and op.is_involution()):
            raise ConstructionError(f"Fattore {tag} non è un'involuzione hermitiana")
    for i, obs in enumerate(code.observables):
        for block, factor in zip(code.layout.blocks[:-1], obs.factors[:-1]):
            if not factor.pauli.is_hermitian() or factor.pauli.square_phase() != 0:
                raise ConstructionError(f"Riga {i + 1}, blocco {block.name}: non involutivo")

    products: Dict[Tuple[str, str], int] = {}
    for i, j in itertools.combinations(range(len(code.observables)), 2):
        u_parity = 0
        for a_f, b_f in zip(code.observables[i].factors[:-1], code.observables[j].factors[:-1]):
            u_parity ^= symplectic_product(a_f.pauli, b_f.pauli)
        key = (code.v_tag(i), code.v_tag(j))
        if key not in products:
            products[key] = _dense_commutation(factors[key[0]], factors[key[1]])
        if products[key] != u_parity:
            raise ConstructionError(f"Le righe {i + 1} e {j + 1} non commutano")


def _dense_commutation(fa: DenseOperator, fb: DenseOperator) -> int:
    """0 se commutano, 1 se anticommutano"""
    ab, ba = fa @ fb, fb @ fa
    if ab == ba:
        return 0
    if ab == -ba:
        return 1
    raise ConstructionError("Fattori V né commutanti né anticommutanti")


# --- motore strutturato delle tracce ---

@dataclass
class _PairTable:
    """Coppie (T, T') con T ⊕ T' nel nucleo delle maschere U"""

    t_prime: np.ndarray
    base_re: np.ndarray
    base_im: np.ndarray
    v_pair: np.ndarray
    v_keys: List[Tuple[int, int]]


class StructuredTraceEngine:
    """
    Tracce esatte del proiettore P = prod_i (1 + O_i)/2 su layout [U | V]

    Args:
        u_rows: Parte U di ogni riga (Pauli sui primi N_U qubit)
        v_tags: Nome del fattore V di ogni riga
        v_factors: Fattori densi per nome
        signs: Segno globale di ogni riga (default +1)
    """

    def __init__(self, u_rows: Sequence[PauliOperator], v_tags: Sequence[str],
                 v_factors: Dict[str, DenseOperator], signs: Optional[Sequence[int]] = None):
        if len(u_rows) != len(v_tags):
            raise DimensionError("Righe U e V in numero diverso")
        self.num_rows = len(u_rows)
        self.n_u = u_rows[0].n
        self.n_v = next(iter(v_factors.values())).num_qubits if v_factors else 0
        self.u_rows = list(u_rows)
        self.signs = list(signs) if signs is not None else [1] * self.num_rows
        self.v_tags = list(v_tags)
        self.v_factors = dict(v_factors)
        if IDENTITY_TAG not in self.v_factors:
            self.v_factors[IDENTITY_TAG] = DenseOperator.identity(self.n_v)
        self.v_rows = [i for i, tag in enumerate(self.v_tags) if tag != IDENTITY_TAG]

        self._u_products = self._subset_u_products()
        self._v_cache = self._subset_v_products()
        self.kernel = self._u_kernel()
        self._pairs: Optional[_PairTable] = None

    @property
    def num_qubits(self) -> int:
        return self.n_u + self.n_v

    # --- precalcolo ---

    def _subset_u_products(self) -> List[PauliOperator]:
        """Prodotto ordinato delle parti U per ogni sottoinsieme di righe"""
        products = [PauliOperator.identity(self.n_u)]
        for row in range(self.num_rows):
            products += [multiply(p, self.u_rows[row]) for p in products]
        return products

    def _subset_v_products(self) -> List[Tuple[np.ndarray, Optional[np.ndarray], int]]:
        """F^V_t per ogni sottoinsieme t delle righe con fattore V, compattati"""
        def pack(op: DenseOperator):
            re, im = op.compacted()
            return re, im, op.exp

        cache = [pack(DenseOperator.identity(self.n_v))]
        for row in self.v_rows:
            factor = self.v_factors[self.v_tags[row]]
            cache += [pack(DenseOperator(self.n_v, re, im, exp) @ factor)
                      for re, im, exp in cache]
        return cache

    def _u_kernel(self) -> List[int]:
        """Sottoinsiemi di righe con prodotto U proporzionale all'identità"""
        matrix = np.array([GF2Utils.int_to_bits(p.x_mask, self.n_u).tolist()
                           + GF2Utils.int_to_bits(p.z_mask, self.n_u).tolist()
                           for p in self.u_rows], dtype=np.uint8)
        return GF2Utils.span(GF2Utils.left_kernel(matrix))

    def v_index(self, subset: int) -> int:
        index = 0
        for bit, row in enumerate(self.v_rows):
            if (subset >> row) & 1:
                index |= 1 << bit
        return index

    def v_operator(self, subset: int) -> DenseOperator:
        re, im, exp = self._v_cache[self.v_index(subset)]
        return DenseOperator(self.n_v, re, im, exp)

    def sign_of(self, subset: int) -> int:
        sign = 1
        for row in range(self.num_rows):
            if (subset >> row) & 1:
                sign *= self.signs[row]
        return sign

    def pair_table(self) -> _PairTable:
        if self._pairs is None:
            self._pairs = self._build_pairs()
        return self._pairs

    def _build_pairs(self) -> _PairTable:
        t_prime, base_re, base_im, v_pair = [], [], [], []
        keys: Dict[Tuple[int, int], int] = {}
        for t in range(1 << self.num_rows):
            for d in self.kernel:
                tp = t ^ d
                prod = multiply(self._u_products[t], self._u_products[tp])
                if not prod.is_identity_up_to_phase():
                    raise ConstructionError(f"Coppia ({t}, {tp}) fuori dal nucleo")
                re, im = _UNIT[prod.phase_exp]
                sign = self.sign_of(t) * self.sign_of(tp)
                key = (self.v_index(t), self.v_index(tp))
                t_prime.append(tp)
                base_re.append(sign * re)
                base_im.append(sign * im)
                v_pair.append(keys.setdefault(key, len(keys)))
        return _PairTable(
            t_prime=np.array(t_prime, dtype=np.int64),
            base_re=np.array(base_re, dtype=np.int64),
            base_im=np.array(base_im, dtype=np.int64),
            v_pair=np.array(v_pair, dtype=np.int64),
            v_keys=sorted(keys, key=keys.get),
        )

    # --- Tr(P) ---

    def dimension(self) -> Fraction:
        """Tr(P) = 2^-L sum_{D nel nucleo} Tr_U(O_D) Tr_V(O_D)"""
        total = Fraction(0)
        for d in self.kernel:
            prod = self._u_products[d]
            re, im = _UNIT[prod.phase_exp]
            trace_v = self.v_operator(d).trace()
            value = self.sign_of(d) * (re * trace_v.real - im * trace_v.imag)
            total += value * 2 ** self.n_u
        return total / 2 ** self.num_rows

    def row_trace(self, row: int) -> Fraction:
        """Traccia esatta di una singola riga"""
        prod = self.u_rows[row]
        if not prod.is_identity_up_to_phase():
            return Fraction(0)
        re, _ = _UNIT[prod.phase_exp]
        return self.signs[row] * re * 2 ** self.n_u * self.v_operator(1 << row).trace().real

    # --- Tr(P E P E†) ---

    def _row_syndrome(self, error_u: PauliOperator) -> int:
        value = 0
        for row, u in enumerate(self.u_rows):
            if symplectic_product(u, error_u):
                value |= 1 << row
        return value

    def _v_table(self, x_v: int) -> Tuple[np.ndarray, np.ndarray, int]:
        """Tr(F_t E_V F_t' E_V†) per ogni coppia (t, t') usata e ogni z, esponente comune"""
        pairs = self.pair_table()
        results = []
        for ta, tb in pairs.v_keys:
            ar, ai, ae = self._v_cache[ta]
            br, bi, be = self._v_cache[tb]
            re, im = trace_pair_arrays((ar, ai), (br, bi), x_v)
            results.append((re, im, ae + be))
        exp = max(e for _, _, e in results)
        size = 1 << self.n_v
        zero = np.zeros(size, dtype=np.int64)
        re_rows = [ExactUtils.shift_left(re, exp - e) for re, _, e in results]
        im_rows = [ExactUtils.shift_left(im if im is not None else zero, exp - e)
                   for _, im, e in results]
        return np.stack(re_rows), np.stack(im_rows), exp

    def trace_pepe(self, errors: Sequence[PauliOperator]) -> List[Tuple[Fraction, Fraction]]:
        """
        Tr(P E P E†) esatto per ogni errore (parte reale, parte immaginaria)

        Gli errori vengono raggruppati per maschera X sul blocco V: ogni
        gruppo usa una sola tabella di tracce V.
        """
        pairs = self.pair_table()
        parity = ExactUtils.popcount_table(self.num_rows) & 1
        groups: Dict[int, List[int]] = {}
        split = []
        for index, error in enumerate(errors):
            if error.n != self.num_qubits:
                raise DimensionError(f"Errore su {error.n} qubit, codice su {self.num_qubits}")
            e_u = error.restrict(0, self.n_u)
            e_v = error.restrict(self.n_u, self.n_v)
            split.append((e_u, e_v))
            groups.setdefault(e_v.x_mask, []).append(index)

        results: List[Optional[Tuple[Fraction, Fraction]]] = [None] * len(errors)
        scale = Fraction(2 ** self.n_u, 2 ** (2 * self.num_rows))
        for x_v in sorted(groups):
            v_re, v_im, exp = self._v_table(x_v)
            for index in groups[x_v]:
                e_u, e_v = split[index]
                sigma = self._row_syndrome(e_u)
                eps = 1 - 2 * parity[pairs.t_prime & sigma]
                col_re = v_re[pairs.v_pair, e_v.z_mask]
                col_im = v_im[pairs.v_pair, e_v.z_mask]
                w_re = ExactUtils.sub(ExactUtils.mul(pairs.base_re, col_re),
                                      ExactUtils.mul(pairs.base_im, col_im))
                w_im = ExactUtils.add(ExactUtils.mul(pairs.base_re, col_im),
                                      ExactUtils.mul(pairs.base_im, col_re))
                num_re = ExactUtils.total(ExactUtils.mul(eps, w_re))
                num_im = ExactUtils.total(ExactUtils.mul(eps, w_im))
                results[index] = (scale * Fraction(num_re, 2 ** exp),
                                  scale * Fraction(num_im, 2 ** exp))
        return results

    def reference_trace_pepe(self, error: PauliOperator) -> Tuple[Fraction, Fraction]:
        """Somma non potata su tutte le 4^L coppie (solo per istanze piccole)"""
        e_u = error.restrict(0, self.n_u)
        e_v = error.restrict(self.n_u, self.n_v)
        e_u_dag = e_u.adjoint()
        total_re = Fraction(0)
        total_im = Fraction(0)
        for t in range(1 << self.num_rows):
            for tp in range(1 << self.num_rows):
                prod = multiply(multiply(multiply(self._u_products[t], e_u), self._u_products[tp]),
                                e_u_dag)
                if not prod.is_identity_up_to_phase():
                    continue
                u_re, u_im = _UNIT[prod.phase_exp]
                sign = self.sign_of(t) * self.sign_of(tp)
                v = trace_pair(self.v_operator(t), self.v_operator(tp), e_v)
                total_re += sign * (u_re * v.real - u_im * v.imag)
                total_im += sign * (u_re * v.imag + u_im * v.real)
        scale = Fraction(2 ** self.n_u, 2 ** (2 * self.num_rows))
        return total_re * scale, total_im * scale


# --- verifica della distanza ---

@dataclass
class PastedReport:
    """Esito della verifica di purezza del codice incollato"""

    m: int
    a: int
    errors_checked: int
    violations: List[Tuple[str, str]] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "a": self.a,
            "errors_checked": self.errors_checked,
            "violations": [{"error": e, "trace": t} for e, t in self.violations],
        }


_sweep_state: Dict[str, StructuredTraceEngine] = {}


def _init_sweep_worker(m: int, a: int, graph_json: Optional[Dict[str, list]]):
    graph = Graph.from_json(graph_json) if graph_json is not None else None
    engine = assemble(m, a, graph).engine()
    engine.pair_table()
    _sweep_state["engine"] = engine


def _sweep_chunk(errors: List[PauliOperator]) -> List[Tuple[Fraction, Fraction]]:
    return _sweep_state["engine"].trace_pepe(errors)


def _chunk_by_v_mask(errors: List[PauliOperator], n_u: int, n_v: int, count: int
                     ) -> List[List[PauliOperator]]:
    """Divide gli errori tenendo insieme quelli con la stessa maschera X sul blocco V"""
    groups: Dict[int, List[PauliOperator]] = {}
    for error in errors:
        groups.setdefault(error.restrict(n_u, n_v).x_mask, []).append(error)
    chunks: List[List[PauliOperator]] = [[] for _ in range(count)]
    for i, key in enumerate(sorted(groups)):
        chunks[i % count].extend(groups[key])
    return [c for c in chunks if c]


def verify_distance3_pure(code: PastedCode, max_weight: int = 2, threads: int = 1,
                          sweep_cap: int = DEFAULT_SWEEP_CAP,
                          progress: Optional[Callable[[int], None]] = None) -> PastedReport:
    """
    Verifica Tr(P E P E†) = 0 per ogni errore di peso 1..max_weight

    Args:
        code: Codice assemblato e validato
        max_weight: 1 o 2
        threads: Processi per la sweep (ognuno ricostruisce il motore)
        sweep_cap: m massimo ammesso
        progress: Callable opzionale chiamato con il numero di errori completati

    Returns:
        PastedReport con gli errori a traccia non nulla
    """
    if max_weight not in (1, 2):
        raise DimensionError(f"max_weight deve essere 1 o 2, ricevuto {max_weight}")
    if code.m > sweep_cap:
        raise DimensionError(f"Sweep limitata a m <= {sweep_cap}, ricevuto m = {code.m}")
    start = time.perf_counter()
    errors = enumerate_errors(code.num_qubits, max_weight)
    n_u, n_v = code.layout.u_qubits, code.layout.v_block.size

    values: Dict[PauliOperator, Tuple[Fraction, Fraction]] = {}
    if threads > 1:
        graph_json = code.small_code.graph.to_json() if code.a == 1 else None
        chunks = _chunk_by_v_mask(errors, n_u, n_v, threads * 4)
        with ProcessPoolExecutor(max_workers=threads, initializer=_init_sweep_worker,
                                 initargs=(code.m, code.a, graph_json)) as pool:
            for chunk, chunk_values in zip(chunks, pool.map(_sweep_chunk, chunks)):
                values.update(zip(chunk, chunk_values))
                if progress:
                    progress(len(chunk))
    else:
        engine = code.engine()
        for chunk in _chunk_by_v_mask(errors, n_u, n_v, 16):
            values.update(zip(chunk, engine.trace_pepe(chunk)))
            if progress:
                progress(len(chunk))

    violations = []
    for error in errors:
        re, im = values[error]
        if re != 0 or im != 0:
            violations.append((error.to_string(), str(re) if im == 0 else f"{re}+{im}i"))
    return PastedReport(code.m, code.a, len(errors), violations,
                        int((time.perf_counter() - start) * 1000))


def code_dimension(code: PastedCode) -> Fraction:
    """
    Tr(P) esatto via tracce a blocchi

    Raises:
        ConstructionError: Valore diverso da 3·2^(N-2m-7)
    """
    value = code.engine().dimension()
    _, expected, _ = params(code.m, code.a)
    if value != expected:
        raise ConstructionError(f"Tr(P) = {value}, atteso {expected}")
    return value
