#!/usr/bin/env python3
"""
Small Codes - I codici seme ((9,12,3)) e ((10,24,3))

Costruisce gli osservabili dei due codici non additivi sul blocco V,
i 24 sottoinsiemi della base a grafo del codice a 10 qubit e l'oracolo
di ricerca del grafo G_1, di cui esiste solo la figura.

Etichette: G_0 ha vertici 1..9 (qubit = etichetta - 1), G_1 ha
vertici 0..9 (qubit = etichetta).
"""

import functools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from core.artifact_manager import ArtifactManager
from core.dense_engine import (DenseOperator, build_t_controlled, build_v, graph_signs,
                               kl_check, projector_from_involutions)
from core.errors import ConstructionError, RecoveryError
from core.graph_model import Graph, PermutationMap, cycle_graph, edge_orbits, is_automorphism
from core.pauli_algebra import PauliOperator, enumerate_errors

V1_LABELS = tuple(range(10))

# permutazioni di simmetria di G_1
PI_CYCLES = ((1, 4), (2, 3), (6, 9), (7, 8))
TAU_CYCLES = ((1, 2), (3, 4), (6, 7), (8, 9))

SET_A = frozenset({0, 2, 3})
SET_B = frozenset({5, 1, 2})
BASE_SUBSETS = (
    frozenset(),
    frozenset({1, 2, 3, 9}),
    frozenset({1, 2, 7, 8}),
    frozenset({1, 2, 6, 7, 9}),
    frozenset({1, 3, 7, 8, 9}),
    frozenset({1, 3, 4, 6, 7, 9}),
)

G1_FILENAME = "g1.json"


def pi_map() -> PermutationMap:
    return PermutationMap.from_cycles(V1_LABELS, PI_CYCLES)


def tau_map() -> PermutationMap:
    return PermutationMap.from_cycles(V1_LABELS, TAU_CYCLES)


@dataclass
class SmallCode:
    """Codice seme sul blocco V_a"""

    name: str
    graph: Graph
    observables: Dict[str, DenseOperator]
    projector: DenseOperator
    declared_dimension: int
    named: Dict[str, DenseOperator] = field(default_factory=dict)

    @property
    def num_qubits(self) -> int:
        return self.graph.num_vertices

    def factor(self, tag: str) -> DenseOperator:
        """Fattore denso per nome (α/β 1..3, A/B 0..2, identità)"""
        if tag == "identity":
            return DenseOperator.identity(self.num_qubits)
        if tag in self.named:
            return self.named[tag]
        return self.observables[tag]

    def to_json(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "graph": self.graph.to_json(),
            "observables": list(self.observables),
            "dimension": self.declared_dimension,
        }


@dataclass(frozen=True)
class CodewordSet:
    """I 24 sottoinsiemi C^i_{μν} di V_1"""

    subsets: Tuple[Tuple[int, int, int, FrozenSet[int]], ...]

    def __len__(self) -> int:
        return len(self.subsets)

    def sets(self) -> List[FrozenSet[int]]:
        return [s for _, _, _, s in self.subsets]

    def get(self, i: int, mu: int, nu: int) -> FrozenSet[int]:
        for key_i, key_mu, key_nu, subset in self.subsets:
            if (key_i, key_mu, key_nu) == (i, mu, nu):
                return subset
        raise KeyError((i, mu, nu))

    def masks(self, graph: Graph) -> List[int]:
        return [graph.subset_mask(s) for s in self.sets()]

    def to_json(self) -> List[Dict[str, object]]:
        return [{"i": i, "mu": mu, "nu": nu, "subset": sorted(s)}
                for i, mu, nu, s in self.subsets]


# --- codice ((9,12,3)) ---

def _x_dense(n: int, qubits: Sequence[int]) -> DenseOperator:
    return DenseOperator.from_pauli(PauliOperator.x_on(n, qubits))


def _check_commuting(observables: Dict[str, DenseOperator]):
    tags = list(observables)
    for i, a in enumerate(tags):
        for b in tags[i + 1:]:
            if not observables[a].commutes_with(observables[b]):
                raise ConstructionError(f"{a} e {b} non commutano")


@functools.lru_cache(maxsize=1)
def build_code9() -> SmallCode:
    """
    Codice ((9,12,3)) sul ciclo G_0

    Returns:
        SmallCode con α_1..α_3, A_1..A_3, A_0 = A_1 A_2 A_3 e proiettore di traccia 12
    """
    graph = cycle_graph(9)
    n = graph.num_vertices
    signs = graph_signs(graph)
    pos = graph.position

    def x_on(*labels):
        return _x_dense(n, [pos(v) for v in labels])

    def v_on(a, b):
        return build_v(pos(a), pos(b), n)

    raw = {
        "alpha1": x_on(3, 8),
        "alpha2": x_on(6, 2),
        "alpha3": x_on(9, 5),
        "A1": x_on(4, 7, 3, 6, 9) @ v_on(6, 9),
        "A2": x_on(1, 7, 3, 6) @ v_on(3, 9),
        "A3": x_on(1, 4, 3, 9) @ v_on(3, 6),
    }
    observables = {tag: op.conjugate_by_signs(signs) for tag, op in raw.items()}
    _check_commuting(observables)

    a0 = observables["A1"] @ observables["A2"] @ observables["A3"]
    projector = projector_from_involutions(list(observables.values()))
    code = SmallCode("small9", graph, observables, projector, 12, named={"A0": a0})
    _check_dimension(code)
    return code


def _check_dimension(code: SmallCode):
    trace = code.projector.trace()
    if trace.im_num != 0 or trace.denom_exp != 0 or trace.re_num != code.declared_dimension:
        raise ConstructionError(
            f"{code.name}: traccia del proiettore {trace}, attesa {code.declared_dimension}")


# --- sottoinsiemi della base a grafo ---

@functools.lru_cache(maxsize=1)
def codeword_subsets() -> CodewordSet:
    """C^i_{μν} = π^μ∘τ^ν(C_i) △ νB △ μ·τ^ν(A)"""
    pi, tau = pi_map(), tau_map()
    subsets = []
    for i, base in enumerate(BASE_SUBSETS, start=1):
        for mu in (0, 1):
            for nu in (0, 1):
                moved = tau.apply_set(base) if nu else base
                moved = pi.apply_set(moved) if mu else moved
                result = set(moved)
                if nu:
                    result ^= SET_B
                if mu:
                    result ^= tau.apply_set(SET_A) if nu else SET_A
                subsets.append((i, mu, nu, frozenset(result)))
    if len({s for _, _, _, s in subsets}) != 24:
        raise ConstructionError("I sottoinsiemi della base non sono 24 distinti")
    return CodewordSet(tuple(subsets))


def codeword_vector(graph: Graph, subset: FrozenSet[int]) -> np.ndarray:
    """Z_C|G> non normalizzato (entrate ±1)"""
    n = graph.num_vertices
    basis = np.arange(1 << n, dtype=np.int64)
    mask = graph.subset_mask(subset)
    parity = np.zeros_like(basis)
    for q in range(n):
        if (mask >> q) & 1:
            parity ^= (basis >> q) & 1
    return graph_signs(graph) * (1 - 2 * parity)


# --- criterio di purezza sulla base a grafo ---

class _ErrorTable:
    """Maschere X (come bit) e Z degli errori di peso <= max_weight"""

    def __init__(self, n: int, max_weight: int):
        self.errors = enumerate_errors(n, max_weight)
        self.x_bits = np.array([[(e.x_mask >> q) & 1 for q in range(n)] for e in self.errors],
                               dtype=bool)
        self.z = np.array([e.z_mask for e in self.errors], dtype=np.int64)


@functools.lru_cache(maxsize=4)
def _error_table(n: int, max_weight: int) -> _ErrorTable:
    return _ErrorTable(n, max_weight)


def _difference_table(masks: Sequence[int], n: int) -> np.ndarray:
    """Tabella booleana di {C ⊕ C'} (zero incluso)"""
    table = np.zeros(1 << n, dtype=bool)
    for a in masks:
        for b in masks:
            table[a ^ b] = True
    return table


def _closures(neighbor_masks: np.ndarray, table: _ErrorTable) -> np.ndarray:
    """Cl_G(E) = z ⊕ XOR_{v ∈ x} N(v) per ogni errore"""
    picked = np.where(table.x_bits, neighbor_masks[None, :], 0)
    return table.z ^ np.bitwise_xor.reduce(picked, axis=1)


def cws_violations(graph: Graph, subsets: Sequence[FrozenSet[int]],
                   max_weight: int = 2) -> List[PauliOperator]:
    """
    Errori che violano la purezza del codice Z_C|G>, C in subsets

    Un errore E rompe la purezza se Cl_G(E) ∈ {C ⊕ C'}: in quel caso
    <C|E|C'> è non nullo per qualche coppia di parole di codice.
    """
    n = graph.num_vertices
    table = _error_table(n, max_weight)
    masks = [graph.subset_mask(s) for s in subsets]
    delta = _difference_table(masks, n)
    neighbors = np.array(graph.adjacency_masks(), dtype=np.int64)
    bad = delta[_closures(neighbors, table)]
    return [table.errors[i] for i in np.nonzero(bad)[0]]


def cws_pure(graph: Graph, subsets: Sequence[FrozenSet[int]], max_weight: int = 2) -> bool:
    return not cws_violations(graph, subsets, max_weight)


# --- codice ((10,24,3)) ---

def _encoding_core() -> Tuple[DenseOperator, DenseOperator]:
    """W = T_τ T_π Z_2 (U_enc = Z_2 U_G W)"""
    n = len(V1_LABELS)
    t_pi = build_t_controlled(0, pi_map(), n)
    t_tau = build_t_controlled(5, tau_map(), n)
    z2 = DenseOperator.from_pauli(PauliOperator.z_on(n, [2]))
    w = t_tau @ t_pi @ z2
    return w, w.adjoint()


@functools.lru_cache(maxsize=1)
def _graph_free_observables() -> Dict[str, DenseOperator]:
    """W O W† per i sei osservabili, prima della coniugazione con Z_2 U_G"""
    n = len(V1_LABELS)
    w, w_dag = _encoding_core()
    raw = {
        "beta1": _x_dense(n, [2, 3, 7]),
        "beta2": _x_dense(n, [6, 7, 8]),
        "beta3": _x_dense(n, [3, 4, 6, 9]),
        "B0": _x_dense(n, [6]) @ build_v(6, 7, n),
        "B1": _x_dense(n, [1, 2]) @ build_v(3, 7, n),
        "B2": _x_dense(n, [4]) @ build_v(3, 6, n),
    }
    return {tag: w @ op @ w_dag for tag, op in raw.items()}


def _outer_signs(graph: Graph) -> np.ndarray:
    """Diagonale di Z_2 U_G"""
    basis = np.arange(1 << graph.num_vertices, dtype=np.int64)
    z2 = 1 - 2 * ((basis >> graph.position(2)) & 1)
    return z2 * graph_signs(graph)


def _check_symmetric(graph: Graph):
    if tuple(sorted(graph.vertices)) != V1_LABELS:
        raise ConstructionError("G_1 deve avere i vertici 0..9")
    for name, perm in (("π", pi_map()), ("τ", tau_map())):
        if not is_automorphism(graph, perm):
            raise ConstructionError(f"{name} non è un automorfismo del grafo")


@functools.lru_cache(maxsize=8)
def build_code10(graph: Graph) -> SmallCode:
    """
    Codice ((10,24,3)) sul grafo G_1

    Gli osservabili sono U_enc O U_enc† con U_enc = Z_2 U_G T_τ T_π Z_2.
    Ogni stato Z_C|G_1> deve essere autostato +1 di tutti e sei.

    Raises:
        ConstructionError: Simmetria mancante, traccia errata o stato
            non stabilizzato (con sottoinsieme e osservabile)
    """
    _check_symmetric(graph)
    signs = _outer_signs(graph)
    observables = {tag: op.conjugate_by_signs(signs)
                   for tag, op in _graph_free_observables().items()}
    _check_commuting(observables)

    projector = projector_from_involutions(list(observables.values()))
    code = SmallCode("small10", graph, observables, projector, 24)
    _check_dimension(code)

    for i, mu, nu, subset in codeword_subsets().subsets:
        vector = codeword_vector(graph, subset)
        for tag, op in observables.items():
            if not op.fixes(vector):
                raise ConstructionError(
                    f"C^{i}_{mu}{nu} = {sorted(subset)} non stabilizzato da {tag}")
        if not projector.fixes(vector):
            raise ConstructionError(f"C^{i}_{mu}{nu} fuori dal range del proiettore")
    return code


# --- oracolo di ricerca di G_1 ---

@dataclass
class RecoveryResult:
    """Esito della ricerca di G_1"""

    graph: Graph
    candidate_index: int
    candidates: int
    orbits: List[List[Tuple[int, int]]]
    solutions: List[int] = field(default_factory=list)
    elapsed_ms: int = 0

    def solution_graphs(self) -> List[Graph]:
        return [_candidate_graph(self.orbits, idx) for idx in self.solutions]

    def to_dict(self) -> Dict[str, object]:
        return {
            "graph": self.graph.to_json(),
            "candidate_index": self.candidate_index,
            "candidates": self.candidates,
            "orbit_count": len(self.orbits),
            "solution_count": len(self.solutions),
            "solutions": self.solutions,
        }


def _candidate_graph(orbits: List[List[Tuple[int, int]]], index: int) -> Graph:
    edges = [e for bit, orbit in enumerate(orbits) if (index >> bit) & 1 for e in orbit]
    return Graph.from_edges(V1_LABELS, edges)


_worker_state: Dict[str, object] = {}


def _init_search_worker(orbit_neighbors: np.ndarray, delta: np.ndarray):
    _worker_state["orbit_neighbors"] = orbit_neighbors
    _worker_state["delta"] = delta
    _worker_state["table"] = _error_table(len(V1_LABELS), 2)


def _search_chunk(bounds: Tuple[int, int]) -> List[int]:
    orbit_neighbors = _worker_state["orbit_neighbors"]
    delta = _worker_state["delta"]
    table = _worker_state["table"]
    hits = []
    for index in range(*bounds):
        neighbors = np.zeros(len(V1_LABELS), dtype=np.int64)
        for bit in range(orbit_neighbors.shape[0]):
            if (index >> bit) & 1:
                neighbors ^= orbit_neighbors[bit]
        if not delta[_closures(neighbors, table)].any():
            hits.append(index)
    return hits


def _orbit_neighbor_masks(orbits: List[List[Tuple[int, int]]]) -> np.ndarray:
    """Contributo di ogni orbita alle maschere di adiacenza"""
    out = np.zeros((len(orbits), len(V1_LABELS)), dtype=np.int64)
    for bit, orbit in enumerate(orbits):
        for a, b in orbit:
            out[bit, a] |= 1 << b
            out[bit, b] |= 1 << a
    return out


def recover_graph10(threads: int = 1, find_all: bool = False, chunk_size: int = 2048,
                    progress=None) -> RecoveryResult:
    """
    Ricerca esaustiva di G_1 tra i grafi invarianti sotto π e τ

    Ogni candidato è un'unione di orbite di lati; l'indice del candidato è
    la maschera delle orbite in ordine canonico. Il filtro per candidato è
    il criterio di purezza sulla base a grafo (commutazione, traccia 24 e
    stabilizzazione non dipendono dal grafo); il primo candidato che
    supera anche la verifica densa completa viene restituito.

    Args:
        threads: Processi per il filtro
        find_all: Continua dopo il primo successo per contare tutte le soluzioni
        chunk_size: Candidati per blocco di lavoro
        progress: Callable opzionale chiamato con il numero di candidati filtrati

    Returns:
        RecoveryResult con il grafo e gli indici delle soluzioni

    Raises:
        RecoveryError: Nessun candidato supera i controlli
    """
    start = time.perf_counter()
    orbits = edge_orbits(V1_LABELS, [pi_map(), tau_map()])
    total = 1 << len(orbits)
    subsets = codeword_subsets().sets()
    delta = _difference_table([sum(1 << v for v in s) for s in subsets], len(V1_LABELS))
    orbit_neighbors = _orbit_neighbor_masks(orbits)

    chunks = [(lo, min(lo + chunk_size, total)) for lo in range(0, total, chunk_size)]
    solutions: List[int] = []
    winner: Optional[int] = None

    def consider(hits: List[int]) -> bool:
        # dopo il vincitore il criterio di purezza basta: il resto non dipende dal grafo
        nonlocal winner
        for index in hits:
            if winner is None:
                if not _dense_confirms(_candidate_graph(orbits, index)):
                    continue
                winner = index
            solutions.append(index)
            if not find_all:
                return True
        return False

    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads, initializer=_init_search_worker,
                                 initargs=(orbit_neighbors, delta)) as pool:
            for (lo, hi), hits in zip(chunks, pool.map(_search_chunk, chunks)):
                if progress:
                    progress(hi - lo)
                if consider(hits):
                    break
    else:
        _init_search_worker(orbit_neighbors, delta)
        for lo, hi in chunks:
            hits = _search_chunk((lo, hi))
            if progress:
                progress(hi - lo)
            if consider(hits):
                break

    if winner is None:
        raise RecoveryError(f"Nessun grafo tra {total} candidati supera i controlli")

    return RecoveryResult(
        graph=_candidate_graph(orbits, winner),
        candidate_index=winner,
        candidates=total,
        orbits=orbits,
        solutions=solutions,
        elapsed_ms=int((time.perf_counter() - start) * 1000),
    )


def _dense_confirms(graph: Graph) -> bool:
    """Costruzione densa completa e Knill-Laflamme su tutti gli errori di peso <= 2"""
    try:
        code = build_code10(graph)
    except ConstructionError as e:
        print(f"Candidato scartato: {e}", file=sys.stderr)
        return False
    report = kl_check(code.projector, enumerate_errors(code.num_qubits, 2),
                      check_projector=False)
    return report.pure


def load_graph10(artifacts=None, from_scratch: bool = False, threads: int = 1) -> Graph:
    """
    G_1 dal file congelato, oppure dalla ricerca (che poi lo scrive)

    Args:
        artifacts: ArtifactManager con la cartella dati (None = solo ricerca)
        from_scratch: Ignora il file esistente e riesegue l'oracolo
        threads: Processi per la ricerca
    """
    if artifacts is not None and not from_scratch:
        data = artifacts.read_json(G1_FILENAME)
        if data is not None:
            return Graph.from_json(data)
    result = recover_graph10(threads=threads)
    if artifacts is not None:
        artifacts.write_json(G1_FILENAME, result.graph.to_json())
    return result.graph


def code_for(a: int, graph10: Optional[Graph] = None) -> SmallCode:
    """D_(0,a): a=0 -> ((9,12,3)), a=1 -> ((10,24,3))"""
    if a == 0:
        return build_code9()
    if a == 1:
        return build_code10(graph10 if graph10 is not None else load_graph10(ArtifactManager()))
    raise ConstructionError(f"a deve essere 0 o 1, ricevuto {a}")
