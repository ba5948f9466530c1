#!/usr/bin/env python3
"""
Graph Model - Grafi semplici, permutazioni e stabilizzatori degli stati a grafo

Le etichette dei vertici sono interi; il qubit associato a un vertice è la
sua posizione nella lista ordinata dei vertici (G_0: etichette 1..9 sui
qubit 0..8, G_1: etichette 0..9 sui qubit 0..9).
"""

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from core.errors import DimensionError
from core.pauli_algebra import PauliOperator

Edge = Tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


class Graph:
    """
    Grafo semplice non orientato su un networkx.Graph congelato

    Args:
        vertices: Etichette in ordine di qubit
        edges: Coppie di etichette (senza cappi)
    """

    def __init__(self, vertices: Iterable[int], edges: Iterable[Sequence[int]] = ()):
        self.vertices: Tuple[int, ...] = tuple(int(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise DimensionError("Etichette dei vertici duplicate")
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise DimensionError(f"Cappio sul vertice {a}")
            if a not in graph or b not in graph:
                raise DimensionError(f"Lato {{{a},{b}}} fuori dai vertici")
            graph.add_edge(a, b)
        self._graph = nx.freeze(graph)
        self._positions = {v: i for i, v in enumerate(self.vertices)}
        self._edges = frozenset(_edge(a, b) for a, b in graph.edges)

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(vertices, edges)

    @classmethod
    def from_nx(cls, graph: nx.Graph, vertices: Optional[Sequence[int]] = None) -> "Graph":
        """Da un networkx.Graph; l'ordine dei qubit è quello dei vertici ordinati"""
        return cls(vertices if vertices is not None else sorted(graph.nodes), graph.edges)

    @property
    def nx_graph(self) -> nx.Graph:
        """Vista networkx (congelata)"""
        return self._graph

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def position(self, label: int) -> int:
        try:
            return self._positions[label]
        except KeyError:
            raise DimensionError(f"Vertice sconosciuto: {label}") from None

    def neighbors(self, label: int) -> List[int]:
        self.position(label)
        return sorted(self._graph.neighbors(label))

    def degree(self, label: int) -> int:
        self.position(label)
        return self._graph.degree[label]

    def adjacency_masks(self) -> List[int]:
        """Riga di adiacenza di ogni vertice come maschera sulle posizioni"""
        if not self.vertices:
            return []
        adjacency = nx.to_numpy_array(self._graph, nodelist=list(self.vertices), dtype=np.int64)
        weights = np.left_shift(1, np.arange(self.num_vertices, dtype=np.int64))
        return [int(m) for m in adjacency @ weights]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self._edges)

    def subset_mask(self, labels: Iterable[int]) -> int:
        """Insieme di vertici -> maschera sulle posizioni"""
        mask = 0
        for label in labels:
            mask |= 1 << self.position(label)
        return mask

    def to_json(self) -> Dict[str, list]:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.sorted_edges()],
        }

    @classmethod
    def from_json(cls, data: Dict[str, list]) -> "Graph":
        return cls(data["vertices"], data["edges"])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self.vertices)}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class PermutationMap:
    """Biiezione sulle etichette dei vertici"""

    mapping: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((int(k), int(v)) for k, v in dict(self.mapping).items()))
        if sorted(k for k, _ in pairs) != sorted(v for _, v in pairs):
            raise DimensionError("La mappa non è una biiezione")
        object.__setattr__(self, "mapping", pairs)

    @classmethod
    def from_dict(cls, mapping: Dict[int, int]) -> "PermutationMap":
        return cls(tuple(mapping.items()))

    @classmethod
    def identity(cls, labels: Iterable[int]) -> "PermutationMap":
        return cls(tuple((v, v) for v in labels))

    @classmethod
    def from_cycles(cls, labels: Iterable[int], cycles: Iterable[Sequence[int]]) -> "PermutationMap":
        """Costruisce la permutazione da una lista di cicli, es. [(1,4),(2,3)]"""
        mapping = {v: v for v in labels}
        for cycle in cycles:
            for i, v in enumerate(cycle):
                if v not in mapping:
                    raise DimensionError(f"Vertice {v} fuori dal dominio")
                mapping[v] = cycle[(i + 1) % len(cycle)]
        return cls.from_dict(mapping)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.mapping)

    @property
    def domain(self) -> FrozenSet[int]:
        return frozenset(k for k, _ in self.mapping)

    def __call__(self, label: int) -> int:
        return self.as_dict()[label]

    def apply_set(self, labels: Iterable[int]) -> FrozenSet[int]:
        lookup = self.as_dict()
        return frozenset(lookup[v] for v in labels)

    def compose(self, other: "PermutationMap") -> "PermutationMap":
        """(self ∘ other)(v) = self(other(v))"""
        if self.domain != other.domain:
            raise DimensionError("Domini diversi nella composizione")
        mine = self.as_dict()
        return PermutationMap(tuple((v, mine[w]) for v, w in other.mapping))

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.mapping)

    def moved(self) -> FrozenSet[int]:
        return frozenset(k for k, v in self.mapping if k != v)


def cycle_graph(n: int, first_label: int = 1) -> Graph:
    """Ciclo con vertici first_label..first_label+n-1"""
    if n < 3:
        raise DimensionError(f"Un ciclo richiede almeno 3 vertici, ricevuti {n}")
    return Graph.from_nx(nx.relabel_nodes(nx.cycle_graph(n), lambda i: i + first_label))


def is_automorphism(g: Graph, perm: PermutationMap) -> bool:
    """True se la permutazione preserva l'insieme dei lati"""
    if perm.domain != frozenset(g.vertices):
        raise DimensionError("Il dominio della permutazione non coincide con i vertici")
    lookup = perm.as_dict()
    graph = g.nx_graph
    return all(graph.has_edge(lookup[a], lookup[b]) for a, b in graph.edges)


def close_group(generators: Iterable[PermutationMap], labels: Iterable[int]) -> List[PermutationMap]:
    """Chiusura per composizione (identità inclusa)"""
    identity = PermutationMap.identity(labels)
    group = {identity}
    frontier = [identity]
    gens = list(generators)
    while frontier:
        nxt = []
        for elem in frontier:
            for gen in gens:
                candidate = gen.compose(elem)
                if candidate not in group:
                    group.add(candidate)
                    nxt.append(candidate)
        frontier = nxt
    return sorted(group, key=lambda p: p.mapping)


def edge_orbits(vertices: Sequence[int], group: Iterable[PermutationMap]) -> List[List[Edge]]:
    """
    Partizione delle coppie di vertici in orbite sotto il gruppo

    Args:
        vertices: Etichette dei vertici
        group: Elementi (o generatori) del gruppo; viene chiuso per composizione

    Returns:
        Orbite come liste ordinate di lati, in ordine canonico (per primo lato)
    """
    elements = close_group(group, vertices)
    seen = set()
    orbits: List[List[Edge]] = []
    for pair in itertools.combinations(sorted(vertices), 2):
        if pair in seen:
            continue
        orbit = sorted({_edge(p(pair[0]), p(pair[1])) for p in elements})
        seen.update(orbit)
        orbits.append(orbit)
    return sorted(orbits)


def graph_state_stabilizer(g: Graph, v: int) -> PauliOperator:
    """X_v Z_{N(v)} = U_G X_v U_G sui qubit posizionali del grafo"""
    pos = g.position(v)
    return PauliOperator(g.num_vertices, 1 << pos, g.adjacency_masks()[pos])
