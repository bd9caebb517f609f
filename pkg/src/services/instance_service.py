"""
Serviço de Geração de Instâncias
Famílias de limite inferior (paridade, gadget de origem, um ou dois ciclos) e
corpora aleatórios, sempre validados e com verdade de referência conhecida.
"""

import math
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import PromiseViolation
from src.core.graphs import (
    Edge,
    ListGraph,
    MatrixGraph,
    require_valid,
    validate_list,
    validate_matrix,
)


def _bits(x: Sequence[int] | str) -> Tuple[int, ...]:
    bits = tuple(int(b) for b in x)
    if any(b not in (0, 1) for b in bits):
        raise PromiseViolation(f"cadeia de bits inválida: {x!r}")
    return bits


def parity(x: Sequence[int]) -> int:
    return sum(x) % 2


@dataclass(frozen=True)
class ParitySpec:
    """Instância x ∈ {0,1}^p da redução de paridade"""
    x: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", _bits(self.x))
        if len(self.x) < 1:
            raise PromiseViolation("ParitySpec exige p ≥ 1")

    @property
    def p(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class GadgetSpec:
    """
    Instância do gadget de origem: bits x, grau de saída k e, por nível, os slots
    (j0, j1) das arestas para frente. Sem slots explícitos, são sorteados com `seed`.
    """
    x: Tuple[int, ...]
    k: int
    slots: Optional[Tuple[Tuple[int, int], ...]] = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x", _bits(self.x))
        if len(self.x) < 1:
            raise PromiseViolation("GadgetSpec exige p ≥ 1")
        if self.k < 2:
            raise PromiseViolation(f"GadgetSpec exige k ≥ 2 (recebido {self.k})")
        if self.slots is not None:
            slots = tuple((int(a), int(b)) for a, b in self.slots)
            if len(slots) != len(self.x):
                raise PromiseViolation(f"esperados {len(self.x)} pares de slots, recebidos {len(slots)}")
            if any(not (0 <= a < self.k and 0 <= b < self.k) for a, b in slots):
                raise PromiseViolation(f"slot fora de [0, {self.k})")
            object.__setattr__(self, "slots", slots)

    @property
    def p(self) -> int:
        return len(self.x)

    def resolved_slots(self) -> Tuple[Tuple[int, int], ...]:
        if self.slots is not None:
            return self.slots
        rng = np.random.default_rng(self.seed)
        drawn = rng.integers(0, self.k, size=(self.p, 2))
        return tuple((int(a), int(b)) for a, b in drawn)


@dataclass(frozen=True)
class CycleSpec:
    """Um n-ciclo, ou dois ciclos de comprimentos (len_a, len_b) em [⌈n/3⌉, ⌊2n/3⌋]"""
    n: int
    variant: Literal["one-cycle", "two-cycle"] = "one-cycle"
    lengths: Optional[Tuple[int, int]] = None
    seed: int = 0

    def __post_init__(self):
        if self.variant == "one-cycle":
            if self.n < 3:
                raise PromiseViolation(f"um ciclo exige n ≥ 3 (recebido {self.n})")
            return
        if self.variant != "two-cycle":
            raise PromiseViolation(f"variante desconhecida: {self.variant}")
        if self.n < 6:
            raise PromiseViolation(f"dois ciclos exigem n ≥ 6 (recebido {self.n})")
        if self.lengths is not None:
            a, b = self.lengths
            lo, hi = two_cycle_range(self.n)
            if a + b != self.n or not (lo <= a <= hi and lo <= b <= hi):
                raise PromiseViolation(f"divisão inválida {self.lengths} para n={self.n} (faixa [{lo}, {hi}])")


def two_cycle_range(n: int) -> Tuple[int, int]:
    """Faixa admissível do comprimento de cada ciclo"""
    return max(3, math.ceil(n / 3)), (2 * n) // 3


# ============================================================================
# FAMÍLIAS DE LIMITE INFERIOR
# ============================================================================

def _forward_targets(i: int, b: int, p: int) -> Tuple[int, int]:
    """Destinos de v_{2i} e v_{2i+1}: paralelos (b=0) ou cruzados (b=1)"""
    size = 2 * p
    return (2 * i + 2 + b) % size, (2 * i + 3 - b) % size


def gen_parity_graph(spec: ParitySpec) -> ListGraph:
    """Grafo de permutação de dois níveis: 1 ciclo se parity(x) = 1, senão 2"""
    p = spec.p
    nbr = np.empty((2 * p, 1), dtype=np.int64)
    for i, b in enumerate(spec.x):
        nbr[2 * i, 0], nbr[2 * i + 1, 0] = _forward_targets(i, b, p)

    g = ListGraph(nbr, directed=True)
    require_valid(validate_list(g, allow_self_loops=p == 1))
    return g


def gen_origin_gadget(spec: GadgetSpec) -> ListGraph:
    """
    Cadeia de paridade em que os slots não usados pela aresta para frente apontam
    para uma k-clique ligada de volta a v_0. Fortemente conexo sse parity(x) = 1.
    """
    p, k = spec.p, spec.k
    n = 2 * p + k
    clique = 2 * p
    nbr = np.empty((n, k), dtype=np.int64)

    for i, ((j0, j1), b) in enumerate(zip(spec.resolved_slots(), spec.x)):
        even_target, odd_target = _forward_targets(i, b, p)
        for vertex, slot, target in ((2 * i, j0, even_target), (2 * i + 1, j1, odd_target)):
            nbr[vertex] = clique + np.arange(k)
            nbr[vertex, slot] = target

    for i in range(k):
        nbr[clique + i, 0] = 0
        for j in range(1, k):
            nbr[clique + i, j] = clique + (i + j) % k

    g = ListGraph(nbr, directed=True)
    require_valid(validate_list(g, allow_self_loops=p == 1))
    return g


def gen_cycle_instance(spec: CycleSpec) -> MatrixGraph:
    """Matriz simétrica de um ou dois ciclos com rótulos uniformemente aleatórios"""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    if spec.variant == "one-cycle":
        lengths = [n]
    elif spec.lengths is not None:
        lengths = list(spec.lengths)
    else:
        lo, hi = two_cycle_range(n)
        splits = [a for a in range(lo, hi + 1) if lo <= n - a <= hi]
        if not splits:
            raise PromiseViolation(f"nenhuma divisão válida para n={n}")
        a = int(splits[rng.integers(len(splits))])
        lengths = [a, n - a]

    labels = rng.permutation(n)
    edges: List[Edge] = []
    offset = 0
    for length in lengths:
        ring = labels[offset:offset + length]
        edges.extend((int(ring[i]), int(ring[(i + 1) % length])) for i in range(length))
        offset += length

    g = MatrixGraph.from_edges(n, edges, directed=False)
    require_valid(validate_matrix(g, undirected=True))
    return g


# ============================================================================
# TROCA DE ARESTAS E ESTRUTURA DE CICLOS
# ============================================================================

def exchange_edges(g: MatrixGraph, a: int, b: int, c: int, d: int) -> MatrixGraph:
    """Remove (a,b),(c,d) e adiciona (a,c),(b,d), sem verificar a estrutura de ciclos"""
    cells = np.array(g.cells, copy=True)
    for u, v, value in ((a, b, False), (c, d, False), (a, c, True), (b, d, True)):
        cells[u, v] = cells[v, u] = value
    return MatrixGraph(cells, directed=False)


def cycle_order(g: MatrixGraph, start: int = 0) -> List[int]:
    """Vértices do ciclo que contém `start`, na ordem de percurso (grafo 2-regular)"""
    degrees = g.cells.sum(axis=1)
    if np.any(degrees != 2):
        raise PromiseViolation("grafo não é 2-regular")
    order = [start]
    prev, current = -1, start
    while True:
        a, b = (int(v) for v in np.flatnonzero(g.cells[current]))
        nxt = a if a != prev else b
        if nxt == start:
            return order
        order.append(nxt)
        prev, current = current, nxt


def cycle_lengths(g: MatrixGraph) -> List[int]:
    """Comprimentos (ordenados) dos ciclos de um grafo 2-regular não direcionado"""
    seen = np.zeros(g.n, dtype=bool)
    lengths = []
    for v in range(g.n):
        if not seen[v]:
            ring = cycle_order(g, v)
            seen[ring] = True
            lengths.append(len(ring))
    return sorted(lengths)


def two_swap(g: MatrixGraph, a: int, b: int, c: int, d: int) -> MatrixGraph:
    """
    Troca (a,b),(c,d) por (a,c),(b,d) em um único ciclo, produzindo dois ciclos.
    O ciclo precisa ser lido como a, b, ..., d, c.
    """
    if len({a, b, c, d}) != 4:
        raise PromiseViolation(f"vértices não distintos: {(a, b, c, d)}")
    if not (g.has_edge(a, b) and g.has_edge(c, d)):
        raise PromiseViolation(f"({a},{b}) e ({c},{d}) precisam ser arestas")
    if g.has_edge(a, c) or g.has_edge(b, d):
        raise PromiseViolation(f"({a},{c}) ou ({b},{d}) já é aresta")

    order = cycle_order(g, a)
    if len(order) != g.n:
        raise PromiseViolation("two_swap exige uma instância de ciclo único")
    if order[1] != b:
        order = [a] + order[:0:-1]
    pos_c, pos_d = order.index(c), order.index(d)
    if pos_d != pos_c - 1:
        raise PromiseViolation(f"orientação inválida: o ciclo não é lido como {a}, {b}, ..., {d}, {c}")

    return exchange_edges(g, a, b, c, d)


def count_cycles(g: ListGraph) -> int:
    """Número de ciclos de um grafo de permutação (k = 1)"""
    if g.k != 1:
        raise PromiseViolation(f"count_cycles exige k = 1 (recebido {g.k})")
    perm = g.nbr[:, 0]
    if np.any((perm < 0) | (perm >= g.n)) or np.unique(perm).size != g.n:
        raise PromiseViolation("tabela não é uma permutação")

    seen = np.zeros(g.n, dtype=bool)
    cycles = 0
    for v in range(g.n):
        if seen[v]:
            continue
        cycles += 1
        while not seen[v]:
            seen[v] = True
            v = int(perm[v])
    return cycles


# ============================================================================
# CORPORA ALEATÓRIOS
# ============================================================================

def gen_random_matrix(n: int, edge_prob: float, directed: bool = False, seed: int = 0) -> MatrixGraph:
    """G(n, p): cada célula fora da diagonal (ou par, se não direcionado) com probabilidade p"""
    if n < 1:
        raise PromiseViolation(f"n deve ser ≥ 1 (recebido {n})")
    if not 0.0 <= edge_prob <= 1.0:
        raise PromiseViolation(f"probabilidade fora de [0, 1]: {edge_prob}")
    rng = np.random.default_rng(seed)
    draws = rng.random((n, n)) < edge_prob
    if directed:
        cells = draws
    else:
        cells = np.triu(draws, k=1)
        cells = cells | cells.T
    np.fill_diagonal(cells, False)
    return MatrixGraph(cells, directed=directed)


def gen_random_matrix_edges(n: int, m: int, directed: bool = False, seed: int = 0) -> MatrixGraph:
    """
    Grafo com exatamente m células de aresta. Não direcionado: m deve ser par
    (cada aresta ocupa duas células simétricas).
    """
    max_cells = n * (n - 1)
    if not 0 <= m <= max_cells:
        raise PromiseViolation(f"m={m} fora de [0, {max_cells}]")
    if not directed and m % 2:
        raise PromiseViolation(f"m={m} ímpar para grafo não direcionado")

    rng = np.random.default_rng(seed)
    if directed:
        candidates = [(u, v) for u in range(n) for v in range(n) if u != v]
        picks = rng.choice(len(candidates), size=m, replace=False)
    else:
        candidates = [(u, v) for u in range(n) for v in range(u + 1, n)]
        picks = rng.choice(len(candidates), size=m // 2, replace=False)
    return MatrixGraph.from_edges(n, [candidates[int(i)] for i in picks], directed=directed)


def undirected_list_view(g: MatrixGraph) -> ListGraph:
    """Grafo regular não direcionado no modelo de lista (vizinhos em ordem crescente)"""
    degrees = g.cells.sum(axis=1)
    if degrees.size == 0 or degrees[0] < 1 or np.any(degrees != degrees[0]):
        raise PromiseViolation("visão de lista exige grafo regular de grau ≥ 1")
    nbr = np.array([np.flatnonzero(row) for row in g.cells], dtype=np.int64)
    view = ListGraph(nbr, directed=False)
    require_valid(validate_list(view, undirected=True))
    return view


def gen_random_list(n: int, k: int, seed: int = 0) -> ListGraph:
    """Grafo direcionado de grau de saída k: k vizinhos distintos ≠ u, uniformes"""
    if not 1 <= k < n:
        raise PromiseViolation(f"gen_random_list exige 1 ≤ k < n (k={k}, n={n})")
    rng = np.random.default_rng(seed)
    nbr = np.empty((n, k), dtype=np.int64)
    for u in range(n):
        picks = rng.choice(n - 1, size=k, replace=False)
        nbr[u] = picks + (picks >= u)
    g = ListGraph(nbr, directed=True)
    require_valid(validate_list(g))
    return g


def all_bitstrings(p: int) -> List[Tuple[int, ...]]:
    """Todas as cadeias de p bits em ordem lexicográfica"""
    return [tuple((value >> (p - 1 - i)) & 1 for i in range(p)) for value in range(2 ** p)]


__all__ = [
    "ParitySpec",
    "GadgetSpec",
    "CycleSpec",
    "parity",
    "two_cycle_range",
    "gen_parity_graph",
    "gen_origin_gadget",
    "gen_cycle_instance",
    "exchange_edges",
    "two_swap",
    "cycle_order",
    "cycle_lengths",
    "count_cycles",
    "gen_random_matrix",
    "gen_random_matrix_edges",
    "gen_random_list",
    "undirected_list_view",
    "all_bitstrings",
]
