"""
Serviço do Limite de Adversário
Cálculo exato do limite não ponderado de Ambainis em relações pequenas: versão
genérica vetorizada e versões especializadas para as relações de dois ciclos e do
gadget de origem.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import RelationError
from src.core.log import get_logger
from src.services.instance_service import all_bitstrings, two_cycle_range

logger = get_logger(__name__)

CYCLE_MIN_N = 9
MATERIALIZE_CYCLE_MAX_N = 9
GADGET_MAX_P = 8
GADGET_MAX_K = 6
MATERIALIZE_MAX_STRINGS = 50_000
PAIR_CHUNK = 32_768


@dataclass(frozen=True, eq=False)
class Relation:
    """
    Relação R ⊆ X × Y sobre cadeias de mesmo comprimento.
    X e Y são matrizes (|X| × L, |Y| × L); pairs contém pares de índices (x, y).
    """
    X: np.ndarray
    Y: np.ndarray
    pairs: np.ndarray
    positions: Optional[Tuple] = None

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X, dtype=np.int16))
        Y = np.atleast_2d(np.asarray(self.Y, dtype=np.int16))
        pairs = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
        if pairs.shape[0] == 0:
            raise RelationError("relação vazia")
        if X.shape[1] != Y.shape[1]:
            raise RelationError(f"comprimentos distintos: {X.shape[1]} ≠ {Y.shape[1]}")
        if pairs[:, 0].max() >= X.shape[0] or pairs[:, 1].max() >= Y.shape[0] or pairs.min() < 0:
            raise RelationError("par com índice fora de X ou Y")
        for lo in range(0, pairs.shape[0], PAIR_CHUNK):
            chunk = pairs[lo:lo + PAIR_CHUNK]
            if not np.all(np.any(X[chunk[:, 0]] != Y[chunk[:, 1]], axis=1)):
                raise RelationError("par relacionado sem posição divergente")
        if {row.tobytes() for row in X} & {row.tobytes() for row in Y}:
            raise RelationError("X e Y não são disjuntos")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "pairs", pairs)

    @property
    def length(self) -> int:
        return int(self.X.shape[1])

    def transposed(self) -> "Relation":
        """Relação com os papéis de X e Y trocados"""
        return Relation(self.Y, self.X, self.pairs[:, ::-1].copy(), self.positions)

    def diff_chunks(self) -> Iterator[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """(índices x, índices y, máscara de posições divergentes) em blocos de pares"""
        for lo in range(0, self.pairs.shape[0], PAIR_CHUNK):
            chunk = self.pairs[lo:lo + PAIR_CHUNK]
            xs, ys = chunk[:, 0], chunk[:, 1]
            yield xs, ys, self.X[xs] != self.Y[ys]


@dataclass
class AdversaryParams:
    """Parâmetros (m, m′, l_max) e o limite √(m·m′/l_max)"""
    m: int
    m_prime: int
    l_max: int
    bound: float
    x_degree: Optional[int] = None
    l_profile: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def build(cls, m: int, m_prime: int, l_max: int, **extra) -> "AdversaryParams":
        if l_max <= 0:
            raise RelationError("l_max deve ser positivo")
        return cls(m=m, m_prime=m_prime, l_max=l_max, bound=math.sqrt(m * m_prime / l_max), **extra)

    def as_row(self) -> Dict[str, float]:
        return {"m": self.m, "m_prime": self.m_prime, "l_max": self.l_max, "bound": self.bound}


def adversary_bound(rel: Relation) -> AdversaryParams:
    """Limite de Ambainis por enumeração direta dos pares e posições"""
    deg_x = np.bincount(rel.pairs[:, 0], minlength=rel.X.shape[0])
    deg_y = np.bincount(rel.pairs[:, 1], minlength=rel.Y.shape[0])
    if deg_x.min() == 0 or deg_y.min() == 0:
        raise RelationError("toda cadeia de X e de Y precisa de ao menos um par")

    l_x = np.zeros(rel.X.shape, dtype=np.int64)
    l_y = np.zeros(rel.Y.shape, dtype=np.int64)
    for xs, ys, diff in rel.diff_chunks():
        np.add.at(l_x, xs, diff)
        np.add.at(l_y, ys, diff)

    # posições com x_i = y_i ficam fora do máximo
    l_max = 0
    for xs, ys, diff in rel.diff_chunks():
        l_max = max(l_max, int(np.where(diff, l_x[xs] * l_y[ys], 0).max()))
    return AdversaryParams.build(int(deg_x.min()), int(deg_y.min()), l_max, x_degree=int(deg_x.min()))


def parity_relation(n: int) -> Relation:
    """PARITY em n bits: X de peso ímpar, Y de peso par, pares à distância de Hamming 1"""
    if n < 1:
        raise RelationError(f"n deve ser ≥ 1 (recebido {n})")
    strings = np.array(all_bitstrings(n), dtype=np.int64)
    odd = strings.sum(axis=1) % 2 == 1
    X, Y = strings[odd], strings[~odd]
    y_index = {row.tobytes(): idx for idx, row in enumerate(Y)}

    pairs = []
    for xi, x in enumerate(X):
        for pos in range(n):
            y = x.copy()
            y[pos] ^= 1
            pairs.append((xi, y_index[y.tobytes()]))
    return Relation(X, Y, np.array(pairs), positions=tuple(range(n)))


# ============================================================================
# RELAÇÃO DE DOIS CICLOS (modelo de matriz)
# ============================================================================

Pair = Tuple[int, int]


def _undirected(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def _valid_splits(n: int) -> List[int]:
    lo, hi = two_cycle_range(n)
    return [s for s in range(lo, hi + 1) if lo <= n - s <= hi]


def _ring_edges(ring: Sequence[int]) -> List[Pair]:
    return [_undirected(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]


def _cycle_swaps(ring: Sequence[int]) -> Iterator[Tuple[int, List[Pair], List[Pair]]]:
    """
    Trocas válidas de um ciclo: para cada par de arestas (a,b), (d,c) com o ciclo
    lido como a, b, ..., d, c, devolve (s, removidas, adicionadas).
    """
    n = len(ring)
    valid = set(_valid_splits(n))
    for i in range(n):
        for j in range(i + 1, n):
            s = j - i
            if s not in valid:
                continue
            a, b = ring[i], ring[(i + 1) % n]
            d, c = ring[j], ring[(j + 1) % n]
            yield s, [_undirected(a, b), _undirected(d, c)], [_undirected(a, c), _undirected(b, d)]


def _two_cycle_partners(cycle_a: Sequence[int], cycle_b: Sequence[int]) -> Counter:
    """Para y com ciclos A e B: quantos x relacionados divergem em cada par de vértices"""
    counts: Counter = Counter()
    for p, q in _ring_edges(cycle_a):
        for r, t in _ring_edges(cycle_b):
            for added in ((_undirected(p, r), _undirected(q, t)), (_undirected(p, t), _undirected(q, r))):
                counts[(p, q)] += 1
                counts[(r, t)] += 1
                counts[added[0]] += 1
                counts[added[1]] += 1
    return counts


def _cycle_profile(ring: Sequence[int]) -> AdversaryParams:
    """Parâmetros por x para um ciclo rotulado, com enumeração completa dos y vizinhos"""
    n = len(ring)
    swaps = list(_cycle_swaps(ring))
    if not swaps:
        raise RelationError(f"nenhuma troca válida para n={n}")

    l_x: Counter = Counter()
    for _, removed, added in swaps:
        l_x.update(removed + added)

    m_prime = None
    l_max = 0
    for _, removed, added in swaps:
        cycle_a, cycle_b = _split_cycle(ring, removed, added)
        l_y = _two_cycle_partners(cycle_a, cycle_b)
        degree_y = 2 * len(cycle_a) * len(cycle_b)
        m_prime = degree_y if m_prime is None else min(m_prime, degree_y)
        for cell in removed + added:
            l_max = max(l_max, l_x[cell] * l_y[cell])

    ring_edges = set(_ring_edges(ring))
    edge_l = max(l_x[e] for e in ring_edges)
    non_edge_l = max((v for cell, v in l_x.items() if cell not in ring_edges), default=0)
    return AdversaryParams.build(
        len(swaps), int(m_prime), int(l_max),
        x_degree=len(swaps),
        l_profile={"edge": int(edge_l), "non_edge_max": int(non_edge_l)},
    )


def _split_cycle(ring: Sequence[int], removed: List[Pair], added: List[Pair]) -> Tuple[List[int], List[int]]:
    """Percorre o grafo resultante da troca e devolve os dois ciclos"""
    adjacency: Dict[int, List[int]] = {v: [] for v in ring}
    edges = (set(_ring_edges(ring)) - set(removed)) | set(added)
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)

    cycles = []
    seen = set()
    for start in ring:
        if start in seen:
            continue
        walk, prev, current = [start], None, start
        seen.add(start)
        while True:
            nxt = next(v for v in adjacency[current] if v != prev)
            if nxt == start:
                break
            walk.append(nxt)
            seen.add(nxt)
            prev, current = current, nxt
        cycles.append(walk)
    if len(cycles) != 2:
        raise RelationError(f"troca produziu {len(cycles)} ciclos")
    return cycles[0], cycles[1]


def cycle_relation_params(n: int, relabel_samples: int = 2, seed: int = 0) -> AdversaryParams:
    """
    Parâmetros exatos da relação um-ciclo/dois-ciclos pelo ciclo canônico 0-1-...-(n-1).
    Os mesmos valores são conferidos em `relabel_samples` rotulações aleatórias.
    """
    if n < CYCLE_MIN_N:
        raise RelationError(f"cycle_relation_params exige n ≥ {CYCLE_MIN_N} (recebido {n})")

    params = _cycle_profile(list(range(n)))
    rng = np.random.default_rng(seed)
    for _ in range(relabel_samples):
        sample = _cycle_profile([int(v) for v in rng.permutation(n)])
        if (sample.m, sample.m_prime, sample.l_max) != (params.m, params.m_prime, params.l_max):
            raise RelationError(f"parâmetros dependem da rotulação em n={n}")

    logger.debug("cycle_relation", n=n, **params.as_row())
    return params


def materialize_cycle_relation(n: int) -> Relation:
    """Relação completa sobre todos os n-ciclos rotulados (6 ≤ n ≤ 9), cadeias = células da matriz"""
    if not 6 <= n <= MATERIALIZE_CYCLE_MAX_N:
        raise RelationError(f"materialização exige 6 ≤ n ≤ {MATERIALIZE_CYCLE_MAX_N} (recebido {n})")

    def cells_of(edges) -> np.ndarray:
        cells = np.zeros((n, n), dtype=np.int8)
        for u, v in edges:
            cells[u, v] = cells[v, u] = 1
        return cells.ravel()

    X: List[np.ndarray] = []
    Y: List[np.ndarray] = []
    y_index: Dict[bytes, int] = {}
    pairs: List[Tuple[int, int]] = []

    for tail in permutations(range(1, n)):
        if tail[0] > tail[-1]:
            continue
        ring = (0,) + tail
        edges = set(_ring_edges(ring))
        xi = len(X)
        X.append(cells_of(edges))
        for _, removed, added in _cycle_swaps(ring):
            y = cells_of((edges - set(removed)) | set(added))
            key = y.tobytes()
            if key not in y_index:
                y_index[key] = len(Y)
                Y.append(y)
            pairs.append((xi, y_index[key]))

    positions = tuple((u, v) for u in range(n) for v in range(n))
    return Relation(np.array(X), np.array(Y), np.array(pairs), positions=positions)


# ============================================================================
# RELAÇÃO DO GADGET DE ORIGEM (modelo de lista)
# ============================================================================

def _level_rows(i: int, b: int, j0: int, j1: int, p: int, k: int) -> np.ndarray:
    """Linhas de v_{2i} e v_{2i+1} no gadget: forward nos slots j0/j1, u_j nos demais"""
    clique = 2 * p
    rows = np.tile(clique + np.arange(k), (2, 1))
    rows[0, j0] = (2 * i + 2 + b) % (2 * p)
    rows[1, j1] = (2 * i + 3 - b) % (2 * p)
    return rows


def _gadget_neighbors(
    bits: Sequence[int],
    slots: Sequence[Tuple[int, int]],
    k: int,
) -> Iterator[Tuple[int, Tuple[int, int], np.ndarray]]:
    """
    Instâncias relacionadas: em um nível i, troca paralelo/cruzado e move os slots
    para (h0, h1) com h0 ≠ j0, h1 ≠ j1. Devolve (nível, novos slots, posições divergentes).
    """
    p = len(bits)
    for i, (b, (j0, j1)) in enumerate(zip(bits, slots)):
        before = _level_rows(i, b, j0, j1, p, k)
        for h0, h1 in product(range(k), repeat=2):
            if h0 == j0 or h1 == j1:
                continue
            after = _level_rows(i, 1 - b, h0, h1, p, k)
            rows, cols = np.nonzero(before != after)
            yield i, (h0, h1), (2 * i + rows) * k + cols


def _gadget_l_counts(bits, slots, k: int) -> Tuple[int, Counter]:
    degree = 0
    counts: Counter = Counter()
    for _, _, diff in _gadget_neighbors(bits, slots, k):
        degree += 1
        counts.update(int(pos) for pos in diff)
    return degree, counts


def gadget_relation_params(p: int, k: int, samples: int = 8, seed: int = 0) -> AdversaryParams:
    """
    Parâmetros exatos da relação do gadget por amostras representativas de f.
    Para cada f amostrado, todos os g relacionados e, para cada g, todos os seus f
    relacionados são enumerados.
    """
    if not 1 <= p <= GADGET_MAX_P or not 2 <= k <= GADGET_MAX_K:
        raise RelationError(f"fora da escala de enumeração: p={p}, k={k} (p ≤ {GADGET_MAX_P}, 2 ≤ k ≤ {GADGET_MAX_K})")

    rng = np.random.default_rng(seed)
    m = m_prime = None
    l_max = 0
    backward_l: set = set()
    forward_l: set = set()

    for _ in range(samples):
        bits = [int(b) for b in rng.integers(0, 2, size=p)]
        if sum(bits) % 2 == 0:
            bits[0] ^= 1
        slots = [tuple(int(s) for s in pair) for pair in rng.integers(0, k, size=(p, 2))]

        degree, l_x = _gadget_l_counts(bits, slots, k)
        m = degree if m is None else min(m, degree)

        forward_positions = {(2 * i) * k + j0 for i, (j0, _) in enumerate(slots)}
        forward_positions |= {(2 * i + 1) * k + j1 for i, (_, j1) in enumerate(slots)}
        for pos, value in l_x.items():
            (forward_l if pos in forward_positions else backward_l).add(value)

        for i, new_slots, diff in _gadget_neighbors(bits, slots, k):
            g_bits = list(bits)
            g_bits[i] ^= 1
            g_slots = list(slots)
            g_slots[i] = new_slots
            g_degree, l_y = _gadget_l_counts(g_bits, g_slots, k)
            m_prime = g_degree if m_prime is None else min(m_prime, g_degree)
            for pos in diff:
                l_max = max(l_max, l_x[int(pos)] * l_y[int(pos)])

    if len(backward_l) != 1 or len(forward_l) != 1:
        raise RelationError(f"valores de l não uniformes: backward={backward_l}, forward={forward_l}")

    params = AdversaryParams.build(
        int(m), int(m_prime), int(l_max),
        x_degree=int(m),
        l_profile={"backward": backward_l.pop(), "forward": forward_l.pop()},
    )
    logger.debug("gadget_relation", p=p, k=k, **params.as_row())
    return params


def materialize_gadget_relation(p: int, k: int) -> Relation:
    """Relação completa do gadget (todas as cadeias de bits e todos os slots), escala pequena"""
    size = 2 ** (p - 1) * k ** (2 * p)
    if p < 1 or k < 2 or size > MATERIALIZE_MAX_STRINGS:
        raise RelationError(f"materialização inviável: p={p}, k={k} ({size} cadeias por lado)")

    n = 2 * p + k
    clique_rows = np.array([[0] + [2 * p + (i + j) % k for j in range(1, k)] for i in range(k)])

    def table(bits, slots) -> np.ndarray:
        levels = [_level_rows(i, b, j0, j1, p, k) for i, (b, (j0, j1)) in enumerate(zip(bits, slots))]
        return np.vstack(levels + [clique_rows]).ravel()

    all_slots = list(product(product(range(k), repeat=2), repeat=p))
    X: List[np.ndarray] = []
    Y: List[np.ndarray] = []
    y_index: Dict[bytes, int] = {}
    x_specs = []
    for bits in all_bitstrings(p):
        target = X if sum(bits) % 2 else Y
        for slots in all_slots:
            row = table(bits, slots)
            if target is Y:
                y_index[row.tobytes()] = len(Y)
            else:
                x_specs.append((bits, slots))
            target.append(row)

    pairs = []
    for xi, (bits, slots) in enumerate(x_specs):
        for i, new_slots, _ in _gadget_neighbors(bits, slots, k):
            g_bits = list(bits)
            g_bits[i] ^= 1
            g_slots = list(slots)
            g_slots[i] = new_slots
            pairs.append((xi, y_index[table(g_bits, g_slots).tobytes()]))

    positions = tuple((u, j) for u in range(n) for j in range(k))
    return Relation(np.array(X), np.array(Y), np.array(pairs), positions=positions)


__all__ = [
    "Relation",
    "AdversaryParams",
    "adversary_bound",
    "parity_relation",
    "cycle_relation_params",
    "materialize_cycle_relation",
    "gadget_relation_params",
    "materialize_gadget_relation",
    "CYCLE_MIN_N",
]
