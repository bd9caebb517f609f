"""
Simulação Clássica Exata das Buscas de Grover
Amostra o resultado da medição pela dinâmica de rotação em duas dimensões e cobra
cada iteração e cada verificação no QueryLedger. Inclui as variantes com contagem
conhecida, BBHT (contagem desconhecida), busca de mínimo de Dürr–Høyer, boosting
e um simulador de vetor de estado usado como oráculo de referência.
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np

from src.core.config import GroverConfig
from src.core.errors import SearchError
from src.core.ledger import QueryLedger


STATEVECTOR_MAX_N = 2 ** 16

Predicate = Callable[[int], bool]


def make_rng(seed: Optional[int | Sequence[int]]) -> np.random.Generator:
    """Gerador determinístico; toda aleatoriedade das buscas vem dele"""
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class SearchOutcome:
    """Resultado de uma busca simulada"""
    found: bool
    index: Optional[int]
    queries: int


class SearchSpace:
    """
    Espaço de busca [0, N) com predicado consultado pelo algoritmo (custo 1 por
    verificação) e enumeração privilegiada do conjunto marcado, usada apenas pelo
    simulador para amostrar medições (sem custo).
    """

    def __init__(
        self,
        size: int,
        predicate: Predicate,
        ledger: QueryLedger,
        marked: Optional[Iterable[int]] = None,
        enumerate_marked: Optional[Callable[[], np.ndarray]] = None,
    ):
        if size < 1:
            raise SearchError(f"espaço de busca vazio (N={size})")
        self.size = int(size)
        self.predicate = predicate
        self.ledger = ledger
        self._enumerate = enumerate_marked
        self._marked: Optional[np.ndarray] = None
        if marked is not None:
            self._marked = np.unique(np.asarray(list(marked), dtype=np.int64))

    @classmethod
    def from_marked(cls, size: int, marked: Iterable[int], ledger: QueryLedger) -> "SearchSpace":
        marked_set = frozenset(int(i) for i in marked)
        return cls(size, marked_set.__contains__, ledger, marked=marked_set)

    def marked_indices(self) -> np.ndarray:
        """Índices marcados em ordem crescente (privilegiado, sem custo)"""
        if self._marked is None:
            if self._enumerate is not None:
                found = np.asarray(self._enumerate(), dtype=np.int64)
            else:
                found = np.array([i for i in range(self.size) if self.predicate(i)], dtype=np.int64)
            self._marked = np.unique(found)
        return self._marked

    @property
    def marked_count(self) -> int:
        return int(self.marked_indices().size)

    def probe(self, index: int) -> bool:
        """Consulta contada do predicado"""
        self.ledger.charge(1)
        return bool(self.predicate(int(index)))

    def iterate(self, iterations: int):
        """Cobra as iterações de Grover (uma chamada ao oráculo por iteração)"""
        self.ledger.charge(iterations)


def success_prob_known_t(N: int, t: int, j: int) -> float:
    """sin²((2j+1)θ) com θ = arcsin(√(t/N))"""
    if t <= 0:
        raise SearchError("t = 0 não define a rotação de Grover")
    if t > N:
        raise SearchError(f"t={t} excede N={N}")
    if j < 0:
        raise SearchError(f"número de iterações negativo: {j}")
    theta = math.asin(math.sqrt(t / N))
    p = math.sin((2 * j + 1) * theta) ** 2
    return min(1.0, max(0.0, p))


def _nth_unmarked(marked: np.ndarray, r: int) -> int:
    """r-ésimo índice não marcado, dado o vetor ordenado de marcados"""
    before = marked - np.arange(marked.size)
    return int(r + np.searchsorted(before, r, side="right"))


def _measure(space: SearchSpace, iterations: int, rng: np.random.Generator) -> int:
    """Amostra a medição após `iterations` iterações a partir do estado uniforme"""
    marked = space.marked_indices()
    t, N = int(marked.size), space.size
    if t == 0:
        return int(rng.integers(N))
    if t == N:
        return int(marked[rng.integers(t)])
    p = success_prob_known_t(N, t, iterations)
    if rng.random() < p:
        return int(marked[rng.integers(t)])
    return _nth_unmarked(marked, int(rng.integers(N - t)))


def grover_known_count(space: SearchSpace, t: int, rng: np.random.Generator) -> SearchOutcome:
    """
    Grover com número de soluções conhecido: floor((π/4)·√(N/t)) iterações e uma
    verificação. Erra com probabilidade 1 − sin²((2j+1)θ).
    """
    if t <= 0:
        raise SearchError("grover_known_count exige t ≥ 1")
    true_t = space.marked_count
    if t != true_t:
        raise SearchError(f"contagem informada t={t} difere da contagem real {true_t}")

    start = space.ledger.count
    iterations = math.floor((math.pi / 4) * math.sqrt(space.size / t))
    space.iterate(iterations)
    index = _measure(space, iterations, rng)
    found = space.probe(index)
    return SearchOutcome(found=found, index=index, queries=space.ledger.since(start))


def grover_unknown_count(space: SearchSpace, rng: np.random.Generator, cfg: GroverConfig) -> SearchOutcome:
    """
    Busca BBHT: rodadas com j uniforme em [0, m) e m ← min(λm, √N). Declara o
    espaço vazio quando as consultas cobradas atingem ⌈c₀·√N⌉.
    """
    N = space.size
    budget = math.ceil(cfg.bbht_cutoff_factor * math.sqrt(N))
    ceiling = math.sqrt(N)
    start = space.ledger.count
    spent = 0
    m = 1.0

    while spent < budget:
        iterations = int(rng.integers(0, math.ceil(m)))
        iterations = min(iterations, budget - spent - 1)
        space.iterate(iterations)
        index = _measure(space, iterations, rng)
        spent += iterations + 1
        if space.probe(index):
            return SearchOutcome(found=True, index=index, queries=space.ledger.since(start))
        m = min(cfg.bbht_lambda * m, ceiling)

    return SearchOutcome(found=False, index=None, queries=space.ledger.since(start))


def _durr_hoyer(
    size: int,
    keys: np.ndarray,
    ledger: QueryLedger,
    rng: np.random.Generator,
    cfg: GroverConfig,
) -> int:
    """
    Núcleo de Dürr–Høyer: limiar inicial uniforme e buscas BBHT por chaves menores
    que a do limiar até esgotar c₁·√N consultas. Devolve o índice do limiar final.
    """
    budget = cfg.min_finding_budget_factor * math.sqrt(size)
    start = ledger.count

    best = int(rng.integers(size))
    ledger.charge(1)
    while ledger.since(start) < budget:
        threshold = keys[best]
        below = np.flatnonzero(keys < threshold)
        space = SearchSpace(
            size,
            lambda i, threshold=threshold: bool(keys[i] < threshold),
            ledger,
            marked=below,
        )
        outcome = grover_unknown_count(space, rng, cfg)
        if outcome.found:
            best = int(outcome.index)
    return best


def find_min_index(space: SearchSpace, rng: np.random.Generator, cfg: GroverConfig) -> SearchOutcome:
    """Menor índice marcado (probabilidade ≥ 1/2) com O(√N) consultas"""
    start = space.ledger.count
    N = space.size
    mask = np.zeros(N, dtype=bool)
    mask[space.marked_indices()] = True
    keys = np.where(mask, np.arange(N, dtype=float), np.inf)

    best = _durr_hoyer(N, keys, space.ledger, rng, cfg)
    found = bool(np.isfinite(keys[best]))
    return SearchOutcome(found=found, index=best if found else None, queries=space.ledger.since(start))


def find_min_value(
    values: Sequence[Any],
    ledger: QueryLedger,
    rng: np.random.Generator,
    cfg: GroverConfig,
) -> SearchOutcome:
    """Índice de uma chave mínima (probabilidade ≥ 1/2); cada leitura de chave custa 1"""
    keys = np.asarray(values)
    if keys.size < 1:
        raise SearchError("find_min_value exige N ≥ 1")
    start = ledger.count
    best = _durr_hoyer(int(keys.size), keys, ledger, rng, cfg)
    return SearchOutcome(found=True, index=best, queries=ledger.since(start))


def boosted(
    search: Callable[[np.random.Generator], SearchOutcome],
    reps: int,
    rng: np.random.Generator,
) -> SearchOutcome:
    """Repete a busca até `reps` vezes e devolve o primeiro sucesso verificado"""
    if reps < 1:
        raise SearchError(f"reps deve ser ≥ 1 (recebido {reps})")
    total = 0
    for _ in range(reps):
        outcome = search(rng)
        total += outcome.queries
        if outcome.found:
            return SearchOutcome(found=True, index=outcome.index, queries=total)
    return SearchOutcome(found=False, index=None, queries=total)


def boosted_minimum(
    search: Callable[[np.random.Generator], SearchOutcome],
    reps: int,
    rng: np.random.Generator,
    key: Callable[[int], Any],
) -> SearchOutcome:
    """Executa `reps` buscas de mínimo independentes e mantém a menor chave"""
    if reps < 1:
        raise SearchError(f"reps deve ser ≥ 1 (recebido {reps})")
    total = 0
    best: Optional[int] = None
    for _ in range(reps):
        outcome = search(rng)
        total += outcome.queries
        if outcome.found and (best is None or key(outcome.index) < key(best)):
            best = outcome.index
    return SearchOutcome(found=best is not None, index=best, queries=total)


def statevector_trajectory(N: int, marked: Iterable[int], max_iterations: int) -> np.ndarray:
    """
    Probabilidade de medir um índice marcado após j = 0..max_iterations iterações,
    por evolução explícita do vetor de amplitudes (oráculo de fase + inversão na média).
    """
    if N > STATEVECTOR_MAX_N:
        raise SearchError(f"N={N} acima do limite do simulador ({STATEVECTOR_MAX_N})")
    if N < 1:
        raise SearchError("N deve ser ≥ 1")
    idx = np.unique(np.asarray(list(marked), dtype=np.int64))
    if idx.size and (idx[0] < 0 or idx[-1] >= N):
        raise SearchError("índice marcado fora de [0, N)")

    amplitudes = np.full(N, 1.0 / math.sqrt(N))
    probs = np.empty(max_iterations + 1)
    probs[0] = float(np.sum(amplitudes[idx] ** 2))
    for j in range(1, max_iterations + 1):
        amplitudes[idx] *= -1.0
        amplitudes = 2.0 * amplitudes.mean() - amplitudes
        probs[j] = float(np.sum(amplitudes[idx] ** 2))
    return np.clip(probs, 0.0, 1.0)


def statevector_success_prob(N: int, marked: Iterable[int], j: int) -> float:
    """Massa de probabilidade nos índices marcados após j iterações"""
    return float(statevector_trajectory(N, marked, j)[j])


__all__ = [
    "GroverConfig",
    "SearchOutcome",
    "SearchSpace",
    "make_rng",
    "success_prob_known_t",
    "grover_known_count",
    "grover_unknown_count",
    "find_min_index",
    "find_min_value",
    "boosted",
    "boosted_minimum",
    "statevector_trajectory",
    "statevector_success_prob",
    "STATEVECTOR_MAX_N",
]
