"""
Serviço de Conectividade Quântica
Algoritmos de busca em profundidade com Grover (matriz e lista), aprendizagem da
matriz de adjacência e conectividade forte em duas etapas, todos com contagem de
consultas no QueryLedger.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from src.core.config import GroverConfig
from src.core.errors import PromiseViolation, RetryCapExceeded
from src.core.graphs import (
    DfsResult,
    Edge,
    Graph,
    ListGraph,
    MatrixGraph,
    classical_connected,
    classical_dfs,
    classical_strongly_connected,
    out_neighbors,
    reachable_set,
    strongly_connected_edges,
    transpose,
)
from src.core.grover import (
    SearchSpace,
    boosted,
    boosted_minimum,
    find_min_value,
    grover_known_count,
    grover_unknown_count,
)
from src.core.ledger import QueryLedger
from src.core.log import get_logger

logger = get_logger(__name__)

# vértice -> vizinho de saída com menor índice de marcação
BackwardEdges = Dict[int, int]


@dataclass
class AlgoReport:
    """Decisão de um algoritmo e seu custo em consultas"""
    answer: bool
    queries: int
    tree: Optional[DfsResult] = None
    correct: Optional[bool] = None
    backward_edges: Optional[BackwardEdges] = None
    details: Dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class SpanningTreeRun:
    """Árvore produzida pela busca de árvore geradora com o custo e o número de eventos de pilha"""
    tree: DfsResult
    queries: int
    events: int


def _neighbor_space(g: Graph, u: int, in_tree: np.ndarray, ledger: QueryLedger) -> SearchSpace:
    """Espaço de busca dos vizinhos livres de u (V no modelo de matriz, slots no de lista)"""
    if isinstance(g, MatrixGraph):
        row = g.cells[u]
        return SearchSpace(
            g.n,
            lambda v: bool(row[v]) and not in_tree[v],
            ledger,
            enumerate_marked=lambda: np.flatnonzero(row & ~in_tree),
        )
    slots = g.nbr[u]
    return SearchSpace(
        g.k,
        lambda i: not in_tree[slots[i]],
        ledger,
        enumerate_marked=lambda: np.flatnonzero(~in_tree[slots]),
    )


def q_spanning_tree(
    g: Graph,
    root: int,
    cfg: GroverConfig,
    rng: np.random.Generator,
    ledger: QueryLedger,
) -> SpanningTreeRun:
    """
    Busca em profundidade com Grover: o topo da pilha procura um vizinho não marcado
    (busca BBHT com boosting); sucesso empilha, falha desempilha.
    """
    n = g.n
    if not 0 <= root < n:
        raise PromiseViolation(f"raiz {root} fora de [0, {n})")

    start = ledger.count
    reps = cfg.repetitions(n)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[root] = True
    order: List[int] = [root]
    tree: List[Edge] = []
    stack: List[int] = [root]
    events = 0

    while stack:
        u = stack[-1]
        space = _neighbor_space(g, u, in_tree, ledger)
        outcome = boosted(lambda r: grover_unknown_count(space, r, cfg), reps, rng)
        if outcome.found:
            v = int(outcome.index) if isinstance(g, MatrixGraph) else int(g.nbr[u, outcome.index])
            in_tree[v] = True
            order.append(v)
            tree.append((u, v))
            stack.append(v)
        else:
            stack.pop()
        events += 1

    if events > 2 * n:
        raise RuntimeError(f"árvore geradora excedeu 2n eventos de pilha ({events} > {2 * n})")

    queries = ledger.since(start)
    logger.debug("spanning_tree_done", n=n, root=root, marked=len(order), events=events, queries=queries)
    return SpanningTreeRun(DfsResult(tree=tuple(tree), order=tuple(order)), queries, events)


def q_connected(g: MatrixGraph, cfg: GroverConfig, rng: np.random.Generator) -> AlgoReport:
    """Conectividade no modelo de matriz: S = V após a árvore geradora a partir de v_0"""
    ledger = QueryLedger()
    run = q_spanning_tree(g, 0, cfg, rng, ledger)
    return AlgoReport(
        answer=len(run.tree.order) == g.n,
        queries=ledger.count,
        tree=run.tree,
        details={"events": run.events},
    )


def q_connected_list(g: ListGraph, cfg: GroverConfig, rng: np.random.Generator) -> AlgoReport:
    """Conectividade no modelo de lista (grafo não direcionado dado por f(u, i))"""
    ledger = QueryLedger()
    run = q_spanning_tree(g, 0, cfg, rng, ledger)
    return AlgoReport(
        answer=len(run.tree.order) == g.n,
        queries=ledger.count,
        tree=run.tree,
        details={"events": run.events},
    )


def q_connected_learning(
    g: MatrixGraph,
    m: int,
    cfg: GroverConfig,
    rng: np.random.Generator,
) -> AlgoReport:
    """
    Aprende as m células de aresta com Grover de contagem conhecida (t = m, ..., 1) e
    decide a conectividade classicamente sobre a lista aprendida.

    Raises:
        RetryCapExceeded: limite de tentativas por t (ou orçamento global) excedido
        SearchError: m diferente do número real de células de aresta
    """
    n = g.n
    if m < 0:
        raise PromiseViolation(f"m negativo: {m}")
    if m == 0:
        return AlgoReport(answer=n <= 1, queries=0, details={"learned": 0})

    ledger = QueryLedger()
    cells = g.cells.ravel()
    learned = np.zeros(n * n, dtype=bool)
    budget = None
    if cfg.learning_budget_factor is not None:
        budget = cfg.learning_budget_factor * n * math.sqrt(m)

    edges: List[Edge] = []
    for t in range(m, 0, -1):
        space = SearchSpace(
            n * n,
            lambda c: bool(cells[c]) and not learned[c],
            ledger,
            enumerate_marked=lambda: np.flatnonzero(cells & ~learned),
        )
        for _ in range(cfg.learning_retry_cap):
            outcome = grover_known_count(space, t, rng)
            if outcome.found:
                break
        else:
            raise RetryCapExceeded(
                f"{cfg.learning_retry_cap} tentativas sem sucesso com t={t}", queries=ledger.count
            )

        cell = int(outcome.index)
        learned[cell] = True
        edges.append(divmod(cell, n))
        if budget is not None and ledger.count > budget:
            raise RetryCapExceeded(
                f"orçamento de {budget:.0f} consultas excedido com t={t}", queries=ledger.count
            )

    learned_graph = MatrixGraph.from_edges(n, edges, directed=g.directed)
    answer = classical_connected(learned_graph, QueryLedger())
    logger.debug("learning_done", n=n, m=m, queries=ledger.count, answer=answer)
    return AlgoReport(answer=answer, queries=ledger.count, details={"learned": len(edges)})


def q_strongly_connected_matrix(g: MatrixGraph, cfg: GroverConfig, rng: np.random.Generator) -> AlgoReport:
    """Conectividade forte no modelo de matriz: árvore geradora em G e na transposta"""
    ledger = QueryLedger()
    forward = q_spanning_tree(g, 0, cfg, rng, ledger)
    if len(forward.tree.order) < g.n:
        return AlgoReport(answer=False, queries=ledger.count, tree=forward.tree)

    backward = q_spanning_tree(transpose(g), 0, cfg, rng, ledger)
    return AlgoReport(
        answer=len(backward.tree.order) == g.n,
        queries=ledger.count,
        tree=forward.tree,
        details={"events": forward.events + backward.events},
    )


def q_strongly_connected_list(g: ListGraph, cfg: GroverConfig, rng: np.random.Generator) -> AlgoReport:
    """
    Conectividade forte no modelo de lista em duas etapas.

    Etapa 1 constrói a árvore A com a busca de árvore geradora. Etapa 2 encontra, para cada
    vértice, o vizinho de menor índice de marcação (busca de mínimo com boosting),
    formando B. A decisão final sobre G'(V, A ∪ B) não consome consultas.
    """
    n = g.n
    ledger = QueryLedger()
    stage1 = q_spanning_tree(g, 0, cfg, rng, ledger)
    dfs = stage1.tree
    if len(dfs.order) < n:
        return AlgoReport(answer=False, queries=ledger.count, tree=dfs)

    rank = np.empty(n, dtype=np.int64)
    rank[list(dfs.order)] = np.arange(n)
    reps = cfg.repetitions(n)

    backward: BackwardEdges = {}
    for v in range(n):
        slot_keys = rank[g.nbr[v]]
        outcome = boosted_minimum(
            lambda r: find_min_value(slot_keys, ledger, r, cfg),
            reps,
            rng,
            key=lambda i: slot_keys[i],
        )
        backward[v] = int(g.nbr[v, outcome.index])

    stage1_queries = stage1.queries
    answer = strongly_connected_edges(n, list(dfs.tree) + list(backward.items()))
    logger.debug(
        "strong_connectivity_done",
        n=n, k=g.k, stage1=stage1_queries, stage2=ledger.count - stage1_queries, answer=answer,
    )
    return AlgoReport(
        answer=answer,
        queries=ledger.count,
        tree=dfs,
        backward_edges=backward,
        details={"stage1_queries": stage1_queries, "stage2_queries": ledger.count - stage1_queries},
    )


def exact_backward_edges(g: Graph, dfs: DfsResult) -> BackwardEdges:
    """
    B exato: para cada vértice, o vizinho de saída com menor índice de marcação.
    Vértices não marcados recebem chave n + id; vértices sem vizinhos ficam de fora.
    """
    n = g.n
    rank = dfs.rank
    backward: BackwardEdges = {}
    for u in range(n):
        targets = out_neighbors(g, u)
        if targets:
            backward[u] = min(targets, key=lambda v: rank.get(v, n + v))
    return backward


def reduction_lemma_check(g: Graph, dfs: Optional[DfsResult] = None) -> Optional[bool]:
    """
    Compara a conectividade forte de G com a de G'(V, A ∪ B).
    Retorna None quando A não cobre o conjunto alcançável a partir da raiz.
    """
    dfs = dfs or classical_dfs(g, 0)
    if dfs.marked != reachable_set(g, dfs.root):
        return None

    backward = exact_backward_edges(g, dfs)
    whole = classical_strongly_connected(g, QueryLedger())
    reduced = strongly_connected_edges(g.n, list(dfs.tree) + list(backward.items()))
    return whole == reduced
