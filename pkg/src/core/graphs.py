"""
Representações de Grafos e Algoritmos Clássicos de Referência
Modelos de consulta por matriz de adjacência e por lista de vizinhos, validação das
promessas de entrada e algoritmos clássicos exatos usados como verdade de referência.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.errors import PromiseViolation
from src.core.ledger import QueryLedger

Edge = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class MatrixGraph:
    """Grafo no modelo de matriz: M[i][j] = 1 sse (v_i, v_j) ∈ E"""
    cells: np.ndarray
    directed: bool = False

    def __post_init__(self):
        cells = np.array(self.cells, dtype=bool)
        if cells.ndim != 2:
            raise PromiseViolation(f"matriz de adjacência deve ser 2-D (recebido ndim={cells.ndim})")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], directed: bool = False) -> "MatrixGraph":
        return cls(np.array(rows, dtype=bool), directed=directed)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], directed: bool = False) -> "MatrixGraph":
        """Constrói a matriz a partir de arestas; no caso não direcionado marca as duas células"""
        cells = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            cells[u, v] = True
            if not directed:
                cells[v, u] = True
        return cls(cells, directed=directed)

    @classmethod
    def empty(cls, n: int, directed: bool = False) -> "MatrixGraph":
        return cls(np.zeros((n, n), dtype=bool), directed=directed)

    @property
    def n(self) -> int:
        return int(self.cells.shape[0])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.cells[u, v])

    def edge_cells(self) -> List[Edge]:
        """Lista de células (i, j) com M_ij = 1, em ordem de linha"""
        return [(int(i), int(j)) for i, j in np.argwhere(self.cells)]

    @property
    def edge_cell_count(self) -> int:
        return int(np.count_nonzero(self.cells))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGraph):
            return NotImplemented
        return self.directed == other.directed and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.directed, self.cells.tobytes(), self.cells.shape))


@dataclass(frozen=True, eq=False)
class ListGraph:
    """Grafo no modelo de lista: nbr[u][i] é o i-ésimo vizinho de saída de u (grau de saída k)"""
    nbr: np.ndarray
    directed: bool = True

    def __post_init__(self):
        nbr = np.array(self.nbr, dtype=np.int64)
        if nbr.ndim != 2:
            raise PromiseViolation(f"tabela de vizinhos deve ser n×k (recebido ndim={nbr.ndim})")
        if nbr.shape[1] < 1:
            raise PromiseViolation("grau de saída k ≥ 1 obrigatório no modelo de lista")
        nbr.setflags(write=False)
        object.__setattr__(self, "nbr", nbr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], directed: bool = True) -> "ListGraph":
        return cls(np.array(rows, dtype=np.int64), directed=directed)

    @property
    def n(self) -> int:
        return int(self.nbr.shape[0])

    @property
    def k(self) -> int:
        return int(self.nbr.shape[1])

    def neighbors(self, u: int) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.nbr[u])

    def edge_cells(self) -> List[Edge]:
        return [(u, int(v)) for u in range(self.n) for v in self.nbr[u]]

    def to_matrix(self) -> MatrixGraph:
        """Matriz de adjacência equivalente (sem custo de consulta; uso clássico)"""
        return MatrixGraph.from_edges(self.n, self.edge_cells(), directed=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ListGraph):
            return NotImplemented
        return self.directed == other.directed and np.array_equal(self.nbr, other.nbr)

    def __hash__(self) -> int:
        return hash((self.directed, self.nbr.tobytes(), self.nbr.shape))


Graph = Union[MatrixGraph, ListGraph]


@dataclass
class GraphValidationResult:
    """Resultado da validação de uma promessa de entrada"""
    is_valid: bool
    violation: Optional[Tuple[int, ...]] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.is_valid


@dataclass(frozen=True)
class DfsResult:
    """Árvore de busca em profundidade: arestas-pai, ordem de marcação e conjunto marcado"""
    tree: Tuple[Edge, ...]
    order: Tuple[int, ...]

    @cached_property
    def marked(self) -> FrozenSet[int]:
        return frozenset(self.order)

    @cached_property
    def parent(self) -> Dict[int, int]:
        return {child: par for par, child in self.tree}

    @cached_property
    def rank(self) -> Dict[int, int]:
        """Índice de marcação de cada vértice marcado"""
        return {v: idx for idx, v in enumerate(self.order)}

    @property
    def root(self) -> int:
        return self.order[0]


# ============================================================================
# VALIDAÇÃO
# ============================================================================

def validate_matrix(g: MatrixGraph, undirected: bool) -> GraphValidationResult:
    """Valida forma quadrada, ausência de laços e (se não direcionado) simetria"""
    cells = g.cells
    rows, cols = cells.shape
    if rows != cols:
        return GraphValidationResult(False, (rows, cols), f"matriz não é quadrada: {rows}×{cols}")

    loops = np.flatnonzero(np.diagonal(cells))
    if loops.size:
        i = int(loops[0])
        return GraphValidationResult(False, (i, i), f"laço em ({i},{i})")

    if undirected:
        asym = np.argwhere(cells != cells.T)
        if asym.size:
            i, j = (int(x) for x in asym[0])
            return GraphValidationResult(False, (i, j), f"assimetria em ({i},{j})")

    return GraphValidationResult(True)


def validate_list(
    g: ListGraph,
    undirected: bool = False,
    allow_self_loops: bool = False,
) -> GraphValidationResult:
    """Valida faixa das entradas, a promessa de grafo simples e (opcional) a simetria não direcionada"""
    n, k = g.n, g.k
    nbr = g.nbr

    bad = np.argwhere((nbr < 0) | (nbr >= n))
    if bad.size:
        u, i = (int(x) for x in bad[0])
        return GraphValidationResult(False, (u, i), f"out of range: nbr[{u}][{i}]={int(nbr[u, i])} fora de [0, {n})")

    for u in range(n):
        row = nbr[u]
        if len(np.unique(row)) == k:
            continue
        for i in range(k):
            for j in range(i + 1, k):
                if row[i] == row[j]:
                    return GraphValidationResult(
                        False, (u, i, j), f"vizinho repetido: nbr[{u}][{i}] = nbr[{u}][{j}] = {int(row[i])}"
                    )

    if not allow_self_loops:
        loops = np.argwhere(nbr == np.arange(n)[:, None])
        if loops.size:
            u, i = (int(x) for x in loops[0])
            return GraphValidationResult(False, (u, i), f"laço: nbr[{u}][{i}] = {u}")

    if undirected:
        adjacency = [set(int(v) for v in nbr[u]) for u in range(n)]
        for u in range(n):
            for v in sorted(adjacency[u]):
                if u not in adjacency[v]:
                    return GraphValidationResult(False, (u, v), f"aresta ({u},{v}) sem reversa")

    return GraphValidationResult(True)


def validate_graph(g: Graph, undirected: Optional[bool] = None) -> GraphValidationResult:
    """Despacha para a validação do modelo correspondente"""
    if isinstance(g, MatrixGraph):
        return validate_matrix(g, undirected=not g.directed if undirected is None else undirected)
    return validate_list(g, undirected=bool(undirected))


def require_valid(result: GraphValidationResult):
    if not result.is_valid:
        raise PromiseViolation(result.message)


# ============================================================================
# BASELINES CLÁSSICOS (cobram 1 unidade por célula/slot lido)
# ============================================================================

def _matrix_reach(g: MatrixGraph, root: int, ledger: QueryLedger, reverse: bool) -> int:
    """BFS lendo linhas (ou colunas) completas; devolve o número de vértices alcançados"""
    n = g.n
    seen = np.zeros(n, dtype=bool)
    seen[root] = True
    reached = 1
    queue = deque([root])
    while queue and reached < n:
        u = queue.popleft()
        line = g.cells[:, u] if reverse else g.cells[u]
        ledger.charge(n)
        fresh = np.flatnonzero(line & ~seen)
        seen[fresh] = True
        reached += int(fresh.size)
        queue.extend(int(v) for v in fresh)
    return reached


def classical_connected(g: MatrixGraph, ledger: QueryLedger) -> bool:
    """Conectividade do grafo não direcionado por BFS a partir de v_0"""
    if g.n <= 1:
        return True
    if not g.directed:
        return _matrix_reach(g, 0, ledger, reverse=False) == g.n

    # conectividade fraca: cada vértice expandido lê linha e coluna
    sym = MatrixGraph(g.cells | g.cells.T, directed=False)
    scratch = QueryLedger()
    reached = _matrix_reach(sym, 0, scratch, reverse=False)
    ledger.charge(2 * scratch.count)
    return reached == g.n


def _list_reach(adjacency: Sequence[Sequence[int]], root: int) -> int:
    n = len(adjacency)
    seen = [False] * n
    seen[root] = True
    reached = 1
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if not seen[v]:
                seen[v] = True
                reached += 1
                queue.append(v)
    return reached


def classical_strongly_connected(g: Graph, ledger: QueryLedger) -> bool:
    """
    Conectividade forte pela definição em duas condições: v_0 alcança todos e
    todos alcançam v_0 (BFS em G e em G transposto).
    """
    n = g.n
    if n <= 1:
        return True

    if isinstance(g, MatrixGraph):
        if _matrix_reach(g, 0, ledger, reverse=False) < n:
            return False
        return _matrix_reach(g, 0, ledger, reverse=True) == n

    # modelo de lista: a reversa exige ler todos os slots
    ledger.charge(n * g.k)
    forward = [g.neighbors(u) for u in range(n)]
    if _list_reach(forward, 0) < n:
        return False
    backward: List[List[int]] = [[] for _ in range(n)]
    for u, targets in enumerate(forward):
        for v in targets:
            backward[v].append(u)
    return _list_reach(backward, 0) == n


def strongly_connected_edges(n: int, edges: Iterable[Edge]) -> bool:
    """Conectividade forte de G(V, edges) sem custo de consulta"""
    if n <= 1:
        return True
    forward: List[List[int]] = [[] for _ in range(n)]
    backward: List[List[int]] = [[] for _ in range(n)]
    for u, v in edges:
        forward[u].append(v)
        backward[v].append(u)
    return _list_reach(forward, 0) == n and _list_reach(backward, 0) == n


def reachable_set(g: Graph, root: int) -> FrozenSet[int]:
    """Conjunto alcançável a partir de root (sem custo de consulta)"""
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in out_neighbors(g, u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


def out_neighbors(g: Graph, u: int) -> List[int]:
    """Vizinhos de saída de u em ordem crescente de índice"""
    if isinstance(g, MatrixGraph):
        return [int(v) for v in np.flatnonzero(g.cells[u])]
    return sorted(set(g.neighbors(u)))


def classical_dfs(g: Graph, root: int = 0) -> DfsResult:
    """
    Busca em profundidade determinística: o topo da pilha sempre toma o vizinho
    não marcado de menor índice; sem vizinho livre, desempilha.
    """
    if not 0 <= root < g.n:
        raise PromiseViolation(f"raiz {root} fora de [0, {g.n})")

    adjacency: Dict[int, List[int]] = {}
    cursor: Dict[int, int] = {}
    marked = {root}
    order = [root]
    tree: List[Edge] = []
    stack = [root]

    while stack:
        u = stack[-1]
        if u not in adjacency:
            adjacency[u] = out_neighbors(g, u)
            cursor[u] = 0
        targets = adjacency[u]
        pos = cursor[u]
        while pos < len(targets) and targets[pos] in marked:
            pos += 1
        cursor[u] = pos
        if pos < len(targets):
            v = targets[pos]
            marked.add(v)
            order.append(v)
            tree.append((u, v))
            stack.append(v)
        else:
            stack.pop()

    return DfsResult(tree=tuple(tree), order=tuple(order))


def subtree_contains(result: DfsResult, ancestor: int, descendant: int) -> bool:
    """Verdadeiro sse descendant está na subárvore de ancestor"""
    for v in (ancestor, descendant):
        if v not in result.marked:
            raise PromiseViolation(f"vértice {v} não foi marcado pela busca")
    parent = result.parent
    v = descendant
    while True:
        if v == ancestor:
            return True
        if v not in parent:
            return False
        v = parent[v]


def transpose(g: MatrixGraph) -> MatrixGraph:
    """Matriz transposta (arestas invertidas)"""
    return MatrixGraph(g.cells.T.copy(), directed=g.directed)
