"""
Testes dos Algoritmos Quânticos de Conectividade
"""

import pytest


def _path(n):
    from src.core.graphs import MatrixGraph
    return MatrixGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _complete(n):
    from src.core.graphs import MatrixGraph
    return MatrixGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


class TestSpanningTree:
    """Testes da árvore geradora quântica"""

    def test_single_vertex(self, rng, grover_cfg):
        from src.core import QueryLedger
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import q_spanning_tree

        run = q_spanning_tree(MatrixGraph.empty(1), 0, grover_cfg, rng, QueryLedger())
        assert run.tree.order == (0,)
        assert run.events == 1

    def test_complete_graph_rate(self, rng, grover_cfg):
        """Testa S = V em K₄ com taxa ≥ 0.95"""
        from src.core import QueryLedger
        from src.services.connectivity_service import q_spanning_tree

        hits = sum(
            len(q_spanning_tree(_complete(4), 0, grover_cfg, rng, QueryLedger()).tree.order) == 4
            for _ in range(300)
        )
        assert hits / 300 >= 0.95

    def test_never_marks_unreachable(self, rng, grover_cfg):
        """Testa que a verificação impede falsos vizinhos"""
        from src.core import QueryLedger
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import q_spanning_tree

        g = MatrixGraph.from_edges(4, [(0, 1), (2, 3)])
        for _ in range(200):
            assert set(q_spanning_tree(g, 0, grover_cfg, rng, QueryLedger()).tree.order) <= {0, 1}

    def test_tree_edges_exist(self, rng, grover_cfg):
        from src.core import QueryLedger
        from src.services.connectivity_service import q_spanning_tree
        from src.services.instance_service import gen_random_matrix

        for seed in range(20):
            g = gen_random_matrix(16, 0.2, seed=seed)
            run = q_spanning_tree(g, 0, grover_cfg, rng, QueryLedger())
            assert all(g.has_edge(u, v) for u, v in run.tree.tree)
            assert run.events <= 2 * g.n
            assert run.tree.order[0] == 0

    def test_list_model(self, rng, grover_cfg):
        from src.core import QueryLedger
        from src.services.connectivity_service import q_spanning_tree
        from src.services.instance_service import gen_random_list

        g = gen_random_list(10, 3, seed=4)
        run = q_spanning_tree(g, 0, grover_cfg, rng, QueryLedger())
        assert all(v in g.neighbors(u) for u, v in run.tree.tree)

    def test_invalid_root(self, rng, grover_cfg):
        from src.core import QueryLedger
        from src.core.errors import PromiseViolation
        from src.services.connectivity_service import q_spanning_tree

        with pytest.raises(PromiseViolation):
            q_spanning_tree(_path(3), 3, grover_cfg, rng, QueryLedger())


class TestConnected:
    """Testes de q_connected e q_connected_list"""

    def test_path_rate(self, rng, grover_cfg):
        from src.services.connectivity_service import q_connected

        hits = sum(q_connected(_path(8), grover_cfg, rng).answer for _ in range(300))
        assert hits / 300 >= 0.95

    def test_empty_graph(self, rng, grover_cfg):
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import q_connected

        for _ in range(50):
            report = q_connected(MatrixGraph.empty(4), grover_cfg, rng)
            assert report.answer is False
            assert report.queries > 0

    def test_single_vertex(self, rng, grover_cfg):
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import q_connected

        assert q_connected(MatrixGraph.empty(1), grover_cfg, rng).answer

    def test_two_cycle_never_true(self, rng, grover_cfg):
        from src.services.connectivity_service import q_connected
        from src.services.instance_service import CycleSpec, gen_cycle_instance

        for seed in range(30):
            g = gen_cycle_instance(CycleSpec(n=12, variant="two-cycle", seed=seed))
            assert not q_connected(g, grover_cfg, rng).answer

    def test_list_cycle(self, rng, grover_cfg):
        from src.services.connectivity_service import q_connected_list
        from src.services.instance_service import CycleSpec, gen_cycle_instance, undirected_list_view

        g = undirected_list_view(gen_cycle_instance(CycleSpec(n=10, seed=2)))
        hits = sum(q_connected_list(g, grover_cfg, rng).answer for _ in range(100))
        assert hits >= 90

    def test_deterministic(self, grover_cfg):
        from src.core.grover import make_rng
        from src.services.connectivity_service import q_connected

        first = q_connected(_path(12), grover_cfg, make_rng(77))
        second = q_connected(_path(12), grover_cfg, make_rng(77))
        assert (first.answer, first.queries) == (second.answer, second.queries)


class TestLearning:
    """Testes do aprendizado de arestas"""

    def test_no_edges(self, rng, grover_cfg):
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import q_connected_learning

        report = q_connected_learning(MatrixGraph.empty(5), 0, grover_cfg, rng)
        assert report.answer is False and report.queries == 0

    def test_triangle(self, rng, grover_cfg):
        from src.services.connectivity_service import q_connected_learning

        g = _complete(3)
        cfg = grover_cfg.with_overrides({"learning_retry_cap": 40})
        report = q_connected_learning(g, g.edge_cell_count, cfg, rng)
        assert report.answer is True
        assert report.details["learned"] == 6

    def test_matches_ground_truth(self, rng, grover_cfg):
        """Testa resposta exata quando o limite de tentativas não é atingido"""
        from src.core import QueryLedger
        from src.core.errors import RetryCapExceeded
        from src.core.graphs import classical_connected
        from src.services.connectivity_service import q_connected_learning
        from src.services.instance_service import gen_random_matrix

        for seed in range(20):
            g = gen_random_matrix(12, 0.15, seed=seed)
            try:
                report = q_connected_learning(g, g.edge_cell_count, grover_cfg, rng)
            except RetryCapExceeded:
                continue
            assert report.answer == classical_connected(g, QueryLedger())

    def test_wrong_m(self, rng, grover_cfg):
        from src.core.errors import SearchError
        from src.services.connectivity_service import q_connected_learning

        with pytest.raises(SearchError):
            q_connected_learning(_path(4), 2, grover_cfg, rng)

    def test_budget_abort(self, rng, grover_cfg):
        """Testa abort por orçamento global com consultas registradas"""
        from src.core.errors import RetryCapExceeded
        from src.services.connectivity_service import q_connected_learning

        cfg = grover_cfg.with_overrides({"learning_budget_factor": 0.01})
        g = _complete(6)
        with pytest.raises(RetryCapExceeded) as info:
            q_connected_learning(g, g.edge_cell_count, cfg, rng)
        assert info.value.queries > 0

    def test_cost_scale(self, rng, grover_cfg):
        from src.services.connectivity_service import q_connected_learning
        from src.services.instance_service import gen_random_matrix_edges

        g = gen_random_matrix_edges(32, 64, seed=1)
        report = q_connected_learning(g, 64, grover_cfg, rng)
        assert report.queries / (32 * 64 ** 0.5) <= 4


class TestStronglyConnected:
    """Testes de conectividade forte"""

    def test_matrix_directed_cycle(self, rng, grover_cfg):
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import q_strongly_connected_matrix

        g = MatrixGraph.from_edges(10, [(i, (i + 1) % 10) for i in range(10)], directed=True)
        hits = sum(q_strongly_connected_matrix(g, grover_cfg, rng).answer for _ in range(100))
        assert hits >= 90

    def test_matrix_single_edge(self, rng, grover_cfg):
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import q_strongly_connected_matrix

        g = MatrixGraph.from_edges(2, [(0, 1)], directed=True)
        for _ in range(20):
            assert not q_strongly_connected_matrix(g, grover_cfg, rng).answer

    def test_matrix_single_vertex(self, rng, grover_cfg):
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import q_strongly_connected_matrix

        assert q_strongly_connected_matrix(MatrixGraph.empty(1, directed=True), grover_cfg, rng).answer

    def test_list_parity_odd(self, rng, grover_cfg):
        from src.services.connectivity_service import q_strongly_connected_list
        from src.services.instance_service import ParitySpec, gen_parity_graph

        g = gen_parity_graph(ParitySpec("1011"))
        hits = sum(q_strongly_connected_list(g, grover_cfg, rng).answer for _ in range(100))
        assert hits >= 90

    def test_list_gadget_even_never_true(self, rng, grover_cfg):
        from src.services.connectivity_service import q_strongly_connected_list
        from src.services.instance_service import GadgetSpec, gen_origin_gadget

        for seed in range(30):
            g = gen_origin_gadget(GadgetSpec("0110", 3, seed=seed))
            assert not q_strongly_connected_list(g, grover_cfg, rng).answer

    def test_list_backward_edges_genuine(self, rng, grover_cfg):
        from src.services.connectivity_service import q_strongly_connected_list
        from src.services.instance_service import GadgetSpec, gen_origin_gadget

        g = gen_origin_gadget(GadgetSpec("111", 3, seed=5))
        report = q_strongly_connected_list(g, grover_cfg, rng)
        if report.backward_edges is not None:
            for v, target in report.backward_edges.items():
                assert target in g.neighbors(v)
            assert report.details["stage1_queries"] + report.details["stage2_queries"] == report.queries


class TestReductionLemma:
    """Testes do lema G ⇔ G'(V, A ∪ B)"""

    def test_random_lists(self):
        """Testa o lema em listas aleatórias k ∈ {2, 3, 4}, n ≤ 40"""
        from src.core.grover import make_rng
        from src.services.connectivity_service import reduction_lemma_check
        from src.services.instance_service import gen_random_list

        rng = make_rng(2024)
        for _ in range(200):
            k = int(rng.integers(2, 5))
            n = int(rng.integers(k + 1, 41))
            assert reduction_lemma_check(gen_random_list(n, k, seed=int(rng.integers(2 ** 31)))) is not False

    def test_strongly_connected_cycle(self):
        from src.core.graphs import ListGraph
        from src.services.connectivity_service import reduction_lemma_check

        assert reduction_lemma_check(ListGraph.from_rows([[1], [2], [3], [0]])) is True

    def test_not_strongly_connected(self):
        from src.core.graphs import MatrixGraph
        from src.services.connectivity_service import reduction_lemma_check

        g = MatrixGraph.from_edges(3, [(0, 1), (1, 2)], directed=True)
        assert reduction_lemma_check(g) is True

    def test_partial_tree_skips(self):
        """Testa sinal de descarte quando A não cobre o alcançável"""
        from src.core.graphs import DfsResult, MatrixGraph
        from src.services.connectivity_service import reduction_lemma_check

        g = MatrixGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)], directed=True)
        assert reduction_lemma_check(g, DfsResult(tree=((0, 1),), order=(0, 1))) is None

    def test_exact_backward_edges(self):
        from src.core.graphs import ListGraph, classical_dfs
        from src.services.connectivity_service import exact_backward_edges

        g = ListGraph.from_rows([[1, 2], [2, 0], [0, 1]])
        backward = exact_backward_edges(g, classical_dfs(g, 0))
        assert backward == {0: 1, 1: 0, 2: 0}
