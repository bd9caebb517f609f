"""
Testes dos Geradores de Instâncias
"""

import numpy as np
import pytest


class TestParityGraph:
    """Testes da redução de paridade"""

    def test_all_zeros_two_cycles(self):
        from src.services.instance_service import ParitySpec, count_cycles, gen_parity_graph

        assert count_cycles(gen_parity_graph(ParitySpec("0000"))) == 2

    def test_single_crossing(self):
        from src.services.instance_service import ParitySpec, count_cycles, gen_parity_graph

        g = gen_parity_graph(ParitySpec("1"))
        assert g.n == 2 and g.k == 1
        assert count_cycles(g) == 1

    def test_exhaustive_small(self):
        """Testa ciclos = 2 − parity(x) para p ≤ 8"""
        from src.services.instance_service import ParitySpec, all_bitstrings, count_cycles, gen_parity_graph, parity

        for p in range(1, 9):
            for bits in all_bitstrings(p):
                assert count_cycles(gen_parity_graph(ParitySpec(bits))) == 2 - parity(bits)

    @pytest.mark.slow
    def test_exhaustive_p12(self):
        from src.services.instance_service import ParitySpec, all_bitstrings, count_cycles, gen_parity_graph, parity

        for bits in all_bitstrings(12):
            assert count_cycles(gen_parity_graph(ParitySpec(bits))) == 2 - parity(bits)

    def test_empty_spec(self):
        from src.core.errors import PromiseViolation
        from src.services.instance_service import ParitySpec

        with pytest.raises(PromiseViolation):
            ParitySpec("")

    def test_invalid_bit(self):
        from src.core.errors import PromiseViolation
        from src.services.instance_service import ParitySpec

        with pytest.raises(PromiseViolation):
            ParitySpec("012")


class TestOriginGadget:
    """Testes do gadget de origem"""

    def test_strong_iff_odd_parity(self):
        from src.core import QueryLedger
        from src.core.graphs import classical_strongly_connected
        from src.services.instance_service import GadgetSpec, all_bitstrings, gen_origin_gadget, parity

        for p in range(1, 6):
            for k in (2, 3, 4):
                for bits in all_bitstrings(p):
                    g = gen_origin_gadget(GadgetSpec(bits, k, seed=p * 10 + k))
                    assert classical_strongly_connected(g, QueryLedger()) == bool(parity(bits))

    def test_shape_and_promise(self):
        """Testa n = 2p + k, grau k e vizinhos distintos em 200 sorteios"""
        from src.core.graphs import validate_list
        from src.services.instance_service import GadgetSpec, gen_origin_gadget

        rng = np.random.default_rng(9)
        for _ in range(200):
            p = int(rng.integers(2, 9))
            k = int(rng.integers(2, 7))
            bits = tuple(int(b) for b in rng.integers(0, 2, size=p))
            g = gen_origin_gadget(GadgetSpec(bits, k, seed=int(rng.integers(1000))))
            assert (g.n, g.k) == (2 * p + k, k)
            assert validate_list(g)

    def test_fixed_slots(self):
        """Testa posições das arestas para frente e da clique"""
        from src.services.instance_service import GadgetSpec, gen_origin_gadget

        g = gen_origin_gadget(GadgetSpec("01", 3, slots=((0, 2), (1, 1))))
        # p=2, clique em 4, 5, 6
        assert g.neighbors(0) == (2, 5, 6)
        assert g.neighbors(1) == (4, 5, 3)
        assert g.neighbors(2) == (4, 1, 6)
        assert g.neighbors(3) == (4, 0, 6)
        assert g.neighbors(4) == (0, 5, 6)
        assert g.neighbors(6) == (0, 4, 5)

    def test_slot_out_of_range(self):
        from src.core.errors import PromiseViolation
        from src.services.instance_service import GadgetSpec

        with pytest.raises(PromiseViolation):
            GadgetSpec("1", 2, slots=((0, 2),))

    def test_k_too_small(self):
        from src.core.errors import PromiseViolation
        from src.services.instance_service import GadgetSpec

        with pytest.raises(PromiseViolation):
            GadgetSpec("1", 1)

    def test_deterministic_slots(self):
        from src.services.instance_service import GadgetSpec, gen_origin_gadget

        a = gen_origin_gadget(GadgetSpec("0110", 4, seed=3))
        b = gen_origin_gadget(GadgetSpec("0110", 4, seed=3))
        assert a == b


class TestCycles:
    """Testes das instâncias de ciclo"""

    def test_one_cycle_connected(self):
        from src.core import QueryLedger
        from src.core.graphs import classical_connected
        from src.services.instance_service import CycleSpec, gen_cycle_instance

        assert classical_connected(gen_cycle_instance(CycleSpec(n=6)), QueryLedger())

    def test_two_cycle_disconnected(self):
        from src.core import QueryLedger
        from src.core.graphs import classical_connected
        from src.services.instance_service import CycleSpec, cycle_lengths, gen_cycle_instance

        g = gen_cycle_instance(CycleSpec(n=6, variant="two-cycle", lengths=(3, 3)))
        assert cycle_lengths(g) == [3, 3]
        assert not classical_connected(g, QueryLedger())

    def test_two_regular(self):
        from src.services.instance_service import CycleSpec, cycle_lengths, gen_cycle_instance, two_cycle_range

        for seed in range(40):
            for variant in ("one-cycle", "two-cycle"):
                g = gen_cycle_instance(CycleSpec(n=15, variant=variant, seed=seed))
                assert np.all(g.cells.sum(axis=1) == 2)
                lengths = cycle_lengths(g)
                lo, hi = two_cycle_range(15)
                if variant == "two-cycle":
                    assert len(lengths) == 2 and all(lo <= x <= hi for x in lengths)
                else:
                    assert lengths == [15]

    def test_invalid_split(self):
        from src.core.errors import PromiseViolation
        from src.services.instance_service import CycleSpec

        with pytest.raises(PromiseViolation):
            CycleSpec(n=9, variant="two-cycle", lengths=(2, 7))
        with pytest.raises(PromiseViolation):
            CycleSpec(n=5, variant="two-cycle")

    def test_two_swap_canonical(self):
        """Testa a troca canônica em 0-1-2-3-4-5"""
        from src.core.graphs import MatrixGraph
        from src.services.instance_service import cycle_lengths, cycle_order, two_swap

        ring = MatrixGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        result = two_swap(ring, 0, 1, 4, 3)
        assert cycle_lengths(result) == [3, 3]
        assert set(cycle_order(result, 1)) == {1, 2, 3}
        assert set(cycle_order(result, 0)) == {0, 4, 5}

    def test_two_swap_rejects_shared_vertex(self):
        from src.core.errors import PromiseViolation
        from src.core.graphs import MatrixGraph
        from src.services.instance_service import two_swap

        ring = MatrixGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        with pytest.raises(PromiseViolation):
            two_swap(ring, 0, 1, 1, 2)

    def test_two_swap_rejects_orientation(self):
        from src.core.errors import PromiseViolation
        from src.core.graphs import MatrixGraph
        from src.services.instance_service import two_swap

        ring = MatrixGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        with pytest.raises(PromiseViolation):
            two_swap(ring, 0, 1, 3, 4)

    def test_swap_inverse(self):
        """Testa troca seguida da troca inversa"""
        from src.core.graphs import MatrixGraph
        from src.services.instance_service import exchange_edges, two_swap

        ring = MatrixGraph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)])
        split = two_swap(ring, 0, 1, 5, 4)
        assert exchange_edges(split, 0, 5, 1, 4) == ring

    def test_random_swaps_two_cycles(self):
        from src.services.instance_service import CycleSpec, cycle_lengths, cycle_order, gen_cycle_instance, two_swap

        rng = np.random.default_rng(4)
        for _ in range(50):
            n = int(rng.integers(6, 30))
            g = gen_cycle_instance(CycleSpec(n=n, seed=int(rng.integers(10_000))))
            ring = cycle_order(g)
            s = int(rng.integers(3, n - 2))
            lengths = cycle_lengths(two_swap(g, ring[0], ring[1], ring[s + 1], ring[s]))
            assert lengths == sorted([s, n - s])


class TestCountCycles:
    """Testes da contagem de ciclos de permutação"""

    def test_swap_pairs(self):
        from src.core.graphs import ListGraph
        from src.services.instance_service import count_cycles

        assert count_cycles(ListGraph.from_rows([[1], [0], [3], [2]])) == 2

    def test_single_cycle(self):
        from src.core.graphs import ListGraph
        from src.services.instance_service import count_cycles

        assert count_cycles(ListGraph.from_rows([[1], [2], [3], [4], [0]])) == 1

    def test_non_permutation(self):
        from src.core.errors import PromiseViolation
        from src.core.graphs import ListGraph
        from src.services.instance_service import count_cycles

        with pytest.raises(PromiseViolation):
            count_cycles(ListGraph.from_rows([[1], [0], [0]]))


class TestRandomCorpora:
    """Testes dos corpora aleatórios"""

    def test_edge_prob_extremes(self):
        from src.services.instance_service import gen_random_matrix

        full = gen_random_matrix(6, 1.0, seed=1)
        assert full.edge_cell_count == 30
        assert gen_random_matrix(6, 0.0, seed=1).edge_cell_count == 0

    def test_directed_symmetry(self):
        from src.core.graphs import validate_matrix
        from src.services.instance_service import gen_random_matrix

        assert validate_matrix(gen_random_matrix(20, 0.4, seed=3), undirected=True)
        assert validate_matrix(gen_random_matrix(20, 0.4, directed=True, seed=3), undirected=False)

    def test_exact_edge_count(self):
        from src.core.errors import PromiseViolation
        from src.services.instance_service import gen_random_matrix_edges

        assert gen_random_matrix_edges(10, 24, seed=2).edge_cell_count == 24
        assert gen_random_matrix_edges(10, 7, directed=True, seed=2).edge_cell_count == 7
        with pytest.raises(PromiseViolation):
            gen_random_matrix_edges(10, 7, seed=2)

    def test_random_list_valid(self):
        from src.core.graphs import validate_list
        from src.services.instance_service import gen_random_list

        for seed in range(1000):
            assert validate_list(gen_random_list(8, 3, seed=seed))

    def test_random_list_k_too_large(self):
        from src.core.errors import PromiseViolation
        from src.services.instance_service import gen_random_list

        with pytest.raises(PromiseViolation):
            gen_random_list(4, 4)

    def test_undirected_list_view_requires_regular(self):
        from src.core.errors import PromiseViolation
        from src.core.graphs import MatrixGraph
        from src.services.instance_service import undirected_list_view

        with pytest.raises(PromiseViolation):
            undirected_list_view(MatrixGraph.from_edges(3, [(0, 1)]))
