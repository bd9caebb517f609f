"""
Testes do Limite de Adversário
"""

import math

import numpy as np
import pytest


class TestRelation:
    """Testes da relação e do limite genérico"""

    def test_single_pair(self):
        from src.services.adversary_service import Relation, adversary_bound

        params = adversary_bound(Relation(np.array([[1, 0]]), np.array([[0, 0]]), np.array([[0, 0]])))
        assert (params.m, params.m_prime, params.l_max) == (1, 1, 1)
        assert params.bound == pytest.approx(1.0)

    def test_parity_four_bits(self):
        from src.services.adversary_service import adversary_bound, parity_relation

        params = adversary_bound(parity_relation(4))
        assert (params.m, params.m_prime, params.l_max) == (4, 4, 1)
        assert params.bound == pytest.approx(4.0)

    def test_parity_bound_is_n(self):
        from src.services.adversary_service import adversary_bound, parity_relation

        for n in range(2, 11):
            assert math.isclose(adversary_bound(parity_relation(n)).bound, n)

    def test_transpose_invariant(self):
        """Testa simetria do limite ao trocar X e Y"""
        from src.services.adversary_service import adversary_bound, materialize_gadget_relation

        rel = materialize_gadget_relation(2, 2)
        assert adversary_bound(rel).bound == pytest.approx(adversary_bound(rel.transposed()).bound)

    def test_empty_relation(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import Relation

        with pytest.raises(RelationError):
            Relation(np.array([[1]]), np.array([[0]]), np.empty((0, 2), dtype=np.int64))

    def test_identical_pair(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import Relation

        with pytest.raises(RelationError):
            Relation(np.array([[1, 0]]), np.array([[1, 0]]), np.array([[0, 0]]))

    def test_overlapping_sides(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import Relation

        with pytest.raises(RelationError):
            Relation(np.array([[1, 0], [0, 0]]), np.array([[0, 0]]), np.array([[0, 0]]))

    def test_index_out_of_range(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import Relation

        with pytest.raises(RelationError):
            Relation(np.array([[1]]), np.array([[0]]), np.array([[0, 3]]))

    def test_uncovered_string(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import Relation, adversary_bound

        rel = Relation(np.array([[1, 0], [1, 1]]), np.array([[0, 0]]), np.array([[0, 0]]))
        with pytest.raises(RelationError):
            adversary_bound(rel)


class TestCycleRelation:
    """Testes da relação um-ciclo/dois-ciclos"""

    def test_n9_params(self):
        from src.services.adversary_service import cycle_relation_params

        params = cycle_relation_params(9)
        assert (params.m, params.m_prime, params.l_max) == (18, 36, 16)
        assert params.bound == pytest.approx(math.sqrt(18 * 36 / 16))

    def test_non_edge_bound(self):
        from src.services.adversary_service import cycle_relation_params

        for n in (9, 12, 15):
            assert cycle_relation_params(n, relabel_samples=1).l_profile["non_edge_max"] <= 4

    def test_swap_count(self):
        """Testa m = soma de (n − s) sobre as divisões válidas"""
        from src.services.adversary_service import cycle_relation_params
        from src.services.instance_service import two_cycle_range

        for n in (9, 10, 11, 14):
            lo, hi = two_cycle_range(n)
            expected = sum(n - s for s in range(lo, hi + 1) if lo <= n - s <= hi)
            assert cycle_relation_params(n, relabel_samples=0).m == expected

    def test_minimum_n(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import cycle_relation_params

        with pytest.raises(RelationError):
            cycle_relation_params(8)

    def test_growth_slope(self):
        """Testa inclinação log-log do limite em n = 9..30"""
        from src.services.adversary_service import cycle_relation_params
        from src.services.harness_service import fit_power_law

        ns = list(range(9, 31))
        fit = fit_power_law(ns, [cycle_relation_params(n, relabel_samples=0).bound for n in ns])
        assert 1.3 <= fit.slope <= 1.7

    @pytest.mark.slow
    def test_materialized_agrees(self):
        """Testa acordo com o cálculo genérico sobre todos os 9-ciclos"""
        from src.services.adversary_service import adversary_bound, cycle_relation_params, materialize_cycle_relation

        rel = materialize_cycle_relation(9)
        generic = adversary_bound(rel)
        special = cycle_relation_params(9)
        assert (generic.m, generic.m_prime, generic.l_max) == (special.m, special.m_prime, special.l_max)
        for xs, ys, diff in rel.diff_chunks():
            assert np.all(diff.sum(axis=1) == 8)

    def test_materialize_range(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import materialize_cycle_relation

        with pytest.raises(RelationError):
            materialize_cycle_relation(10)


class TestGadgetRelation:
    """Testes da relação do gadget de origem"""

    def test_degree_p3_k3(self):
        from src.services.adversary_service import gadget_relation_params

        params = gadget_relation_params(3, 3)
        assert params.x_degree == 12
        assert params.m == params.m_prime == 12

    def test_l_profile(self):
        """Testa l = k − 1 (backward) e (k − 1)² (forward)"""
        from src.services.adversary_service import gadget_relation_params

        for p in (1, 2, 4):
            for k in (2, 3, 5):
                params = gadget_relation_params(p, k, samples=3)
                assert params.l_profile == {"backward": k - 1, "forward": (k - 1) ** 2}
                assert params.x_degree == p * (k - 1) ** 2

    def test_out_of_scale(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import gadget_relation_params

        with pytest.raises(RelationError):
            gadget_relation_params(9, 3)
        with pytest.raises(RelationError):
            gadget_relation_params(2, 1)

    @pytest.mark.parametrize("p,k", [(1, 2), (1, 3), (2, 2), (2, 3)])
    def test_materialized_agrees(self, p, k):
        from src.services.adversary_service import adversary_bound, gadget_relation_params, materialize_gadget_relation

        generic = adversary_bound(materialize_gadget_relation(p, k))
        special = gadget_relation_params(p, k)
        assert (generic.m, generic.m_prime, generic.l_max) == (special.m, special.m_prime, special.l_max)

    def test_materialize_too_large(self):
        from src.core.errors import RelationError
        from src.services.adversary_service import materialize_gadget_relation

        with pytest.raises(RelationError):
            materialize_gadget_relation(5, 4)
