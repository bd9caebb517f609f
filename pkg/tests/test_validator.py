"""
Testes do Validador de Invariantes
"""

import pytest


def _small_config():
    from src.core.config import get_config

    config = get_config()
    verify = config.verify.model_copy(update={"monte_carlo_trials": 200, "crosscheck_max_n": 8, "crosscheck_max_j": 10})
    return config.model_copy(update={"verify": verify})


class TestInvariantValidator:
    """Testes das suítes de verificação"""

    def test_unknown_suite(self):
        from src.utils.validator import InvariantValidator

        with pytest.raises(ValueError):
            InvariantValidator(_small_config()).run("sorting")

    def test_grover_crosscheck(self):
        """Testa contagem de verificações: Σ_N N·(max_j + 1)"""
        from src.utils.validator import InvariantValidator

        [result] = InvariantValidator(_small_config()).run("grover-crosscheck")
        assert result.passed
        assert result.checks == sum(range(2, 9)) * 11

    def test_known_count(self):
        from src.utils.validator import InvariantValidator

        [result] = InvariantValidator(_small_config(), seed=3).run("known-count")
        assert result.passed and result.checks == 200

    def test_min_finding(self):
        from src.utils.validator import InvariantValidator

        [result] = InvariantValidator(_small_config()).run("min-finding")
        assert result.passed, result.failures
        assert result.checks == 4

    @pytest.mark.slow
    def test_all_suites(self):
        from src.utils.validator import InvariantValidator

        results = InvariantValidator(_small_config()).run("all")
        assert [r.suite for r in results] == [
            "grover-crosscheck", "known-count", "min-finding", "lemma", "generators", "adversary",
        ]
        assert all(r.passed for r in results), [r.failures for r in results]


class TestHelpers:
    """Testes das funções auxiliares"""

    def test_binomial_upper(self):
        from src.utils.validator import binomial_upper

        assert binomial_upper(0.5, 10_000, 0.99) == pytest.approx(0.5 + 2.5758 * 0.005, abs=1e-4)
        assert binomial_upper(0.0, 100, 0.99) > 0.0
        assert binomial_upper(0.4, 100, 0.99) > binomial_upper(0.4, 10_000, 0.99)

    def test_white_path_detects_bad_tree(self):
        """Testa falha com uma árvore que não respeita a ordem de descoberta"""
        from src.core.graphs import DfsResult, ListGraph, classical_dfs
        from src.utils.validator import white_path_check

        g = ListGraph.from_rows([[1, 2], [2, 0], [0, 1]])
        bad = DfsResult(tree=((0, 1), (0, 2)), order=(0, 1, 2))
        assert white_path_check(g, classical_dfs(g, 0))
        assert not white_path_check(g, bad)