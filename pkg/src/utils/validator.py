"""
Validador de Invariantes
Suítes de verificação executadas pelo subcomando `verify`: equivalência do simulador
de Grover, exatidão da contagem conhecida, busca de mínimo, lema da redução A ∪ B,
exaustivos dos geradores e parâmetros de adversário.
"""

import math
import time
from collections import deque
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Callable, Dict, List, Optional

import numpy as np

from src.core.config import Config, get_config
from src.core.graphs import (
    DfsResult,
    Graph,
    GraphValidationResult,
    classical_dfs,
    classical_strongly_connected,
    out_neighbors,
    subtree_contains,
    validate_list,
)
from src.core.grover import (
    SearchSpace,
    find_min_index,
    find_min_value,
    grover_known_count,
    make_rng,
    statevector_trajectory,
    success_prob_known_t,
)
from src.core.ledger import QueryLedger
from src.core.log import get_logger
from src.services.adversary_service import (
    adversary_bound,
    cycle_relation_params,
    gadget_relation_params,
    parity_relation,
)
from src.services.connectivity_service import reduction_lemma_check
from src.services.harness_service import fit_power_law
from src.services.instance_service import (
    CycleSpec,
    GadgetSpec,
    ParitySpec,
    all_bitstrings,
    count_cycles,
    cycle_lengths,
    cycle_order,
    gen_cycle_instance,
    gen_origin_gadget,
    gen_parity_graph,
    gen_random_list,
    parity,
    two_cycle_range,
    two_swap,
)

logger = get_logger(__name__)

CYCLE_SLOPE_RANGE = (1.3, 1.7)


@dataclass
class ValidationResult:
    """Resultado de uma suíte de verificação"""
    suite: str
    passed: bool
    checks: int
    failures: List[str] = field(default_factory=list)
    elapsed: float = 0.0


def white_path_check(g: Graph, dfs: Optional[DfsResult] = None) -> GraphValidationResult:
    """
    Propriedade do caminho branco: se existe caminho de v_l a v_l′ (l < l′) usando só
    vértices marcados a partir de v_l, então v_l′ está na subárvore de v_l.
    """
    dfs = dfs or classical_dfs(g, 0)
    rank = dfs.rank
    for l, source in enumerate(dfs.order):
        seen = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in out_neighbors(g, u):
                if v in seen or rank.get(v, -1) < l:
                    continue
                seen.add(v)
                queue.append(v)
                if not subtree_contains(dfs, source, v):
                    return GraphValidationResult(False, (source, v), f"{v} alcançável por caminho branco fora da subárvore de {source}")
    return GraphValidationResult(True)


def binomial_upper(rate: float, trials: int, confidence: float) -> float:
    """Limite superior da banda normal bilateral para uma taxa observada"""
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    return rate + z * math.sqrt(max(rate * (1 - rate), 1e-12) / trials)


class InvariantValidator:
    """
    Executa as suítes de invariantes com os tamanhos da seção `verify` da configuração.
    """

    def __init__(self, config: Optional[Config] = None, seed: int = 0):
        self.config = config or get_config()
        self.settings = self.config.verify
        self.grover = self.config.grover
        self.seed = seed
        self.suites: Dict[str, Callable[[List[str]], int]] = {
            "grover-crosscheck": self._grover_crosscheck,
            "known-count": self._known_count,
            "min-finding": self._min_finding,
            "lemma": self._lemma,
            "generators": self._generators,
            "adversary": self._adversary,
        }

    def run(self, suite: str) -> List[ValidationResult]:
        """Executa uma suíte (ou todas, com `all`)"""
        names = list(self.suites) if suite == "all" else [suite]
        unknown = [name for name in names if name not in self.suites]
        if unknown:
            raise ValueError(f"suíte desconhecida: {unknown[0]} (opções: {', '.join(self.suites)}, all)")

        results = []
        for name in names:
            started = time.perf_counter()
            failures: List[str] = []
            checks = self.suites[name](failures)
            result = ValidationResult(name, not failures, checks, failures, time.perf_counter() - started)
            logger.info("verify_suite", suite=name, passed=result.passed, checks=checks, failures=len(failures))
            results.append(result)
        return results

    # ------------------------------------------------------------------ grover

    def _grover_crosscheck(self, failures: List[str]) -> int:
        checks = 0
        max_j = self.settings.crosscheck_max_j
        tol = self.settings.crosscheck_tolerance
        for N in range(2, self.settings.crosscheck_max_n + 1):
            for t in range(1, N + 1):
                reference = statevector_trajectory(N, range(t), max_j)
                for j in range(max_j + 1):
                    checks += 1
                    gap = abs(success_prob_known_t(N, t, j) - reference[j])
                    if gap > tol:
                        failures.append(f"N={N} t={t} j={j}: diferença {gap:.3e}")
        return checks

    def _known_count(self, failures: List[str]) -> int:
        rng = make_rng(self.seed)
        trials = self.settings.monte_carlo_trials
        for trial in range(trials):
            ledger = QueryLedger()
            outcome = grover_known_count(SearchSpace.from_marked(4, [2], ledger), 1, rng)
            if not outcome.found or outcome.queries != 2:
                failures.append(f"tentativa {trial}: found={outcome.found} queries={outcome.queries}")
        return trials

    def _min_finding(self, failures: List[str]) -> int:
        rng = make_rng(self.seed)
        trials = self.settings.monte_carlo_trials
        confidence = self.settings.confidence
        checks = 0
        for N in (16, 64, 128):
            hits = 0
            for _ in range(trials):
                values = rng.permutation(N)
                outcome = find_min_value(values, QueryLedger(), rng, self.grover)
                hits += int(values[outcome.index] == 0)
            checks += 1
            if binomial_upper(hits / trials, trials, confidence) < 0.5:
                failures.append(f"find_min_value N={N}: taxa {hits / trials:.3f}")

        N = 128
        hits = 0
        for _ in range(trials):
            marked = np.flatnonzero(rng.random(N) < rng.random())
            if marked.size == 0:
                marked = np.array([int(rng.integers(N))])
            outcome = find_min_index(SearchSpace.from_marked(N, marked, QueryLedger()), rng, self.grover)
            hits += int(outcome.found and outcome.index == int(marked[0]))
        checks += 1
        if binomial_upper(hits / trials, trials, confidence) < 0.5:
            failures.append(f"find_min_index N={N}: taxa {hits / trials:.3f}")
        return checks

    # ------------------------------------------------------------------ grafos

    def _lemma(self, failures: List[str]) -> int:
        rng = make_rng(self.seed)
        checks = 0
        for idx in range(1000):
            k = int(rng.integers(2, 5))
            n = int(rng.integers(k + 1, 41))
            g = gen_random_list(n, k, seed=int(rng.integers(2 ** 31)))
            checks += 1
            verdict = reduction_lemma_check(g)
            if verdict is False:
                failures.append(f"lema A∪B falhou: lista aleatória #{idx} (n={n}, k={k})")
            white = white_path_check(g)
            if not white:
                failures.append(f"caminho branco #{idx}: {white.message}")

        for p in range(1, 7):
            for k in range(2, 5):
                for bits in all_bitstrings(p):
                    g = gen_origin_gadget(GadgetSpec(bits, k, seed=checks))
                    checks += 1
                    if reduction_lemma_check(g) is False:
                        failures.append(f"lema A∪B falhou: gadget p={p} k={k} x={''.join(map(str, bits))}")
        return checks

    def _generators(self, failures: List[str]) -> int:
        checks = 0
        for p in range(1, 13):
            for bits in all_bitstrings(p):
                checks += 1
                cycles = count_cycles(gen_parity_graph(ParitySpec(bits)))
                if cycles != 2 - parity(bits):
                    failures.append(f"paridade x={''.join(map(str, bits))}: {cycles} ciclos")

        ledger = QueryLedger()
        for p in range(1, 9):
            for k in (2, 3, 4):
                for bits in all_bitstrings(p):
                    checks += 1
                    g = gen_origin_gadget(GadgetSpec(bits, k, seed=checks))
                    if not validate_list(g, allow_self_loops=p == 1):
                        failures.append(f"gadget p={p} k={k}: viola a promessa de grafo simples")
                    if classical_strongly_connected(g, ledger) != bool(parity(bits)):
                        failures.append(f"gadget p={p} k={k} x={''.join(map(str, bits))}: conectividade forte incorreta")

        rng = make_rng(self.seed)
        for _ in range(200):
            n = int(rng.integers(6, 41))
            g = gen_cycle_instance(CycleSpec(n=n, seed=int(rng.integers(2 ** 31))))
            ring = cycle_order(g)
            lo, _ = two_cycle_range(n)
            s = int(rng.integers(lo, n - lo + 1))
            a, b, d, c = ring[0], ring[1], ring[s], ring[(s + 1) % n]
            checks += 1
            lengths = cycle_lengths(two_swap(g, a, b, c, d))
            if len(lengths) != 2 or sum(lengths) != n:
                failures.append(f"two_swap n={n} s={s}: ciclos {lengths}")
        return checks

    # ------------------------------------------------------------------ adversário

    def _adversary(self, failures: List[str]) -> int:
        checks = 0
        for n in range(2, 11):
            checks += 1
            params = adversary_bound(parity_relation(n))
            if not math.isclose(params.bound, n):
                failures.append(f"PARITY n={n}: limite {params.bound}")

        for p in range(1, 7):
            for k in range(2, 6):
                checks += 1
                params = gadget_relation_params(p, k, samples=2, seed=self.seed)
                expected = {"backward": k - 1, "forward": (k - 1) ** 2}
                if params.x_degree != p * (k - 1) ** 2 or params.l_profile != expected:
                    failures.append(f"gadget p={p} k={k}: grau {params.x_degree}, l {params.l_profile}")

        ns = list(range(9, 31))
        bounds = [cycle_relation_params(n, relabel_samples=1, seed=self.seed).bound for n in ns]
        fit = fit_power_law(ns, bounds)
        checks += 1
        lo, hi = CYCLE_SLOPE_RANGE
        if not lo <= fit.slope <= hi:
            failures.append(f"inclinação do limite de dois ciclos {fit.slope:.3f} fora de [{lo}, {hi}]")
        return checks
