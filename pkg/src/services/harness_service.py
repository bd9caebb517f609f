"""
Serviço de Varreduras de Benchmark
Gera instâncias por família, calcula a verdade de referência, executa os algoritmos
com ledger próprio e agrega as consultas (mediana por ponto, ajuste log-log, CSV e
relatório JSON).
"""

import csv
import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.core.config import GroverConfig, HarnessConfig, get_config
from src.core.errors import PromiseViolation, RetryCapExceeded, SweepConfigError
from src.core.graphs import (
    Graph,
    ListGraph,
    classical_connected,
    classical_strongly_connected,
)
from src.core.grover import make_rng
from src.core.ledger import QueryLedger
from src.core.log import get_logger
from src.services.connectivity_service import (
    AlgoReport,
    q_connected,
    q_connected_learning,
    q_connected_list,
    q_strongly_connected_list,
    q_strongly_connected_matrix,
)
from src.services.instance_service import (
    CycleSpec,
    GadgetSpec,
    ParitySpec,
    gen_cycle_instance,
    gen_origin_gadget,
    gen_parity_graph,
    gen_random_list,
    gen_random_matrix,
    gen_random_matrix_edges,
    undirected_list_view,
)

logger = get_logger(__name__)

CSV_FIELDS = ("algorithm", "model", "family", "n", "k", "trial", "seed", "queries", "answer", "truth", "correct", "ms")

FIT_FIELDS = ("n", "k", "m")


# ============================================================================
# ALGORITMOS E FAMÍLIAS
# ============================================================================

def _classical_connected(g: Graph, cfg: GroverConfig, rng: np.random.Generator) -> AlgoReport:
    ledger = QueryLedger()
    return AlgoReport(answer=classical_connected(g, ledger), queries=ledger.count)


def _classical_strongly_connected(g: Graph, cfg: GroverConfig, rng: np.random.Generator) -> AlgoReport:
    ledger = QueryLedger()
    return AlgoReport(answer=classical_strongly_connected(g, ledger), queries=ledger.count)


def _learning(g: Graph, cfg: GroverConfig, rng: np.random.Generator) -> AlgoReport:
    return q_connected_learning(g, g.edge_cell_count, cfg, rng)


@dataclass(frozen=True)
class AlgorithmEntry:
    """Algoritmo disponível para varreduras"""
    model: Literal["matrix", "list", "any"]
    kind: Literal["connectivity", "strong"]
    run: Callable[[Graph, GroverConfig, np.random.Generator], AlgoReport]


ALGORITHMS: Dict[str, AlgorithmEntry] = {
    "q_connected": AlgorithmEntry("matrix", "connectivity", q_connected),
    "q_connected_list": AlgorithmEntry("list", "connectivity", q_connected_list),
    "q_connected_learning": AlgorithmEntry("matrix", "connectivity", _learning),
    "q_strongly_connected_matrix": AlgorithmEntry("matrix", "strong", q_strongly_connected_matrix),
    "q_strongly_connected_list": AlgorithmEntry("list", "strong", q_strongly_connected_list),
    "classical_connected": AlgorithmEntry("matrix", "connectivity", _classical_connected),
    "classical_strongly_connected": AlgorithmEntry("any", "strong", _classical_strongly_connected),
}


@dataclass(frozen=True)
class FamilyEntry:
    """Família de instâncias: modelos suportados e se produz grafos direcionados"""
    models: Tuple[str, ...]
    directed: Optional[bool]  # None: definido por SweepConfig.directed


FAMILIES: Dict[str, FamilyEntry] = {
    "one-cycle": FamilyEntry(("matrix", "list"), False),
    "two-cycle": FamilyEntry(("matrix", "list"), False),
    "gnp": FamilyEntry(("matrix",), None),
    "gnm": FamilyEntry(("matrix",), None),
    "random-list": FamilyEntry(("list",), True),
    "parity": FamilyEntry(("list",), True),
    "origin-gadget": FamilyEntry(("list",), True),
}

PARITY_FAMILIES = ("parity", "origin-gadget")


def resolve_model(algorithm: str, family: str) -> str:
    model = ALGORITHMS[algorithm].model
    return FAMILIES[family].models[0] if model == "any" else model


def derive_seed(base_seed: int, n: int, k: int, trial: int) -> int:
    """Semente derivada de (base, n, k, tentativa) por SHA-256"""
    digest = hashlib.sha256(f"{base_seed}:{n}:{k}:{trial}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


# ============================================================================
# CONFIGURAÇÃO DA VARREDURA
# ============================================================================

_KEY_ALIASES = {"n": "n_list", "k": "k_list", "seed": "base_seed", "algo": "algorithm"}
_LIST_KEYS = {"n_list", "k_list"}


class SweepConfig(BaseModel):
    """Configuração de uma varredura de benchmark"""
    algorithm: str
    family: str
    n_list: List[int] = Field(min_length=1)
    k_list: List[int] = Field(default_factory=lambda: [0], min_length=1)
    trials: int = Field(default_factory=lambda: get_config().harness.default_trials, ge=1)
    base_seed: int = Field(default=0, ge=0)
    edge_prob: float = Field(default=0.5, ge=0.0, le=1.0)
    directed: bool = False
    grover: Dict[str, Any] = Field(default_factory=dict)
    output: Optional[Path] = None
    report: Optional[Path] = None
    fit_x: Literal["n", "k", "m"] = "n"
    workers: Optional[int] = Field(default=None, ge=1, le=64)
    parity: Optional[int] = Field(default=None, ge=0, le=1)  # paridade fixa de x (parity, origin-gadget)

    @field_validator("algorithm")
    @classmethod
    def known_algorithm(cls, v: str) -> str:
        if v not in ALGORITHMS:
            raise ValueError(f"algoritmo desconhecido: {v} (opções: {', '.join(sorted(ALGORITHMS))})")
        return v

    @field_validator("family")
    @classmethod
    def known_family(cls, v: str) -> str:
        if v not in FAMILIES:
            raise ValueError(f"família desconhecida: {v} (opções: {', '.join(sorted(FAMILIES))})")
        return v

    @model_validator(mode="after")
    def compatible(self) -> "SweepConfig":
        algo, fam = ALGORITHMS[self.algorithm], FAMILIES[self.family]
        if algo.model != "any" and algo.model not in fam.models:
            raise ValueError(f"{self.algorithm} usa o modelo {algo.model}; {self.family} gera {'/'.join(fam.models)}")
        if algo.kind == "connectivity" and self.is_directed:
            raise ValueError(f"{self.algorithm} exige grafos não direcionados ({self.family} é direcionada)")
        if self.parity is not None and self.family not in PARITY_FAMILIES:
            raise ValueError(f"parity só se aplica a {'/'.join(PARITY_FAMILIES)} (família {self.family})")
        GroverConfig().with_overrides(self.grover)
        return self

    @property
    def model(self) -> str:
        return resolve_model(self.algorithm, self.family)

    @property
    def is_directed(self) -> bool:
        fam = FAMILIES[self.family]
        return self.directed if fam.directed is None else fam.directed

    def points(self) -> List[Tuple[int, int]]:
        return [(n, k) for n in self.n_list for k in self.k_list]

    @classmethod
    def parse(cls, data: Dict[str, Any]) -> "SweepConfig":
        """Valida um dicionário, convertendo erros em SweepConfigError"""
        normalized: Dict[str, Any] = {}
        grover: Dict[str, Any] = dict(data.get("grover") or {})
        for key, value in data.items():
            key = _KEY_ALIASES.get(key, key)
            if key == "grover":
                continue
            if key.startswith("grover."):
                grover[key.split(".", 1)[1]] = value
            elif key in _LIST_KEYS and isinstance(value, str):
                normalized[key] = [item.strip() for item in value.split(",") if item.strip()]
            elif key in _LIST_KEYS and isinstance(value, int):
                normalized[key] = [value]
            else:
                normalized[key] = value
        normalized["grover"] = grover

        try:
            return cls(**normalized)
        except ValidationError as e:
            raise SweepConfigError(f"configuração de varredura inválida:\n{e}") from e

    @classmethod
    def from_file(cls, path: str | Path) -> "SweepConfig":
        """Lê um arquivo key=value (ou YAML, por extensão .yaml/.yml)"""
        path = Path(path)
        if not path.exists():
            raise SweepConfigError(f"arquivo de varredura não encontrado: {path}")
        text = path.read_text(encoding="utf-8")

        if path.suffix in (".yaml", ".yml"):
            data = yaml.safe_load(text) or {}
            if not isinstance(data, dict):
                raise SweepConfigError(f"YAML de varredura deve ser um mapeamento: {path}")
            return cls.parse(data)

        data: Dict[str, Any] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SweepConfigError(f"{path}:{lineno}: esperado key=value, recebido {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            data[key] = value
        return cls.parse(data)


# ============================================================================
# REGISTROS
# ============================================================================

@dataclass(frozen=True)
class TrialRecord:
    """Uma execução de benchmark; answer None indica abort (contado como erro)"""
    algorithm: str
    model: str
    family: str
    n: int
    k: int
    trial: int
    seed: int
    queries: int
    answer: Optional[bool]
    truth: bool
    correct: bool
    ms: int = 0

    def to_row(self) -> Dict[str, str]:
        row = {}
        for name in CSV_FIELDS:
            value = getattr(self, name)
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif value is None:
                value = "abort"
            row[name] = str(value)
        return row

    @classmethod
    def from_row(cls, row: Dict[str, str]) -> "TrialRecord":
        def flag(text: str) -> Optional[bool]:
            return None if text == "abort" else text == "true"

        return cls(
            algorithm=row["algorithm"],
            model=row["model"],
            family=row["family"],
            n=int(row["n"]),
            k=int(row["k"]),
            trial=int(row["trial"]),
            seed=int(row["seed"]),
            queries=int(row["queries"]),
            answer=flag(row["answer"]),
            truth=row["truth"] == "true",
            correct=row["correct"] == "true",
            ms=int(row["ms"]),
        )


@dataclass(frozen=True)
class FitResult:
    """Ajuste por mínimos quadrados em escala log-log"""
    slope: float
    intercept: float
    residual: float
    n_points: int


# ============================================================================
# EXECUÇÃO
# ============================================================================

def build_instance(cfg: SweepConfig, n: int, k: int, seed: int) -> Tuple[Graph, int]:
    """Instância da família para o ponto (n, k); devolve também o k registrado"""
    family = cfg.family
    model = cfg.model

    if family in ("one-cycle", "two-cycle"):
        g = gen_cycle_instance(CycleSpec(n=n, variant=family, seed=seed))
        if model == "list":
            g = undirected_list_view(g)
            return g, g.k
        return g, 0

    if family == "gnp":
        return gen_random_matrix(n, cfg.edge_prob, directed=cfg.directed, seed=seed), 0

    if family == "gnm":
        return gen_random_matrix_edges(n, k, directed=cfg.directed, seed=seed), k

    if family == "random-list":
        return gen_random_list(n, k, seed=seed), k

    rng = np.random.default_rng(seed)
    if n < 2 or n % 2:
        raise PromiseViolation(f"{family} exige n = 2p par (recebido {n})")
    bits = [int(b) for b in rng.integers(0, 2, size=n // 2)]
    if cfg.parity is not None and sum(bits) % 2 != cfg.parity:
        bits[0] ^= 1
    bits = tuple(bits)
    if family == "parity":
        return gen_parity_graph(ParitySpec(bits)), 1
    g = gen_origin_gadget(GadgetSpec(bits, k, seed=seed))
    return g, g.k


def ground_truth(kind: str, g: Graph) -> bool:
    """Verdade clássica (sem cobrança contabilizada)"""
    scratch = QueryLedger()
    if kind == "strong":
        return classical_strongly_connected(g, scratch)
    if isinstance(g, ListGraph):
        return classical_connected(g.to_matrix(), scratch)
    return classical_connected(g, scratch)


def run_trial(cfg: SweepConfig, grover: GroverConfig, record_wall_time: bool, n: int, k: int, trial: int) -> TrialRecord:
    """Executa uma tentativa com ledger e gerador próprios"""
    seed = derive_seed(cfg.base_seed, n, k, trial)
    entry = ALGORITHMS[cfg.algorithm]
    g, recorded_k = build_instance(cfg, n, k, seed)
    truth = ground_truth(entry.kind, g)

    started = time.perf_counter()
    try:
        report = entry.run(g, grover, make_rng([seed, 1]))
        answer, queries = report.answer, report.queries
    except RetryCapExceeded as e:
        logger.warning("trial_aborted", algorithm=cfg.algorithm, n=n, k=k, trial=trial, reason=str(e))
        answer, queries = None, e.queries
    ms = int(round((time.perf_counter() - started) * 1000)) if record_wall_time else 0

    return TrialRecord(
        algorithm=cfg.algorithm,
        model=cfg.model,
        family=cfg.family,
        n=g.n,
        k=recorded_k,
        trial=trial,
        seed=seed,
        queries=queries,
        answer=answer,
        truth=truth,
        correct=answer is not None and answer == truth,
        ms=ms,
    )


def _run_task(args: Tuple[SweepConfig, GroverConfig, bool, int, int, int]) -> TrialRecord:
    return run_trial(*args)


def check_points(cfg: SweepConfig):
    """Gera uma instância por ponto antes de qualquer execução; promessas inválidas viram erro de configuração"""
    for n, k in cfg.points():
        try:
            build_instance(cfg, n, k, derive_seed(cfg.base_seed, n, k, 0))
        except PromiseViolation as e:
            raise SweepConfigError(f"ponto inválido (n={n}, k={k}) para {cfg.family}: {e}") from e


def run_sweep(
    cfg: SweepConfig,
    grover: Optional[GroverConfig] = None,
    harness: Optional[HarnessConfig] = None,
) -> List[TrialRecord]:
    """
    Executa todas as tentativas da varredura. Os registros saem ordenados por
    (n, k, tentativa) independentemente do número de workers.
    """
    settings = get_config()
    grover = (grover or settings.grover).with_overrides(cfg.grover)
    harness = harness or settings.harness
    check_points(cfg)

    tasks = [
        (cfg, grover, harness.record_wall_time, n, k, trial)
        for n, k in cfg.points()
        for trial in range(cfg.trials)
    ]
    workers = cfg.workers or harness.workers
    logger.info(
        "sweep_start",
        algorithm=cfg.algorithm, family=cfg.family, points=len(cfg.points()), trials=cfg.trials, workers=workers,
    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = [_run_task(task) for task in tasks]

    correct = sum(r.correct for r in records)
    logger.info("sweep_done", records=len(records), correct_rate=correct / len(records) if records else 0.0)
    return records


# ============================================================================
# AGREGAÇÃO E AJUSTE
# ============================================================================

def records_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    columns = [f.name for f in fields(TrialRecord)]
    return pd.DataFrame([asdict(r) for r in records], columns=columns)


def summarize(records: Sequence[TrialRecord]) -> pd.DataFrame:
    """Por ponto (algoritmo, família, n, k): tentativas, taxa de acerto, mediana e média de consultas"""
    df = records_frame(records)
    if df.empty:
        return pd.DataFrame(columns=["algorithm", "family", "n", "k", "trials", "correct_rate", "median_queries", "mean_queries"])
    return (
        df.groupby(["algorithm", "family", "n", "k"], sort=True)
        .agg(
            trials=("trial", "count"),
            correct_rate=("correct", "mean"),
            median_queries=("queries", "median"),
            mean_queries=("queries", "mean"),
        )
        .reset_index()
    )


def fit_power_law(xs: Iterable[float], ys: Iterable[float]) -> FitResult:
    """Mínimos quadrados sobre (log x, log y); exige ≥ 3 valores distintos de x"""
    x = np.asarray(list(xs), dtype=float)
    y = np.asarray(list(ys), dtype=float)
    if x.shape != y.shape:
        raise ValueError("x e y com tamanhos diferentes")
    if np.unique(x).size < 3:
        raise ValueError(f"ajuste exige ≥ 3 valores distintos de x (recebidos {np.unique(x).size})")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("ajuste log-log exige valores positivos")

    log_x, log_y = np.log(x), np.log(y)
    slope, intercept = np.polyfit(log_x, log_y, 1)
    fitted = slope * log_x + intercept
    residual = float(np.sqrt(np.mean((log_y - fitted) ** 2)))
    return FitResult(float(slope), float(intercept), residual, int(x.size))


def fit_exponent(records: Sequence[TrialRecord], x_field: str = "n") -> FitResult:
    """Expoente da mediana de consultas por valor de x (n, k ou m; m lê a coluna k)"""
    if x_field not in FIT_FIELDS:
        raise ValueError(f"campo de ajuste desconhecido: {x_field}")
    column = "k" if x_field == "m" else x_field
    df = records_frame(records)
    if df.empty:
        raise ValueError("nenhum registro para ajustar")
    medians = df.groupby(column)["queries"].median()
    return fit_power_law(medians.index.to_numpy(dtype=float), medians.to_numpy(dtype=float))


# ============================================================================
# ARQUIVOS
# ============================================================================

def emit_csv(records: Sequence[TrialRecord], path: str | Path) -> Path:
    """CSV com cabeçalho fixo; lista vazia gera só o cabeçalho"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(record.to_row())
    return path


def read_csv(path: str | Path) -> List[TrialRecord]:
    with open(path, "r", newline="", encoding="utf-8") as f:
        return [TrialRecord.from_row(row) for row in csv.DictReader(f)]


def emit_report(fit: FitResult, path: str | Path) -> Path:
    """Relatório JSON {slope, intercept, residual, n_points}"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(asdict(fit), indent=2) + "\n", encoding="utf-8")
    return path

