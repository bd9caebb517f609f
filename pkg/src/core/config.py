"""
Sistema de Configuração Centralizado do QConn Lab
Gerencia constantes de busca, caminhos, logging e parâmetros de benchmark com validação.
"""

import math
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, model_validator

PROJECT_ROOT = Path(__file__).resolve().parents[2]
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"

CONFIG_ENV_VAR = "QCONN_LAB_CONFIG"
OUTPUT_DIR_ENV_VAR = "QCONN_LAB_OUTPUT_DIR"

BOOST_POLICIES = ("log", "sqrt_log", "fixed")


class PathsConfig(BaseModel):
    """Configurações de caminhos do laboratório"""
    base_dir: Path = Field(default_factory=lambda: PROJECT_ROOT)
    output_dir: Optional[Path] = None
    audit_dir: Optional[Path] = None

    @field_validator("output_dir", "audit_dir", mode="after")
    @classmethod
    def resolve_paths(cls, v: Optional[Path], info) -> Optional[Path]:
        """Resolve caminhos relativos baseados no base_dir"""
        if v is None or v.is_absolute():
            return v
        base = info.data.get("base_dir") or PROJECT_ROOT
        return Path(base) / v

    @model_validator(mode="after")
    def apply_defaults(self) -> "PathsConfig":
        env_output = os.getenv(OUTPUT_DIR_ENV_VAR)
        if env_output:
            self.output_dir = Path(env_output)
        if self.output_dir is None:
            self.output_dir = self.base_dir / "results"
        if self.audit_dir is None:
            self.audit_dir = self.output_dir / "audit"
        return self

    def ensure_directories(self):
        """Cria os diretórios de saída"""
        for directory in (self.output_dir, self.audit_dir):
            if directory:
                directory.mkdir(parents=True, exist_ok=True)


class GroverConfig(BaseModel):
    """Constantes de agenda das buscas de Grover (BBHT, Dürr–Høyer, boosting)"""
    bbht_lambda: float = Field(default=8.0 / 7.0)
    bbht_cutoff_factor: float = Field(default=3.0, gt=0.0)
    min_finding_budget_factor: float = Field(default=10.0, gt=0.0)
    boost_policy: str = Field(default="log")
    boost_reps: int = Field(default=1, ge=1)
    learning_retry_cap: int = Field(default=10, ge=1)
    learning_budget_factor: Optional[float] = Field(default=None, gt=0.0)
    rng_seed: int = Field(default=0, ge=0)

    @field_validator("bbht_lambda")
    @classmethod
    def lambda_in_range(cls, v: float) -> float:
        if not (1.0 < v <= 4.0 / 3.0 + 1e-12):
            raise ValueError(f"bbht_lambda deve estar em (1, 4/3] (atual: {v})")
        return v

    @field_validator("boost_policy")
    @classmethod
    def known_policy(cls, v: str) -> str:
        v = v.strip().lower()
        if v not in BOOST_POLICIES:
            raise ValueError(f"boost_policy desconhecida: {v} (opções: {', '.join(BOOST_POLICIES)})")
        return v

    def repetitions(self, n: int) -> int:
        """Número de repetições de boosting para um grafo com n vértices"""
        log_n = math.log2(n) if n > 1 else 0.0
        if self.boost_policy == "fixed":
            return self.boost_reps
        if self.boost_policy == "sqrt_log":
            return max(1, math.ceil(math.sqrt(log_n)))
        return max(1, math.ceil(log_n))

    def with_overrides(self, overrides: Dict[str, Any]) -> "GroverConfig":
        """Retorna cópia validada com campos sobrescritos"""
        data = self.model_dump()
        data.update(overrides)
        return GroverConfig(**data)


class HarnessConfig(BaseModel):
    """Configurações das varreduras de benchmark"""
    workers: int = Field(default=1, ge=1, le=64)
    record_wall_time: bool = Field(default=False)
    default_trials: int = Field(default=50, ge=1)


class VerifyConfig(BaseModel):
    """Configurações das suítes de verificação"""
    monte_carlo_trials: int = Field(default=10_000, ge=100)
    confidence: float = Field(default=0.99, gt=0.5, lt=1.0)
    crosscheck_max_n: int = Field(default=64, ge=2, le=256)
    crosscheck_max_j: int = Field(default=20, ge=0)
    crosscheck_tolerance: float = Field(default=1e-9, gt=0.0)


class LoggingConfig(BaseModel):
    """Configurações de logging"""
    level: str = Field(default="INFO")
    format: str = Field(default="text")  # json, text
    output: str = Field(default="stdout")  # stdout, file, both
    file_path: Optional[Path] = None

    @field_validator("format")
    @classmethod
    def known_format(cls, v: str) -> str:
        if v not in ("json", "text"):
            raise ValueError(f"formato de log inválido: {v}")
        return v

    @field_validator("output")
    @classmethod
    def known_output(cls, v: str) -> str:
        if v not in ("stdout", "file", "both"):
            raise ValueError(f"saída de log inválida: {v}")
        return v


class Config(BaseModel):
    """Configuração principal do laboratório"""
    environment: str = Field(default="development")  # development, ci
    debug: bool = Field(default=False)

    paths: PathsConfig = Field(default_factory=PathsConfig)
    grover: GroverConfig = Field(default_factory=GroverConfig)
    harness: HarnessConfig = Field(default_factory=HarnessConfig)
    verify: VerifyConfig = Field(default_factory=VerifyConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @classmethod
    def from_yaml(cls, yaml_path: str | Path) -> "Config":
        """Carrega configuração de arquivo YAML"""
        yaml_path = Path(yaml_path)
        if not yaml_path.exists():
            raise FileNotFoundError(f"Arquivo de configuração não encontrado: {yaml_path}")

        with open(yaml_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}

        return cls(**data)

    @classmethod
    def from_env(cls) -> "Config":
        """Carrega configuração indicada pela variável de ambiente"""
        config_path = os.getenv(CONFIG_ENV_VAR)
        if config_path:
            return cls.from_yaml(config_path)
        if DEFAULT_CONFIG_PATH.exists():
            return cls.from_yaml(DEFAULT_CONFIG_PATH)
        return cls()

    def to_yaml(self, yaml_path: str | Path):
        """Salva configuração em arquivo YAML"""
        yaml_path = Path(yaml_path)
        yaml_path.parent.mkdir(parents=True, exist_ok=True)

        data = self.model_dump(mode="json")
        with open(yaml_path, "w", encoding="utf-8") as f:
            yaml.dump(data, f, default_flow_style=False, allow_unicode=True, sort_keys=False)

    def validate_environment(self) -> bool:
        """Valida se os diretórios de saída podem ser usados"""
        errors: List[str] = []

        for directory in (self.paths.output_dir, self.paths.audit_dir):
            if directory and directory.exists() and not directory.is_dir():
                errors.append(f"Caminho de saída não é diretório: {directory}")

        if self.logging.output in ("file", "both") and self.logging.file_path is None:
            errors.append("logging.file_path obrigatório quando output inclui arquivo")

        if errors:
            raise ValueError(
                "Erros de validação de ambiente:\n" +
                "\n".join(f"  - {e}" for e in errors)
            )

        return True


@lru_cache(maxsize=1)
def get_config() -> Config:
    """
    Retorna a configuração global (singleton com cache)
    """
    load_dotenv()
    return Config.from_env()


def reload_config() -> Config:
    """
    Recarrega a configuração (limpa o cache)
    """
    get_config.cache_clear()
    return get_config()
