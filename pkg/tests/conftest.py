"""
Fixtures compartilhadas dos testes
"""

import sys
from pathlib import Path

import pytest

# Adiciona raiz ao path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


@pytest.fixture(autouse=True)
def isolated_output(tmp_path, monkeypatch):
    """Redireciona resultados e auditoria para um diretório temporário"""
    from src.core.config import OUTPUT_DIR_ENV_VAR, reload_config
    import src.utils.audit_logger as audit_logger

    monkeypatch.setenv(OUTPUT_DIR_ENV_VAR, str(tmp_path / "results"))
    reload_config()
    audit_logger._logger_instance = None
    yield tmp_path / "results"
    audit_logger._logger_instance = None
    monkeypatch.undo()
    reload_config()


@pytest.fixture
def grover_cfg():
    """Constantes padrão de busca"""
    from src.core.config import GroverConfig
    return GroverConfig()


@pytest.fixture
def rng():
    from src.core.grover import make_rng
    return make_rng(12345)
