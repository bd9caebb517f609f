"""
QConn Lab - Laboratório de Conectividade no Modelo de Consultas
Simulação clássica exata de buscas de Grover com contabilidade de consultas ao oráculo
"""

__version__ = "1.0.0"
__author__ = "QConn Lab Team"

from src.core import (
    get_config,
    reload_config,
)

__all__ = [
    # Core
    "get_config",
    "reload_config",
]
