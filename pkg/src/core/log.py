"""
Configuração de Logging Estruturado
Inicializa o structlog a partir da seção `logging` da configuração.
"""

import logging
import sys
from typing import Optional

import structlog

from src.core.config import LoggingConfig, get_config

_configured = False


def configure_logging(settings: Optional[LoggingConfig] = None, force: bool = False):
    """Configura structlog e o logging padrão (idempotente)"""
    global _configured
    if _configured and not force:
        return

    settings = settings or get_config().logging
    level = getattr(logging, settings.level.upper(), logging.INFO)

    handlers = []
    if settings.output in ("stdout", "both"):
        handlers.append(logging.StreamHandler(sys.stderr))
    if settings.output in ("file", "both") and settings.file_path is not None:
        settings.file_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(settings.file_path, encoding="utf-8"))

    logging.basicConfig(format="%(message)s", level=level, handlers=handlers, force=True)

    renderer = (
        structlog.processors.JSONRenderer()
        if settings.format == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            structlog.processors.format_exc_info,
            renderer,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
    _configured = True


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Retorna logger estruturado, configurando na primeira chamada"""
    configure_logging()
    return structlog.get_logger(name)
