"""
Trilha de Auditoria dos Experimentos
Registra varreduras, execuções avulsas, verificações e erros em JSONL diário.
"""

import gzip
import json
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.core.config import get_config
from src.core.log import get_logger

logger = get_logger(__name__)

LOG_PREFIX = "audit_"


class EventType(str, Enum):
    """Tipos de eventos auditáveis"""
    SWEEP = "sweep"
    RUN = "run"
    VERIFY = "verify"
    ERROR = "error"


@dataclass
class AuditEvent:
    """Evento de auditoria estruturado"""
    timestamp: str
    event_type: EventType
    event_id: str
    data: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)


class AuditLogger:
    """
    Logger de auditoria com suporte a JSONL e compressão
    """

    def __init__(self, log_dir: Optional[Path] = None):
        self.log_dir = Path(log_dir) if log_dir else get_config().paths.audit_dir
        self.log_dir.mkdir(parents=True, exist_ok=True)

        self.stats = {
            "total_events": 0,
            "events_by_type": {},
            "last_event_time": None,
        }

    def log_sweep(
        self,
        algorithm: str,
        family: str,
        points: int,
        records: int,
        correct_rate: float,
        output: Optional[str] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ):
        """Registra uma varredura concluída"""
        self._emit(EventType.SWEEP, {
            "algorithm": algorithm,
            "family": family,
            "points": points,
            "records": records,
            "correct_rate": correct_rate,
            "output": output,
        }, metadata)

    def log_run(
        self,
        algorithm: str,
        graph: str,
        answer: Optional[bool],
        queries: int,
        seed: int,
        metadata: Optional[Dict[str, Any]] = None,
    ):
        """Registra a execução de um algoritmo sobre um arquivo de grafo"""
        self._emit(EventType.RUN, {
            "algorithm": algorithm,
            "graph": graph,
            "answer": answer,
            "queries": queries,
            "seed": seed,
        }, metadata)

    def log_verify(self, suite: str, passed: bool, checks: int, failures: List[str]):
        """Registra o resultado de uma suíte de verificação"""
        self._emit(EventType.VERIFY, {
            "suite": suite,
            "passed": passed,
            "checks": checks,
            "failures": failures[:20],
            "num_failures": len(failures),
        })

    def log_error(self, error_type: str, error_message: str, context: Optional[Dict[str, Any]] = None):
        """Registra erro do laboratório"""
        self._emit(EventType.ERROR, {
            "error_type": error_type,
            "error_message": error_message,
            "context": context or {},
        })

    def _emit(self, event_type: EventType, data: Dict[str, Any], metadata: Optional[Dict[str, Any]] = None):
        event = AuditEvent(
            timestamp=datetime.now(timezone.utc).isoformat(),
            event_type=event_type,
            event_id=str(uuid.uuid4()),
            data=data,
            metadata=metadata or {},
        )
        self._write_event(event)

    def _write_event(self, event: AuditEvent):
        """Escreve evento no arquivo do dia"""
        with open(self._get_log_file(), "a", encoding="utf-8") as f:
            f.write(json.dumps(asdict(event), ensure_ascii=False, default=str) + "\n")

        self._update_stats(event)
        self._compress_old_logs()

    def _get_log_file(self) -> Path:
        today = datetime.now().strftime("%Y-%m-%d")
        return self.log_dir / f"{LOG_PREFIX}{today}.jsonl"

    def _update_stats(self, event: AuditEvent):
        self.stats["total_events"] += 1
        self.stats["last_event_time"] = event.timestamp

        by_type = self.stats["events_by_type"]
        by_type[event.event_type.value] = by_type.get(event.event_type.value, 0) + 1

    def _compress_old_logs(self, days_threshold: int = 7):
        """Compacta logs com mais de `days_threshold` dias"""
        threshold_date = datetime.now() - timedelta(days=days_threshold)

        for log_file in self.log_dir.glob(f"{LOG_PREFIX}*.jsonl"):
            try:
                file_date = datetime.strptime(log_file.stem.replace(LOG_PREFIX, ""), "%Y-%m-%d")
            except ValueError:
                continue

            if file_date >= threshold_date:
                continue
            gz_file = log_file.with_suffix(".jsonl.gz")
            try:
                if not gz_file.exists():
                    with open(log_file, "rb") as f_in, gzip.open(gz_file, "wb") as f_out:
                        f_out.writelines(f_in)
                log_file.unlink()
                logger.info("audit_log_compressed", file=log_file.name)
            except OSError as e:
                logger.warning("audit_log_compress_failed", file=log_file.name, error=str(e))

    def get_stats(self) -> Dict[str, Any]:
        """Retorna estatísticas de auditoria"""
        return {
            **self.stats,
            "active_log_files": len(list(self.log_dir.glob(f"{LOG_PREFIX}*.jsonl"))),
            "compressed_log_files": len(list(self.log_dir.glob(f"{LOG_PREFIX}*.jsonl.gz"))),
            "log_directory": str(self.log_dir),
        }

    def query_logs(
        self,
        event_type: Optional[EventType] = None,
        start_date: Optional[str] = None,
        end_date: Optional[str] = None,
        limit: int = 100,
    ) -> List[Dict[str, Any]]:
        """Consulta logs com filtros"""
        results: List[Dict[str, Any]] = []

        for log_file in sorted(self.log_dir.glob(f"{LOG_PREFIX}*.jsonl"), reverse=True):
            if len(results) >= limit:
                break
            with open(log_file, "r", encoding="utf-8") as f:
                for line in f:
                    if len(results) >= limit:
                        break
                    try:
                        event = json.loads(line)
                    except json.JSONDecodeError:
                        continue

                    if event_type and event.get("event_type") != event_type.value:
                        continue
                    if start_date and event.get("timestamp", "") < start_date:
                        continue
                    if end_date and event.get("timestamp", "") > end_date:
                        continue
                    results.append(event)

        return results


_logger_instance: Optional[AuditLogger] = None


def get_audit_logger() -> AuditLogger:
    """Retorna instância singleton do audit logger"""
    global _logger_instance
    if _logger_instance is None:
        _logger_instance = AuditLogger()
    return _logger_instance
