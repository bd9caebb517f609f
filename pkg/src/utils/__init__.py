"""
Utils Module - Utilitários diversos
"""

from src.utils.graph_io import read_graph, write_graph, parse_graph, format_graph
from src.utils.validator import InvariantValidator, ValidationResult
from src.utils.audit_logger import AuditLogger, get_audit_logger

__all__ = [
    "read_graph",
    "write_graph",
    "parse_graph",
    "format_graph",
    "InvariantValidator",
    "ValidationResult",
    "AuditLogger",
    "get_audit_logger",
]
