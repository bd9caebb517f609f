"""
Módulo Core - Componentes fundamentais do QConn Lab
"""

from src.core.config import (
    Config,
    GroverConfig,
    get_config,
    reload_config
)

from src.core.errors import (
    QConnLabError,
    PromiseViolation,
    SearchError,
    RetryCapExceeded,
    SweepConfigError,
    RelationError
)

from src.core.ledger import QueryLedger

from src.core.graphs import (
    MatrixGraph,
    ListGraph,
    DfsResult,
    validate_graph,
    classical_connected,
    classical_strongly_connected
)

from src.core.grover import (
    SearchSpace,
    SearchOutcome,
    make_rng,
    grover_known_count,
    grover_unknown_count,
    find_min_index,
    find_min_value
)

__all__ = [
    # Config
    "Config",
    "GroverConfig",
    "get_config",
    "reload_config",

    # Errors
    "QConnLabError",
    "PromiseViolation",
    "SearchError",
    "RetryCapExceeded",
    "SweepConfigError",
    "RelationError",

    # Graphs
    "QueryLedger",
    "MatrixGraph",
    "ListGraph",
    "DfsResult",
    "validate_graph",
    "classical_connected",
    "classical_strongly_connected",

    # Grover
    "SearchSpace",
    "SearchOutcome",
    "make_rng",
    "grover_known_count",
    "grover_unknown_count",
    "find_min_index",
    "find_min_value",
]
