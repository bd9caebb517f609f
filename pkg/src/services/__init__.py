"""
Módulo Services - Algoritmos, instâncias, adversário e varreduras do QConn Lab
"""

from src.services.connectivity_service import (
    AlgoReport,
    q_spanning_tree,
    q_connected,
    q_connected_list,
    q_connected_learning,
    q_strongly_connected_matrix,
    q_strongly_connected_list
)

from src.services.instance_service import (
    ParitySpec,
    GadgetSpec,
    CycleSpec,
    gen_parity_graph,
    gen_origin_gadget,
    gen_cycle_instance,
    two_swap
)

from src.services.adversary_service import (
    Relation,
    AdversaryParams,
    adversary_bound,
    cycle_relation_params,
    gadget_relation_params
)

from src.services.harness_service import (
    SweepConfig,
    TrialRecord,
    FitResult,
    run_sweep,
    fit_exponent,
    emit_csv,
    emit_report
)

__all__ = [
    # Connectivity
    "AlgoReport",
    "q_spanning_tree",
    "q_connected",
    "q_connected_list",
    "q_connected_learning",
    "q_strongly_connected_matrix",
    "q_strongly_connected_list",

    # Instances
    "ParitySpec",
    "GadgetSpec",
    "CycleSpec",
    "gen_parity_graph",
    "gen_origin_gadget",
    "gen_cycle_instance",
    "two_swap",

    # Adversary
    "Relation",
    "AdversaryParams",
    "adversary_bound",
    "cycle_relation_params",
    "gadget_relation_params",

    # Harness
    "SweepConfig",
    "TrialRecord",
    "FitResult",
    "run_sweep",
    "fit_exponent",
    "emit_csv",
    "emit_report",
]
