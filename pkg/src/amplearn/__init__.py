"""Desk-scale laboratory for amplify-learn quantum search.

Statevector core, standard and previous-output-reflection amplitude
amplification, a variational state learner with reflection synthesis, the
resource-ledger protocol, a bipartite signaling harness, and learning-theory
bound machinery, behind a deterministic CSV-emitting CLI.
"""

from ._backend import backend_name
from .complexity import (
    BoundReport,
    DiscriminationReport,
    PackingSet,
    StateClassSpec,
    covering_log_bound,
    discrimination_experiment,
    fano_lower,
    greedy_packing,
    holevo_chi,
    sample_lower_bound,
    sample_upper_bound,
    universal_lock,
)
from .learner import (
    AnsatzLayout,
    AnsatzParams,
    CopyBudgetError,
    CopySupplier,
    ExactPreparation,
    LearnerConfig,
    LearnReport,
    default_layout,
    estimate_overlap,
    gate_complexity,
    learn_state,
    prepare,
    synthesized_reflection_apply,
    uniform_preparation_params,
)
from .nosignal import (
    AliceProgram,
    BipartiteState,
    SignalReport,
    bob_phase,
    helstrom_bias,
    kickback_check,
    magic_reflection,
    max_entangled,
    run_signaling_protocol,
)
from .protocol import (
    GateBoundReport,
    ProtocolConfig,
    ProtocolResult,
    QueryBoundReport,
    ResourceLedger,
    TriangleReport,
    check_gate_bound,
    check_query_bound,
    run_amplify_learn,
    triangle_report,
)
from .qcore import (
    DensityMatrix,
    DimensionMismatchError,
    Ensemble,
    PureState,
    householder_apply,
    no_reflection_witness,
    partial_trace,
    pure_trace_distance,
    trace_distance,
    von_neumann_entropy,
)
from .search import (
    Oracle,
    SearchTrajectory,
    apply_oracle,
    cubic_step,
    grover_step,
    grover_success_curve,
    rounds_to_constant,
    run_grover,
    run_ideal_log_search,
)

__version__ = "0.1.0"

__all__ = [
    "AliceProgram",
    "AnsatzLayout",
    "AnsatzParams",
    "BipartiteState",
    "BoundReport",
    "CopyBudgetError",
    "CopySupplier",
    "DensityMatrix",
    "DimensionMismatchError",
    "DiscriminationReport",
    "Ensemble",
    "ExactPreparation",
    "GateBoundReport",
    "LearnReport",
    "LearnerConfig",
    "Oracle",
    "PackingSet",
    "ProtocolConfig",
    "ProtocolResult",
    "PureState",
    "QueryBoundReport",
    "ResourceLedger",
    "SearchTrajectory",
    "SignalReport",
    "StateClassSpec",
    "TriangleReport",
    "apply_oracle",
    "backend_name",
    "bob_phase",
    "check_gate_bound",
    "check_query_bound",
    "covering_log_bound",
    "cubic_step",
    "default_layout",
    "discrimination_experiment",
    "estimate_overlap",
    "fano_lower",
    "gate_complexity",
    "greedy_packing",
    "grover_step",
    "grover_success_curve",
    "helstrom_bias",
    "holevo_chi",
    "householder_apply",
    "kickback_check",
    "learn_state",
    "magic_reflection",
    "max_entangled",
    "no_reflection_witness",
    "partial_trace",
    "prepare",
    "pure_trace_distance",
    "rounds_to_constant",
    "run_amplify_learn",
    "run_grover",
    "run_ideal_log_search",
    "run_signaling_protocol",
    "sample_lower_bound",
    "sample_upper_bound",
    "synthesized_reflection_apply",
    "trace_distance",
    "triangle_report",
    "uniform_preparation_params",
    "universal_lock",
    "von_neumann_entropy",
]
