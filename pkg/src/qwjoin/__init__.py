"""Continuous-time quantum walks on joins of weighted graphs.

The package computes walk transition matrices, eigenvalue supports, strong
cospectrality, periodicity, and perfect state transfer certificates, with
closed forms for joins that are cross-checked against direct spectral
computation at every call.
"""

from .arith import (
    QuadraticEigenvalue,
    classify_eigenvalues,
    nu2,
    reconstruct_rational,
    squarefree_part,
)
from .bounds import BoundReport, MimicrySummary, bound_sweep, equality_condition, mimicry_sweep
from .errors import (
    InconsistencyError,
    IntegerOverflowError,
    NumericError,
    PreconditionError,
)
from .graphio import (
    AnalysisReport,
    from_jsonable,
    load_graph,
    report_from_json,
    report_to_json,
    save_graph,
    to_jsonable,
)
from .graphs import (
    Connective,
    IteratedJoinSpec,
    WeightedGraph,
    disjoint_union,
    family,
    is_connected,
    is_regular,
    is_simple,
    iterated_join,
    iterated_vertex,
    join,
    parse_iterated_spec,
    self_join,
)
from .spectral import (
    JoinParams,
    SpectralDecomposition,
    decompose,
    eigenvalue_support,
    graph_matrix,
    iterated_join_support,
    join_params,
    join_support,
)
from .transfer import (
    InducedTransferReport,
    JoinPeriodRatio,
    PeriodCertificate,
    PSTCertificate,
    SupportPartition,
    SymbolicTime,
    double_cone_pst,
    graph_periodic,
    is_periodic,
    iterated_join_analysis,
    iterated_join_sign_partition,
    join_period_ratio,
    join_periodic,
    join_pst,
    join_strong_cospectral,
    minimum_period,
    pst_certificate,
    pst_induced,
    pst_preserved,
    self_join_analysis,
    strong_cospectral,
    threshold_transfer_search,
)
from .walk import alpha, in_T, join_entry_A, join_entry_L, transition_matrix, unitary_exp

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BoundReport",
    "Connective",
    "InducedTransferReport",
    "InconsistencyError",
    "IntegerOverflowError",
    "IteratedJoinSpec",
    "JoinParams",
    "JoinPeriodRatio",
    "MimicrySummary",
    "NumericError",
    "PSTCertificate",
    "PeriodCertificate",
    "PreconditionError",
    "QuadraticEigenvalue",
    "SpectralDecomposition",
    "SupportPartition",
    "SymbolicTime",
    "WeightedGraph",
    "alpha",
    "bound_sweep",
    "classify_eigenvalues",
    "decompose",
    "disjoint_union",
    "double_cone_pst",
    "eigenvalue_support",
    "equality_condition",
    "family",
    "from_jsonable",
    "graph_matrix",
    "graph_periodic",
    "in_T",
    "is_connected",
    "is_periodic",
    "is_regular",
    "is_simple",
    "iterated_join",
    "iterated_join_analysis",
    "iterated_join_sign_partition",
    "iterated_join_support",
    "iterated_vertex",
    "join",
    "join_entry_A",
    "join_entry_L",
    "join_params",
    "join_period_ratio",
    "join_periodic",
    "join_pst",
    "join_strong_cospectral",
    "join_support",
    "load_graph",
    "mimicry_sweep",
    "minimum_period",
    "nu2",
    "parse_iterated_spec",
    "pst_certificate",
    "pst_induced",
    "pst_preserved",
    "reconstruct_rational",
    "report_from_json",
    "report_to_json",
    "save_graph",
    "self_join",
    "self_join_analysis",
    "squarefree_part",
    "strong_cospectral",
    "threshold_transfer_search",
    "to_jsonable",
    "transition_matrix",
    "unitary_exp",
]
