"""
Core modules for nzflow.
Provides configuration, exceptions, the graph and flow types, text formats
and serialization models.
"""

from .config import ConfigManager, NZFlowConfig, get_config, ensure_output_directory
from .exceptions import (
    NZFlowError,
    IndexOutOfRangeError,
    SelfLoopError,
    GraphMismatchError,
    ConservationViolatedError,
    NonpositiveValueError,
    SupportNotCoveringError,
    BoundViolatedError,
    ForbiddenArcUsedError,
    NotTwoEdgeConnectedError,
    InfeasibleError,
    StructureViolationError,
    NotCutBalancedError,
    BudgetExceededError,
    NotNZ6FlowError,
    AsymmetricCostError,
    NotRestrictedSatError,
    NotNae3SatError,
    KTooSmallError,
    AssignmentNotNaeSatisfyingError,
    InvalidParameterError,
    FormatError,
    ConfigError,
    SolverOperationError,
)
from .graph import (
    FORBIDDEN,
    UNBOUNDED,
    ArcRef,
    CostFunction,
    Direction,
    Graph,
    Orientation,
    PartialOrientation,
    build_graph,
    cut_edges,
    is_two_edge_connected,
    orientation_cost,
    out_arcs,
)
from .flow import (
    Flow,
    compose_nowhere_zero,
    extend,
    flow_cost,
    negate,
    scale_add,
    support_orientation,
)
from .models import Violation, ViolationKind, CertificateModel, parse_k, format_k

__all__ = [
    # Config
    "ConfigManager",
    "NZFlowConfig",
    "get_config",
    "ensure_output_directory",
    # Exceptions
    "NZFlowError",
    "IndexOutOfRangeError",
    "SelfLoopError",
    "GraphMismatchError",
    "ConservationViolatedError",
    "NonpositiveValueError",
    "SupportNotCoveringError",
    "BoundViolatedError",
    "ForbiddenArcUsedError",
    "NotTwoEdgeConnectedError",
    "InfeasibleError",
    "StructureViolationError",
    "NotCutBalancedError",
    "BudgetExceededError",
    "NotNZ6FlowError",
    "AsymmetricCostError",
    "NotRestrictedSatError",
    "NotNae3SatError",
    "KTooSmallError",
    "AssignmentNotNaeSatisfyingError",
    "InvalidParameterError",
    "FormatError",
    "ConfigError",
    "SolverOperationError",
    # Graph
    "FORBIDDEN",
    "UNBOUNDED",
    "ArcRef",
    "CostFunction",
    "Direction",
    "Graph",
    "Orientation",
    "PartialOrientation",
    "build_graph",
    "cut_edges",
    "is_two_edge_connected",
    "orientation_cost",
    "out_arcs",
    # Flow
    "Flow",
    "compose_nowhere_zero",
    "extend",
    "flow_cost",
    "negate",
    "scale_add",
    "support_orientation",
    # Models
    "Violation",
    "ViolationKind",
    "CertificateModel",
    "parse_k",
    "format_k",
]
