"""
Custom exceptions for nzflow.
Provides domain-specific error handling for graphs, flows and solvers.

Every exception carries an ``exit_code`` used by the command line front end:
2 for malformed input, 3 for failed preconditions.
"""

from typing import Any, Optional


class NZFlowError(Exception):
    """Base exception for all nzflow errors."""

    exit_code = 3


# ========== Graph Errors ==========


class IndexOutOfRangeError(NZFlowError):
    """Raised when a vertex index is outside [0, n)."""

    exit_code = 2

    def __init__(self, vertex: int, n: int):
        self.vertex = vertex
        self.n = n
        super().__init__(f"Vertex index {vertex} out of range for n={n}")


class SelfLoopError(NZFlowError):
    """Raised when an edge has identical endpoints."""

    exit_code = 2

    def __init__(self, edge_index: int, vertex: int):
        self.edge_index = edge_index
        self.vertex = vertex
        super().__init__(f"Edge {edge_index} is a self-loop at vertex {vertex}")


# ========== Flow Errors ==========


class GraphMismatchError(NZFlowError):
    """Raised when two flows or a flow and a graph disagree on edge count."""

    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"Graph mismatch: expected {expected} edges, got {got}")


class ConservationViolatedError(NZFlowError):
    """Raised when inflow differs from outflow at a vertex."""

    def __init__(self, vertex: int, excess: int):
        self.vertex = vertex
        self.excess = excess
        super().__init__(f"Flow conservation violated at vertex {vertex}: excess {excess}")


class NonpositiveValueError(NZFlowError):
    """Raised when an oriented edge is given a value below 1."""

    def __init__(self, edge_index: int, value: int):
        self.edge_index = edge_index
        self.value = value
        super().__init__(f"Edge {edge_index} has nonpositive value {value}")


class SupportNotCoveringError(NZFlowError):
    """Raised when two flows to be composed are both zero on an edge."""

    def __init__(self, edge_index: int):
        self.edge_index = edge_index
        super().__init__(f"Edge {edge_index} is outside both supports")


class BoundViolatedError(NZFlowError):
    """Raised when a flow value does not fit the declared k."""

    def __init__(self, edge_index: int, value: int, k: int):
        self.edge_index = edge_index
        self.value = value
        self.k = k
        super().__init__(f"Edge {edge_index} has |{value}| > {k - 1} (k={k})")


class ForbiddenArcUsedError(NZFlowError):
    """Raised when a solution uses an arc with FORBIDDEN cost."""

    def __init__(self, arc: Any):
        self.arc = arc
        super().__init__(f"Arc {arc} is forbidden but carries flow")


# ========== Precondition and Solver Errors ==========


class NotTwoEdgeConnectedError(NZFlowError):
    """Raised when an algorithm needs a 2-edge-connected graph."""

    def __init__(self, bridge: Optional[int] = None, reason: str = ""):
        self.bridge = bridge
        self.reason = reason
        detail = f"edge {bridge} is a bridge" if bridge is not None else reason
        super().__init__(f"Graph is not 2-edge-connected: {detail}")


class InfeasibleError(NZFlowError):
    """Raised when a circulation or LP has no feasible solution."""

    def __init__(self, operation: str, reason: str, certificate: Any = None):
        self.operation = operation
        self.reason = reason
        self.certificate = certificate
        super().__init__(f"'{operation}' is infeasible: {reason}")


class StructureViolationError(NZFlowError):
    """Raised when an LP point lacks the expected extreme-point structure."""

    def __init__(self, edge_index: int, detail: str):
        self.edge_index = edge_index
        self.detail = detail
        super().__init__(f"Extreme-point structure violated on edge {edge_index}: {detail}")


class NotCutBalancedError(NZFlowError):
    """Raised when an orientation fails the cut-balance condition."""

    def __init__(self, witness: Any, k: Any):
        self.witness = witness
        self.k = k
        super().__init__(f"Orientation is not {k}-cut-balanced; witness cut {witness}")


class BudgetExceededError(NZFlowError):
    """Raised when an exhaustive search runs out of nodes."""

    def __init__(self, operation: str, budget: int):
        self.operation = operation
        self.budget = budget
        super().__init__(f"'{operation}' exceeded its search budget of {budget} nodes")


class NotNZ6FlowError(NZFlowError):
    """Raised when an input that must be a nowhere-zero 6-flow is not one."""

    def __init__(self, violation: Any):
        self.violation = violation
        super().__init__(f"Input is not a nowhere-zero 6-flow: {violation}")


class AsymmetricCostError(NZFlowError):
    """Raised when symmetric costs are required but an edge differs."""

    exit_code = 2

    def __init__(self, edge_index: int):
        self.edge_index = edge_index
        super().__init__(f"Costs are not symmetric on edge {edge_index}")


# ========== Formula Errors ==========


class NotRestrictedSatError(NZFlowError):
    """Raised when a variable occurs in more than three clauses."""

    def __init__(self, variable: int, occurrences: int):
        self.variable = variable
        self.occurrences = occurrences
        super().__init__(
            f"Variable x{variable} occurs {occurrences} times; restricted SAT allows 3"
        )


class NotNae3SatError(NZFlowError):
    """Raised when a clause does not have exactly three literals."""

    def __init__(self, clause_index: int, size: int):
        self.clause_index = clause_index
        self.size = size
        super().__init__(f"Clause {clause_index} has {size} literals, expected 3")


class KTooSmallError(NZFlowError):
    """Raised when a generator or solver is asked for an unsupported k."""

    def __init__(self, k: Any, minimum: int):
        self.k = k
        self.minimum = minimum
        super().__init__(f"k={k} is too small; need k >= {minimum}")


class AssignmentNotNaeSatisfyingError(NZFlowError):
    """Raised when an assignment leaves a clause all-equal."""

    def __init__(self, clause_index: int):
        self.clause_index = clause_index
        super().__init__(f"Assignment does not NAE-satisfy clause {clause_index}")


# ========== Input and Configuration Errors ==========


class InvalidParameterError(NZFlowError):
    """Raised when invalid parameters are provided."""

    exit_code = 2

    def __init__(self, param_name: str, param_value: Any, expected: str):
        self.param_name = param_name
        self.param_value = param_value
        self.expected = expected
        super().__init__(
            f"Invalid parameter '{param_name}': got {param_value!r}, expected {expected}"
        )


class FormatError(NZFlowError):
    """Raised when a text artifact cannot be parsed."""

    exit_code = 2

    def __init__(self, source: str, line_number: int, reason: str):
        self.source = source
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"{source}:{line_number}: {reason}")


class ConfigError(NZFlowError):
    """Raised when configuration is invalid or missing."""

    exit_code = 2

    def __init__(self, config_file: str, reason: str):
        self.config_file = config_file
        self.reason = reason
        super().__init__(f"Configuration error in '{config_file}': {reason}")


class SolverOperationError(NZFlowError):
    """Raised when a tool-level solver operation fails."""

    def __init__(self, operation: str, reason: str):
        self.operation = operation
        self.reason = reason
        super().__init__(f"Solver operation '{operation}' failed: {reason}")
