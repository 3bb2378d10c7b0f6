"""
Pydantic models for serialization and request validation in nzflow.

Provides JSON-ready shapes for verification violations, approximation
certificates and bench rows, plus validated requests for the MCP tools.
"""

import json
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from .graph import UNBOUNDED, ArcRef, Direction, KValue, mask_members


def parse_k(value: Any) -> KValue:
    """Parse a flow bound: an integer >= 2 or 'inf' for UNBOUNDED."""
    if value is UNBOUNDED:
        return UNBOUNDED
    if isinstance(value, str):
        token = value.strip().lower()
        if token in ("inf", "infinity", "∞"):
            return UNBOUNDED
        try:
            value = int(token)
        except ValueError:
            raise ValueError(f"k must be an integer >= 2 or 'inf', got '{value}'")
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"k must be an integer >= 2 or 'inf', got {value!r}")
    if value < 2:
        raise ValueError(f"k must be >= 2, got {value}")
    return value


def format_k(k: KValue) -> str:
    return "inf" if k is UNBOUNDED else str(k)


# ========== Violations ==========


class ViolationKind(str, Enum):
    """Kinds of verification failure."""

    CONSERVATION = "conservation"
    ZERO_EDGE = "zero_edge"
    RANGE_EXCEEDED = "range_exceeded"
    CUT_UNBALANCED = "cut_unbalanced"
    NEGATIVE_CYCLE = "negative_cycle"


class Violation(BaseModel):
    """
    Witness of a failed check.

    Attributes:
        kind: What failed.
        vertex: Unbalanced vertex (conservation).
        edge: Offending edge (zero_edge, range_exceeded).
        value: Offending value or excess, when meaningful.
        vertices: Starved side U of an unbalanced cut: k*|out(U)| < |cut(U)|,
            so the complement has more than (k-1)/k of the cut leaving it.
        arcs: Directed cycle as [edge_index, "+"|"-"] pairs (negative_cycle).
        weight: Total weight of the negative cycle.
        detail: Human readable explanation.
    """

    kind: ViolationKind
    vertex: Optional[int] = None
    edge: Optional[int] = None
    value: Optional[int] = None
    vertices: Optional[List[int]] = None
    arcs: Optional[List[Tuple[int, Literal["+", "-"]]]] = None
    weight: Optional[int] = None
    detail: str = ""

    @classmethod
    def conservation(cls, vertex: int, excess: int) -> "Violation":
        return cls(
            kind=ViolationKind.CONSERVATION,
            vertex=vertex,
            value=excess,
            detail=f"outflow minus inflow at vertex {vertex} is {excess}",
        )

    @classmethod
    def zero_edge(cls, edge: int) -> "Violation":
        return cls(kind=ViolationKind.ZERO_EDGE, edge=edge, value=0, detail=f"edge {edge} carries 0")

    @classmethod
    def range_exceeded(cls, edge: int, value: int, k: KValue) -> "Violation":
        return cls(
            kind=ViolationKind.RANGE_EXCEEDED,
            edge=edge,
            value=value,
            detail=f"|{value}| on edge {edge} exceeds k-1 for k={format_k(k)}",
        )

    @classmethod
    def cut_unbalanced(cls, mask: int, leaving: int, cut_size: int, k: KValue) -> "Violation":
        members = mask_members(mask)
        return cls(
            kind=ViolationKind.CUT_UNBALANCED,
            vertices=members,
            value=leaving,
            detail=(
                f"only {leaving} of {cut_size} cut edges leave {members}; "
                f"need at least {cut_size}/{format_k(k)}"
            ),
        )

    @classmethod
    def negative_cycle(cls, arcs: List[ArcRef], weight: int) -> "Violation":
        return cls(
            kind=ViolationKind.NEGATIVE_CYCLE,
            arcs=[(a.edge_index, a.direction.symbol) for a in arcs],
            weight=weight,
            detail=f"directed cycle of {len(arcs)} arcs with weight {weight} < 0",
        )

    def arc_refs(self) -> List[ArcRef]:
        return [
            ArcRef(i, Direction.FORWARD if s == "+" else Direction.BACKWARD)
            for i, s in (self.arcs or [])
        ]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)


# ========== Certificates ==========


class CertificateModel(BaseModel):
    """Serialized approximation certificate (rationals as 'num/den')."""

    algorithm: str
    lp_value: str = Field(pattern=r"^-?\d+/\d+$")
    lp_source: Literal["lp", "brute_force", "edge_costs"] = "lp"
    output_cost: int
    claimed_ratio: str = Field(pattern=r"^-?\d+/\d+$")
    flow_bound: int = Field(ge=2)
    oracle_value: Optional[int] = None

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)


class BenchRow(BaseModel):
    """One line of the bench table."""

    instance: str
    algorithm: str
    lp_value: str
    output_cost: Optional[int] = None
    ratio: Optional[str] = None
    flow_bound: Optional[int] = None
    runtime_seconds: float = 0.0
    error: Optional[str] = None


def schema_json(name: str) -> str:
    """Return the JSON schema of a serialized artifact by name."""
    models: Dict[str, Any] = {
        "certificate": CertificateModel,
        "violation": Violation,
        "bench": BenchRow,
    }
    if name not in models:
        raise ValueError(f"unknown schema '{name}', expected one of {sorted(models)}")
    return json.dumps(models[name].model_json_schema(), indent=2)


# ========== Tool Request Models ==========


class SolveRequest(BaseModel):
    """Request model for solving an instance."""

    problem: Literal["wnzf", "wcbo", "swnzf", "nz6"]
    graph_text: str = Field(min_length=1)
    k: Union[int, str] = 6

    @field_validator("problem", mode="before")
    @classmethod
    def normalize_problem(cls, v: Any) -> Any:
        """Lower-case the problem name."""
        return v.strip().lower() if isinstance(v, str) else v

    @field_validator("k")
    @classmethod
    def validate_k(cls, v: Union[int, str]) -> Union[int, str]:
        """Accept integers >= 2 or 'inf'."""
        parsed = parse_k(v)
        return "inf" if parsed is UNBOUNDED else parsed

    @model_validator(mode="after")
    def validate_problem_k(self) -> "SolveRequest":
        """Enforce the k range each algorithm supports."""
        if self.problem == "wcbo" and self.k == "inf":
            raise ValueError("wcbo needs a finite k")
        if self.problem in ("wnzf", "wcbo") and self.k != "inf" and int(self.k) < 6:
            raise ValueError(f"{self.problem} needs k >= 6, got {self.k}")
        return self

    @property
    def k_value(self) -> KValue:
        return parse_k(self.k)


class VerifyRequest(BaseModel):
    """Request model for verifying a solution."""

    kind: Literal["flow", "cbo", "partial-cbo", "local-opt"]
    graph_text: str = Field(min_length=1)
    solution_text: str = Field(min_length=1)
    k: Union[int, str] = 6
    method: Literal["hoffman", "brute"] = "hoffman"

    @field_validator("k")
    @classmethod
    def validate_k(cls, v: Union[int, str]) -> Union[int, str]:
        """Accept integers >= 2 or 'inf'."""
        parsed = parse_k(v)
        return "inf" if parsed is UNBOUNDED else parsed

    @property
    def k_value(self) -> KValue:
        return parse_k(self.k)


class GenerateRequest(BaseModel):
    """Request model for generating an instance."""

    kind: Literal["cycle", "sat-completion", "nae3sat", "random"]
    n: int = Field(default=3, ge=2, le=10_000)
    m: Optional[int] = Field(default=None, ge=1)
    k: int = Field(default=4, ge=2)
    seed: int = 0
    dimacs: Optional[str] = None
    max_cost: int = Field(default=20, ge=0)
    symmetric: bool = False

    @model_validator(mode="after")
    def validate_inputs(self) -> "GenerateRequest":
        """Formula-based generators need DIMACS text."""
        if self.kind in ("sat-completion", "nae3sat") and not self.dimacs:
            raise ValueError(f"'{self.kind}' requires a DIMACS formula")
        return self
