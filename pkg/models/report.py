from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class EventRecord(BaseModel):
    """One entry of the append-only event log"""
    step: int = Field(..., ge=0, description="Monotone step counter")
    kind: str
    args: Dict[str, Any] = Field(default_factory=dict)
    outcome: str = Field("ok", description="ok, success, failure, detected or skipped")
    bandwidth: int = Field(0, ge=0, description="Symbols over F_{q^N} downloaded")
    aggregate_rank: int = Field(0, ge=0, description="Rank of all node errors after the event")
    detail: Dict[str, Any] = Field(default_factory=dict)


class BoundCheck(BaseModel):
    """A bound evaluated on the scenario's parameters"""
    name: str
    value: int
    limit: int
    holds: bool
    enforced: bool = Field(True, description="A failing enforced bound fails the run")


class NodeStatus(BaseModel):
    node: int
    error_rank: int = Field(..., ge=0, description="Rank over F_q of content - truth")
    signed_dimension: int = Field(..., ge=0, description="Dimension of the registered subspace")
    signature_current: bool = Field(..., description="Content lies in the registered subspace")
    compromised: bool = False
    lost: bool = False


class SimulationReport(BaseModel):
    """Structured outcome of a scenario run; dumped as YAML with stable key order"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "scenario": "example4",
                "seed": 4,
                "code": "zigzag_5_3",
                "q": 3,
                "max_aggregate_rank": 4,
                "passed": True
            }
        }
    )

    scenario: str
    seed: int
    code: str
    q: int
    params: Dict[str, Any] = Field(default_factory=dict)
    modulus_poly: List[int] = Field(default_factory=list)
    adversary: Dict[str, Any] = Field(default_factory=dict)
    events: List[EventRecord] = Field(default_factory=list)
    nodes: List[NodeStatus] = Field(default_factory=list)
    propagation: Dict[str, List[str]] = Field(
        default_factory=dict,
        description="Taint matrices T (node <- source) as rows of F_q digits"
    )
    bounds: List[BoundCheck] = Field(default_factory=list)
    total_bandwidth: int = 0
    max_aggregate_rank: int = 0
    final_aggregate_rank: int = 0
    notes: Dict[str, str] = Field(default_factory=dict)
    passed: bool = True
    violations: List[str] = Field(default_factory=list)
    first_violation: Optional[str] = None
