from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class AdversaryModel(str, Enum):
    """Attack model"""
    NONE = "none"
    STATIC = "static"
    DYNAMIC = "dynamic"


class DynamicPolicy(str, Enum):
    """What a dynamic adversary transmits in place of the requested payload"""
    HONEST = "honest"
    RERANDOMIZE = "rerandomize"
    IN_SUBSPACE = "in_subspace"
    OFF_SUBSPACE = "off_subspace"


class EventKind(str, Enum):
    """Simulator event types"""
    CORRUPT = "corrupt"
    REPAIR = "repair"
    NAIVE_REPAIR = "naive_repair"
    VERIFIED_REPAIR = "verified_repair"
    COLLECT = "collect"
    VERIFY = "verify"
    REPORT = "report"
    LRC_SWEEP = "lrc_sweep"
    LRC_GROUP_ERROR = "lrc_group_error"


class Expectation(str, Enum):
    SUCCESS = "success"
    FAILURE = "failure"
    ANY = "any"


class AdversarySpec(BaseModel):
    """Adversary section of a scenario"""
    model: AdversaryModel = Field(AdversaryModel.NONE, description="Attack model")
    compromised: List[int] = Field(default_factory=list, description="Compromised node indices")
    policy: DynamicPolicy = Field(DynamicPolicy.HONEST, description="Dynamic transmission policy")
    error_rank: Optional[int] = Field(
        None,
        ge=1,
        description="Rank over F_q of each static error (default alpha)"
    )
    corrupt_at_init: bool = Field(
        True,
        description="Apply static errors when the system starts instead of via corrupt events"
    )

    @model_validator(mode='after')
    def validate_model(self):
        if self.model == AdversaryModel.NONE and self.compromised:
            raise ValueError('compromised nodes given but adversary model is none')
        if len(set(self.compromised)) != len(self.compromised):
            raise ValueError('compromised node indices must be distinct')
        return self


class ScenarioEvent(BaseModel):
    """One step of a scenario"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {"kind": "collect", "nodes": [1, 2, 3], "expect": "success"}
        }
    )

    kind: EventKind
    node: Optional[int] = Field(None, description="Failed, corrupted or verified node")
    helpers: Optional[List[int]] = Field(None, description="Helper nodes (default: all others)")
    nodes: Optional[List[int]] = Field(None, description="Collector subset")
    erased: List[int] = Field(default_factory=list, description="Nodes the collector treats as erased")
    size: Optional[int] = Field(None, ge=0, description="Erasure pattern size for lrc_sweep")
    pattern: Optional[str] = Field(None, description="'all' or 'worst' for lrc_sweep")
    trials: int = Field(1, ge=1, description="Trials for lrc_group_error")
    repeat: int = Field(1, ge=1, description="Run the event this many times")
    expect: Expectation = Field(Expectation.ANY, description="Required outcome")

    @model_validator(mode='after')
    def validate_fields(self):
        needs_node = {EventKind.CORRUPT, EventKind.REPAIR, EventKind.NAIVE_REPAIR,
                      EventKind.VERIFIED_REPAIR, EventKind.LRC_GROUP_ERROR}
        if self.kind in needs_node and self.node is None:
            raise ValueError(f'{self.kind.value} event needs a node')
        if self.kind == EventKind.COLLECT and not self.nodes:
            raise ValueError('collect event needs nodes')
        if self.kind == EventKind.LRC_SWEEP and self.size is None:
            raise ValueError('lrc_sweep event needs a size')
        return self


class LrcSpec(BaseModel):
    m: int = Field(..., ge=2)
    k_out: int = Field(..., ge=1)
    r: int = Field(..., ge=1)
    N: Optional[int] = None


class ScenarioConfig(BaseModel):
    """
    A scenario file: code choice, parameters, adversary and event list.

    Validated before anything runs; violations name the failed constraint.
    """
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "name": "example4",
                "seed": 4,
                "code": "zigzag",
                "t": 1,
                "adversary": {"model": "static", "compromised": [1]},
                "events": [
                    {"kind": "repair", "node": 2},
                    {"kind": "collect", "nodes": [1, 2, 3], "expect": "success"}
                ]
            }
        }
    )

    name: str = Field(..., min_length=1)
    description: Optional[str] = None
    seed: int = Field(0, ge=0, lt=2 ** 64, description="Single source of randomness")
    code: str = Field("zigzag", description="zigzag, hadamard or lrc")
    q: Optional[int] = Field(None, description="Base field (default from config)")
    t: int = Field(0, ge=0, description="Adversary budget")
    scheme: str = Field("static", description="static or naive")
    ell: Optional[int] = Field(None, ge=1, description="Outer dimension for the naive scheme")
    enforce_bound: bool = True
    lrc: Optional[LrcSpec] = None
    input_file: Optional[str] = Field(None, description="File to store instead of random data")
    adversary: AdversarySpec = Field(default_factory=AdversarySpec)
    events: List[ScenarioEvent] = Field(default_factory=list)
    assert_static_bound: bool = Field(
        True,
        description="Check aggregate rank <= t*alpha after every event under static/no adversary"
    )

    @field_validator('code')
    @classmethod
    def validate_code(cls, v):
        if v not in ('zigzag', 'hadamard', 'lrc'):
            raise ValueError(f"code must be zigzag, hadamard or lrc, got '{v}'")
        return v

    @field_validator('scheme')
    @classmethod
    def validate_scheme(cls, v):
        if v not in ('static', 'naive'):
            raise ValueError(f"scheme must be static or naive, got '{v}'")
        return v

    @model_validator(mode='after')
    def validate_consistency(self):
        if len(self.adversary.compromised) > self.t:
            raise ValueError(
                f'|compromised| <= t violated ({len(self.adversary.compromised)} > {self.t})'
            )
        if self.code == 'lrc' and self.lrc is None:
            raise ValueError('lrc scenarios need an lrc section (m, k_out, r)')
        lrc_events = {EventKind.LRC_SWEEP, EventKind.LRC_GROUP_ERROR}
        for event in self.events:
            if (event.kind in lrc_events) != (self.code == 'lrc'):
                raise ValueError(f'{event.kind.value} event does not apply to code {self.code}')
        return self

    def event_summary(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for event in self.events:
            counts[event.kind.value] = counts.get(event.kind.value, 0) + event.repeat
        return counts
