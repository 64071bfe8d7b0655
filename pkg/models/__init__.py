"""
Data models package for rankstore
"""

from .params import (
    Scheme,
    FieldParams,
    SystemParams,
    CapacityRow
)
from .scenario import (
    AdversaryModel,
    DynamicPolicy,
    EventKind,
    Expectation,
    AdversarySpec,
    ScenarioEvent,
    LrcSpec,
    ScenarioConfig
)
from .report import (
    EventRecord,
    BoundCheck,
    NodeStatus,
    SimulationReport
)

__all__ = [
    # Parameter models
    'Scheme',
    'FieldParams',
    'SystemParams',
    'CapacityRow',

    # Scenario models
    'AdversaryModel',
    'DynamicPolicy',
    'EventKind',
    'Expectation',
    'AdversarySpec',
    'ScenarioEvent',
    'LrcSpec',
    'ScenarioConfig',

    # Report models
    'EventRecord',
    'BoundCheck',
    'NodeStatus',
    'SimulationReport'
]
