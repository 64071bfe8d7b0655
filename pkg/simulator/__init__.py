"""
Simulator package

Deterministic simulation of a storage system running the concatenated
Gabidulin / MDS array code scheme:
- Node lifecycle: corrupt, fail and repair, collect
- Static and dynamic adversaries
- Naive dynamic repair and the subspace verifier protocol
- Exact error-propagation accounting and structured reports
"""

from .adversary import Adversary, TransmissionRequest, POLICIES
from .verifier import SubspaceRegistry, verifier_check
from .dss import (
    DssState,
    ErrorSource,
    sim_init,
    sim_corrupt,
    sim_fail_repair,
    sim_naive_repair,
    sim_verified_repair,
    sim_collect,
    sim_verify,
    sim_snapshot,
    aggregate_error_rank,
    taint_matrix,
    assert_static_invariant,
    replay
)
from .report import sim_report, report_to_text, propagation_matrix
from .scenario import ScenarioResult, run_scenario, build_system

__all__ = [
    'Adversary',
    'TransmissionRequest',
    'POLICIES',
    'SubspaceRegistry',
    'verifier_check',
    'DssState',
    'ErrorSource',
    'sim_init',
    'sim_corrupt',
    'sim_fail_repair',
    'sim_naive_repair',
    'sim_verified_repair',
    'sim_collect',
    'sim_verify',
    'sim_snapshot',
    'aggregate_error_rank',
    'taint_matrix',
    'assert_static_invariant',
    'replay',
    'sim_report',
    'report_to_text',
    'propagation_matrix',
    'ScenarioResult',
    'run_scenario',
    'build_system'
]
