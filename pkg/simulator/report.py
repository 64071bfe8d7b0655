"""
Simulation reports

Turns a DssState into a SimulationReport: per-event bandwidth and aggregate
rank, node status against the verifier registry, the taint matrices of every
node, and the bounds the run was planned against. Output is deterministic so
reports can be compared byte for byte.
"""

import logging
from typing import List

from coding.concat import resilience_capacity
from coding.ff import rank_over_base
from models.params import Scheme
from models.report import BoundCheck, NodeStatus, SimulationReport
from models.scenario import AdversaryModel
from utils.config_loader import dump_yaml
from utils.helpers import matrix_rows
from .dss import DssState, aggregate_error_rank, static_sources, taint_matrix

logger = logging.getLogger(__name__)


def _bounds(state: DssState) -> List[BoundCheck]:
    p = state.params
    checks = []
    if 2 * p.t < p.k:
        capacity = resilience_capacity(p.alpha, p.beta, p.k, p.d, p.t)
        checks.append(BoundCheck(name="outer dimension <= resilience capacity",
                                 value=p.K, limit=capacity, holds=p.K <= capacity,
                                 enforced=p.enforce_bound))
    required = p.required_distance()
    name = "delta >= 2t*alpha+1" if p.scheme == Scheme.STATIC else "delta >= 2t*beta+(k-1)(alpha-beta)+1"
    checks.append(BoundCheck(name=name, value=p.delta, limit=required, holds=p.delta >= required,
                             enforced=p.enforce_bound))
    if state.adversary.model != AdversaryModel.DYNAMIC:
        limit = p.t * p.alpha
        checks.append(BoundCheck(name="max aggregate rank <= t*alpha", value=state.max_aggregate_rank,
                                 limit=limit, holds=state.max_aggregate_rank <= limit))
    return checks


def _nodes(state: DssState) -> List[NodeStatus]:
    statuses = []
    for j in state.node_ids:
        lost = j in state.lost
        statuses.append(NodeStatus(
            node=j,
            error_rank=0 if lost else rank_over_base(state.error_of(j)),
            signed_dimension=state.registry.dimension(j),
            signature_current=False if lost else state.registry.check(j, state.nodes[j]),
            compromised=j in state.adversary.compromised,
            lost=lost,
        ))
    return statuses


def _propagation(state: DssState):
    """'node <- source (kind at node)' -> rows of T"""
    propagation = {}
    for j in state.node_ids:
        for source_id in sorted(state.taint.get(j, {})):
            source = state.sources[source_id]
            key = f"{j} <- {source_id} ({source.kind} at {source.node})"
            propagation[key] = matrix_rows(state.taint[j][source_id])
    return propagation


def sim_report(state: DssState) -> SimulationReport:
    """Structured report of the run so far"""
    p = state.params
    bounds = _bounds(state)
    violations = [f"{b.name}: {b.value} vs {b.limit}" for b in bounds if b.enforced and not b.holds]
    report = SimulationReport(
        scenario=state.name,
        seed=state.seed,
        code=state.code.name,
        q=p.q,
        params=p.model_dump(mode="json"),
        modulus_poly=state.field.params.modulus_poly,
        adversary=state.adversary.describe(),
        events=list(state.event_log),
        nodes=_nodes(state),
        propagation=_propagation(state),
        bounds=bounds,
        total_bandwidth=int(sum(e.bandwidth for e in state.event_log)),
        max_aggregate_rank=state.max_aggregate_rank,
        final_aggregate_rank=aggregate_error_rank(state),
        notes=dict(state.code.notes),
        passed=not violations,
        violations=violations,
        first_violation=violations[0] if violations else None,
    )
    logger.debug(f"[{state.name}] report: {len(report.events)} events, "
                 f"max aggregate rank {report.max_aggregate_rank}")
    return report


def report_to_text(report: SimulationReport) -> str:
    """YAML with the model's field order"""
    return dump_yaml(report.model_dump(mode="json"))


def propagation_matrix(state: DssState, node: int, source_node: int):
    """Combined T carrying the static error of source_node into node"""
    alpha = state.params.alpha
    total = state.field.base.Zeros((alpha, alpha))
    for source_id in static_sources(state, source_node):
        total = total + taint_matrix(state, node, source_id)
    return total
