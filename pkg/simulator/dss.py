"""
Distributed storage simulator

Runs the concatenated scheme through explicit fail / repair / collect steps
while tracking, exactly, how adversarial errors spread. Every deviation from
the truth is registered as an error source y_s (a vector over F_{q^N}); each
node keeps F_q matrices T with content - truth = sum_s y_s T_s.

All randomness comes from one numpy Generator seeded by the scenario, so a
state can be replayed from its command list.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from coding.array_codes import ArrayCode, RepairPlan, ac_repair_from_downloads
from coding.concat import StoredFile, collect, naive_repair_decode, store
from coding.errors import InvariantViolation, ParameterError
from coding.ff import apply_base_map, get_field, rank_over_base
from coding.gabidulin import DecodeFailure
from models.params import SystemParams
from models.report import EventRecord
from models.scenario import AdversaryModel, AdversarySpec
from .adversary import Adversary, TransmissionRequest
from .verifier import SubspaceRegistry, verifier_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ErrorSource:
    """A registered adversarial error vector"""
    source_id: int
    node: int
    kind: str
    vector: Any


class DssState:
    """Node contents, truth, taint bookkeeping, verifier registry and the event log"""

    def __init__(self, params: SystemParams, code: ArrayCode, file: StoredFile,
                 adversary_spec: AdversarySpec, seed: int, name: str = "scenario"):
        self.params = params
        self.code = code
        self.file = file
        self.seed = seed
        self.name = name
        self.field = get_field(params.q, params.N)
        self.rng = np.random.default_rng(seed)
        self.adversary = Adversary(adversary_spec, params.t, params.n, self.field, self.rng)
        self.truth: Dict[int, Any] = {}
        self.nodes: Dict[int, Any] = {}
        self.lost: Set[int] = set()
        self.registry = SubspaceRegistry()
        self.sources: List[ErrorSource] = []
        self.taint: Dict[int, Dict[int, Any]] = {}
        self.event_log: List[EventRecord] = []
        self.commands: List[Tuple[str, Dict[str, Any]]] = []
        self.max_aggregate_rank = 0

    @property
    def node_ids(self) -> List[int]:
        return list(range(1, self.params.n + 1))

    def error_of(self, node: int):
        return self.nodes[node] - self.truth[node]

    def register_source(self, node: int, kind: str, vector) -> int:
        source_id = len(self.sources)
        self.sources.append(ErrorSource(source_id, node, kind, vector))
        return source_id


def _add_taint(taint: Dict[int, Any], source_id: int, T):
    if source_id in taint:
        T = taint[source_id] + T
    if np.any(T != 0):
        taint[source_id] = T
    else:
        taint.pop(source_id, None)


def aggregate_error_rank(state: DssState) -> int:
    """Rank over F_q of all node errors taken together"""
    errors = [state.error_of(j) for j in state.node_ids if j not in state.lost]
    if not errors:
        return 0
    return rank_over_base(np.concatenate(errors))


def taint_matrix(state: DssState, node: int, source_id: int):
    """T with the part of node's error coming from one source equal to y_s T"""
    source = state.sources[source_id]
    T = state.taint.get(node, {}).get(source_id)
    if T is None:
        return state.field.base.Zeros((np.atleast_1d(source.vector).size, state.params.alpha))
    return T


def static_sources(state: DssState, node: int) -> List[int]:
    return [s.source_id for s in state.sources if s.node == node and s.kind == "static"]


def assert_static_invariant(state: DssState):
    """Aggregate rank <= t*alpha; only meaningful without a dynamic adversary"""
    if state.adversary.model == AdversaryModel.DYNAMIC:
        return
    bound = state.params.t * state.params.alpha
    rank = aggregate_error_rank(state)
    if rank > bound:
        raise InvariantViolation(f"aggregate error rank {rank} exceeds t*alpha = {bound}")


def _record(state: DssState, kind: str, args: Dict[str, Any], outcome: str = "ok",
            bandwidth: int = 0, detail: Optional[Dict[str, Any]] = None) -> EventRecord:
    rank = aggregate_error_rank(state)
    state.max_aggregate_rank = max(state.max_aggregate_rank, rank)
    record = EventRecord(step=len(state.event_log), kind=kind, args=args, outcome=outcome,
                         bandwidth=bandwidth, aggregate_rank=rank, detail=detail or {})
    state.event_log.append(record)
    logger.debug(f"[{state.name}] step {record.step}: {kind} {args} -> {outcome}")
    return record


def _sign(state: DssState, node: int):
    state.registry.sign(node, state.nodes[node])


def _install(state: DssState, node: int, content, taint: Dict[int, Any]):
    state.nodes[node] = content
    state.taint[node] = taint
    state.lost.discard(node)
    _sign(state, node)


# ---------------------------------------------------------------------------
# Initialization
# ---------------------------------------------------------------------------

def sim_init(params: SystemParams, code: ArrayCode, file: StoredFile,
             adversary: Optional[AdversarySpec] = None, seed: int = 0,
             name: str = "scenario") -> DssState:
    """
    Store the file, sign every node, and let a static adversary apply its
    one-time corruptions (unless the adversary spec defers them to corrupt events).
    """
    adversary = adversary or AdversarySpec()
    state = DssState(params, code, file, adversary, seed, name)
    contents = store(params, file, code)
    for j in state.node_ids:
        state.truth[j] = contents[j - 1].copy()
        state.nodes[j] = contents[j - 1].copy()
        state.taint[j] = {}
        _sign(state, j)
    _record(state, "init", {"seed": seed}, detail=state.adversary.describe())
    logger.info(f"[{name}] stored {params.file_size} digits on {params.n} nodes ({code.name})")

    if state.adversary.is_static and adversary.corrupt_at_init:
        for node in sorted(state.adversary.compromised):
            _corrupt(state, node, None)
    return state


def _corrupt(state: DssState, node: int, error):
    alpha = state.params.alpha
    if error is None:
        error = state.adversary.static_error(node, alpha)
    else:
        state.adversary.claim_corruption(node)
        error = state.field.ext(np.atleast_1d(error))
        if error.size != alpha:
            raise ParameterError(f"static error must have {alpha} symbols")
    source_id = state.register_source(node, "static", error)
    state.nodes[node] = state.nodes[node] + error
    _add_taint(state.taint[node], source_id, state.field.base.Identity(alpha))
    _record(state, "corrupt", {"node": node},
            detail={"error_rank": rank_over_base(error), "source": source_id})


def sim_corrupt(state: DssState, node: int, error=None) -> DssState:
    """Static adversary overwrites a compromised node once: content += error"""
    state.commands.append(("corrupt", {"node": node, "error": error}))
    _corrupt(state, node, error)
    return state


# ---------------------------------------------------------------------------
# Repairs
# ---------------------------------------------------------------------------

def _helpers(state: DssState, failed: int, helpers: Optional[Sequence[int]]) -> Optional[List[int]]:
    if not 1 <= failed <= state.params.n:
        raise ParameterError(f"node {failed} outside [1, {state.params.n}]")
    if helpers is None:
        available = [j for j in state.node_ids if j != failed and j not in state.lost]
        return None if len(available) == state.params.n - 1 else available
    helpers = sorted(helpers)
    if failed in helpers:
        raise ParameterError("the failed node cannot help its own repair")
    unavailable = [h for h in helpers if h in state.lost]
    if unavailable:
        raise ParameterError(f"helpers {unavailable} are lost")
    return helpers


def _transmissions(state: DssState, plan: RepairPlan, event: str):
    """(actual, honest) payload of every helper"""
    actual, honest = {}, {}
    for h in plan.helpers:
        V = plan.download_matrices[h]
        honest[h] = apply_base_map(state.nodes[h], V)
        request = TransmissionRequest(event, h, V, honest[h], state.nodes[h])
        actual[h] = state.adversary.transmit(request)
    return actual, honest


def _propagate(state: DssState, plan: RepairPlan, actual, honest):
    """Repaired content and its taint from the helpers' payloads"""
    content = ac_repair_from_downloads(plan, actual)
    taint: Dict[int, Any] = {}
    slices = plan.payload_slices()
    for h in plan.helpers:
        R_h = plan.reconstruct[slices[h]]
        through = plan.download_matrices[h] @ R_h
        for source_id, T in state.taint[h].items():
            _add_taint(taint, source_id, T @ through)
        delta = actual[h] - honest[h]
        if np.any(delta != 0):
            source_id = state.register_source(h, "transmission", delta)
            _add_taint(taint, source_id, R_h)
    return content, taint


def sim_fail_repair(state: DssState, failed: int, helpers: Optional[Sequence[int]] = None) -> DssState:
    """Fail a node and rebuild it with the inner code's repair plan"""
    state.commands.append(("repair", {"failed": failed, "helpers": helpers}))
    chosen = _helpers(state, failed, helpers)
    plan = state.code.plan(failed, chosen)
    actual, honest = _transmissions(state, plan, "repair")
    content, taint = _propagate(state, plan, actual, honest)
    _install(state, failed, content, taint)
    _record(state, "repair", {"node": failed, "helpers": list(plan.helpers)},
            bandwidth=plan.bandwidth,
            detail={"strategy": plan.strategy, "error_rank": rank_over_base(state.error_of(failed))})
    return state


def _restore(state: DssState, node: int, reencoded):
    """Install a re-encoded block, registering any residual against the truth"""
    content = reencoded[node - 1]
    residual = content - state.truth[node]
    taint: Dict[int, Any] = {}
    if np.any(residual != 0):
        source_id = state.register_source(node, "residual", residual)
        _add_taint(taint, source_id, state.field.base.Identity(state.params.alpha))
    _install(state, node, content, taint)


def sim_naive_repair(state: DssState, failed: int, helpers: Optional[Sequence[int]] = None) -> DssState:
    """
    Decode the whole file from the repair downloads and re-encode the failed
    node. A decoding failure leaves the node lost.
    """
    state.commands.append(("naive_repair", {"failed": failed, "helpers": helpers}))
    chosen = _helpers(state, failed, helpers)
    plan = state.code.plan(failed, chosen)
    actual, _ = _transmissions(state, plan, "naive_repair")
    result = naive_repair_decode(state.params, state.code, plan, actual)
    args = {"node": failed, "helpers": list(plan.helpers)}
    if isinstance(result, DecodeFailure):
        state.lost.add(failed)
        _record(state, "naive_repair", args, outcome="failure", bandwidth=plan.bandwidth,
                detail={"reason": result.describe()})
        return state
    _restore(state, failed, store(state.params, result, state.code))
    exact = bool(np.array_equal(state.nodes[failed], state.truth[failed]))
    _record(state, "naive_repair", args, outcome="success" if exact else "failure",
            bandwidth=plan.bandwidth, detail={} if exact else {"reason": "miscorrected"})
    return state


def sim_verified_repair(state: DssState, failed: int, helpers: Optional[Sequence[int]] = None) -> DssState:
    """
    Repair with every payload checked against its sender's signature.

    When s helpers fail the check, k-s passing helpers (lowest indices) send
    their full content, the failing ones are declared erased, and the decoded
    file restores the failed node and every failing node.
    """
    state.commands.append(("verified_repair", {"failed": failed, "helpers": helpers}))
    chosen = _helpers(state, failed, helpers)
    plan = state.code.plan(failed, chosen)
    actual, honest = _transmissions(state, plan, "verified_repair")
    failing = [h for h in plan.helpers if not verifier_check(state, h, actual[h])]
    args = {"node": failed, "helpers": list(plan.helpers)}

    if not failing:
        content, taint = _propagate(state, plan, actual, honest)
        _install(state, failed, content, taint)
        _record(state, "verified_repair", args, bandwidth=plan.bandwidth,
                detail={"strategy": plan.strategy})
        return state

    k, alpha = state.params.k, state.params.alpha
    full: Dict[int, Any] = {}
    extra = 0
    identity = state.field.base.Identity(alpha)
    for h in plan.helpers:
        if h in failing:
            continue
        if len(full) == k - len(failing):
            break
        request = TransmissionRequest("verified_fallback", h, identity, state.nodes[h], state.nodes[h])
        content = state.adversary.transmit(request)
        extra += alpha - plan.downloads[h]
        if verifier_check(state, h, content):
            full[h] = content
        else:
            failing.append(h)
    failing = sorted(failing)
    bandwidth = plan.bandwidth + extra

    if len(full) < k - len(failing) or len(failing) > k:
        state.lost.add(failed)
        _record(state, "verified_repair", args, outcome="failure", bandwidth=bandwidth,
                detail={"reason": "too few passing helpers", "failing": failing})
        return state

    contents = dict(full)
    for j in failing[: k - len(full)]:
        contents[j] = state.field.zeros(alpha)
    erased = [j for j in failing if j in contents]
    result = collect(state.params, state.code, contents, erased_nodes=erased)
    if isinstance(result, DecodeFailure):
        state.lost.add(failed)
        _record(state, "verified_repair", args, outcome="failure", bandwidth=bandwidth,
                detail={"reason": result.describe(), "failing": failing})
        return state

    reencoded = store(state.params, result, state.code)
    for node in [failed] + failing:
        _restore(state, node, reencoded)
    logger.info(f"[{state.name}] verifier flagged nodes {failing}; restored them with node {failed}")
    _record(state, "verified_repair", args, outcome="detected", bandwidth=bandwidth,
            detail={"failing": failing, "fallback_nodes": sorted(full)})
    return state


# ---------------------------------------------------------------------------
# Collection and inspection
# ---------------------------------------------------------------------------

def sim_collect(state: DssState, subset: Sequence[int],
                erased: Sequence[int] = ()) -> Union[StoredFile, DecodeFailure]:
    """Data collection from k nodes; the outcome records whether the file came back"""
    state.commands.append(("collect", {"subset": list(subset), "erased": list(erased)}))
    subset = sorted(subset)
    unavailable = [j for j in subset if j in state.lost]
    if unavailable:
        raise ParameterError(f"nodes {unavailable} are lost")
    result = collect(state.params, state.code, {j: state.nodes[j] for j in subset},
                     erased_nodes=erased)
    seen_rank = rank_over_base(np.concatenate([state.error_of(j) for j in subset]))
    detail: Dict[str, Any] = {"error_rank": seen_rank}
    if isinstance(result, DecodeFailure):
        outcome = "failure"
        detail["reason"] = result.describe()
    elif result == state.file:
        outcome = "success"
    else:
        outcome = "failure"
        detail["reason"] = "miscorrected"
    _record(state, "collect", {"nodes": subset, "erased": sorted(erased)}, outcome=outcome,
            detail=detail)
    return result


def sim_verify(state: DssState, nodes: Optional[Sequence[int]] = None) -> Dict[int, bool]:
    """Check stored contents against the registry"""
    state.commands.append(("verify", {"nodes": None if nodes is None else list(nodes)}))
    targets = sorted(nodes) if nodes is not None else [j for j in state.node_ids if j not in state.lost]
    status = {j: state.registry.check(j, state.nodes[j]) for j in targets}
    failing = [j for j, ok in status.items() if not ok]
    _record(state, "verify", {"nodes": targets}, outcome="detected" if failing else "ok",
            detail={"failing": failing})
    return status


def sim_snapshot(state: DssState) -> EventRecord:
    """A report marker in the event log"""
    state.commands.append(("report", {}))
    return _record(state, "report", {}, detail={"lost": sorted(state.lost)})


COMMANDS = {
    "corrupt": lambda s, a: sim_corrupt(s, a["node"], a["error"]),
    "repair": lambda s, a: sim_fail_repair(s, a["failed"], a["helpers"]),
    "naive_repair": lambda s, a: sim_naive_repair(s, a["failed"], a["helpers"]),
    "verified_repair": lambda s, a: sim_verified_repair(s, a["failed"], a["helpers"]),
    "collect": lambda s, a: sim_collect(s, a["subset"], a["erased"]),
    "verify": lambda s, a: sim_verify(s, a["nodes"]),
    "report": lambda s, a: sim_snapshot(s),
}


def replay(state: DssState) -> DssState:
    """Fresh state from the same inputs with every command re-applied"""
    fresh = sim_init(state.params, state.code, state.file, state.adversary.spec,
                     state.seed, state.name)
    for kind, args in state.commands:
        COMMANDS[kind](fresh, args)
    return fresh
