"""
Scenario runner

Executes a validated ScenarioConfig: builds the inner code and parameters,
stores the file, replays the event list through the simulator and checks
every expectation and the static rank invariant as it goes. LRC scenarios run
their sweep and group-error events directly against the code.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from coding.array_codes import ac_by_name
from coding.concat import (
    StoredFile, file_from_bytes, plan_naive_params, plan_params, random_file
)
from coding.errors import InvariantViolation, ScenarioError
from coding.gabidulin import DecodeFailure
from coding.lrc import (
    LrcCode, lrc_build, lrc_decode, lrc_encode, lrc_erasure_sweep, lrc_pollute_group,
    lrc_worst_erasure_pattern
)
from config import config
from models.report import EventRecord, SimulationReport
from models.scenario import (
    AdversaryModel, EventKind, Expectation, ScenarioConfig, ScenarioEvent
)
from utils.config_loader import validate_scenario
from .dss import (
    DssState, assert_static_invariant, sim_collect, sim_corrupt, sim_fail_repair, sim_init,
    sim_naive_repair, sim_snapshot, sim_verified_repair, sim_verify
)
from .report import sim_report

logger = logging.getLogger(__name__)

__all__ = ['ScenarioResult', 'run_scenario', 'validate_scenario', 'build_system']

SUCCESS_OUTCOMES = {"ok", "success", "detected"}


@dataclass
class ScenarioResult:
    """Report plus the verdict of a scenario run"""
    config: ScenarioConfig
    report: SimulationReport
    state: Optional[DssState] = None
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> Optional[str]:
        return self.violations[0] if self.violations else None


def build_system(scenario: ScenarioConfig, seed: int):
    """Inner code, parameters and the stored file of an array-code scenario"""
    code = ac_by_name(scenario.code, scenario.q)
    if scenario.scheme == "naive":
        params = plan_naive_params(code.alpha, code.k, scenario.t, code.n, code.d,
                                   ell=scenario.ell, enforce_bound=scenario.enforce_bound, q=code.q)
    else:
        params = plan_params(code.alpha, code.k, scenario.t, code.n, code.d, q=code.q)

    if scenario.input_file:
        stripes = file_from_bytes(params, Path(scenario.input_file).read_bytes())
        if len(stripes) != 1:
            raise ScenarioError(
                f"{scenario.input_file} needs {len(stripes)} stripes; the simulator stores one"
            )
        file: StoredFile = stripes[0]
    else:
        file = random_file(params, np.random.default_rng([seed, 1]))
    return code, params, file


def _check_expectation(event: ScenarioEvent, outcomes: List[str], step: int) -> Optional[str]:
    if event.expect == Expectation.ANY:
        return None
    failed = [o for o in outcomes if o not in SUCCESS_OUTCOMES]
    if event.expect == Expectation.SUCCESS and failed:
        return f"step {step}: {event.kind.value} expected success, got {failed[0]}"
    if event.expect == Expectation.FAILURE and not failed:
        return f"step {step}: {event.kind.value} expected failure, every attempt succeeded"
    return None


def _dss_event(state: DssState, event: ScenarioEvent) -> str:
    """Apply one event and return the outcome of its log record"""
    handlers: Dict[EventKind, Callable[[], Any]] = {
        EventKind.CORRUPT: lambda: sim_corrupt(state, event.node),
        EventKind.REPAIR: lambda: sim_fail_repair(state, event.node, event.helpers),
        EventKind.NAIVE_REPAIR: lambda: sim_naive_repair(state, event.node, event.helpers),
        EventKind.VERIFIED_REPAIR: lambda: sim_verified_repair(state, event.node, event.helpers),
        EventKind.COLLECT: lambda: sim_collect(state, event.nodes, event.erased),
        EventKind.VERIFY: lambda: sim_verify(state, event.nodes),
        EventKind.REPORT: lambda: sim_snapshot(state),
    }
    handlers[event.kind]()
    return state.event_log[-1].outcome


def _run_dss(scenario: ScenarioConfig, seed: int) -> ScenarioResult:
    code, params, file = build_system(scenario, seed)
    state = sim_init(params, code, file, scenario.adversary, seed, scenario.name)
    check_invariant = scenario.assert_static_bound and scenario.adversary.model != AdversaryModel.DYNAMIC
    violations: List[str] = []

    try:
        if check_invariant:
            assert_static_invariant(state)
        for step, event in enumerate(scenario.events, start=1):
            outcomes = []
            for _ in range(event.repeat):
                outcomes.append(_dss_event(state, event))
                if check_invariant:
                    assert_static_invariant(state)
            problem = _check_expectation(event, outcomes, step)
            if problem:
                logger.warning(f"[{scenario.name}] {problem}")
                violations.append(problem)
    except InvariantViolation as e:
        logger.error(f"[{scenario.name}] invariant violated: {e}")
        violations.append(f"invariant: {e}")

    report = sim_report(state)
    violations = report.violations + violations
    report = report.model_copy(update={
        "passed": not violations,
        "violations": violations,
        "first_violation": violations[0] if violations else None,
    })
    return ScenarioResult(scenario, report, state, violations)


# ---------------------------------------------------------------------------
# LRC scenarios
# ---------------------------------------------------------------------------

def _lrc_sweep(code: LrcCode, event: ScenarioEvent, rng) -> Tuple[str, Dict[str, Any]]:
    if event.pattern == "worst":
        pattern = lrc_worst_erasure_pattern(code, event.size)
        message = code.base.field.random(code.k_out, rng)
        result = lrc_decode(code, lrc_encode(code, message), pattern)
        ok = not isinstance(result, DecodeFailure) and np.array_equal(result, message)
        return ("success" if ok else "failure"), {"pattern": pattern}
    decoded, total, failures = lrc_erasure_sweep(code, event.size, rng)
    detail = {"decoded": decoded, "total": total, "failures": [list(f) for f in failures[:10]]}
    return ("success" if not failures else "failure"), detail


def _lrc_group_error(code: LrcCode, event: ScenarioEvent, rng) -> Tuple[str, Dict[str, Any]]:
    GF = code.base.GF
    recovered = 0
    for _ in range(event.trials):
        message = code.base.field.random(code.k_out, rng)
        error = GF(int(rng.integers(1, GF.order)))
        word = lrc_pollute_group(code, lrc_encode(code, message), event.node, error)
        result = lrc_decode(code, word)
        if not isinstance(result, DecodeFailure) and np.array_equal(result, message):
            recovered += 1
    outcome = "success" if recovered == event.trials else "failure"
    return outcome, {"recovered": recovered, "trials": event.trials}


def _run_lrc(scenario: ScenarioConfig, seed: int) -> ScenarioResult:
    spec = scenario.lrc
    code = lrc_build(spec.m, spec.k_out, spec.r, spec.N, scenario.q)
    rng = np.random.default_rng(seed)
    events: List[EventRecord] = []
    violations: List[str] = []

    for step, event in enumerate(scenario.events, start=1):
        outcomes = []
        for _ in range(event.repeat):
            if event.kind == EventKind.LRC_SWEEP:
                outcome, detail = _lrc_sweep(code, event, rng)
                args = {"size": event.size, "pattern": event.pattern or "all"}
            elif event.kind == EventKind.LRC_GROUP_ERROR:
                outcome, detail = _lrc_group_error(code, event, rng)
                args = {"node": event.node, "group": code.group_of(event.node) + 1}
            else:
                raise ScenarioError(f"{event.kind.value} event does not apply to lrc scenarios")
            outcomes.append(outcome)
            events.append(EventRecord(step=len(events), kind=event.kind.value, args=args,
                                      outcome=outcome, detail=detail))
        problem = _check_expectation(event, outcomes, step)
        if problem:
            logger.warning(f"[{scenario.name}] {problem}")
            violations.append(problem)

    field_params = code.base.field.params
    report = SimulationReport(
        scenario=scenario.name,
        seed=seed,
        code=repr(code),
        q=field_params.q,
        params={"m": code.m, "k_out": code.k_out, "r": code.r, "n": code.n, "N": field_params.N,
                "delta": code.delta, "groups": [list(g) for g in code.groups]},
        modulus_poly=field_params.modulus_poly,
        events=events,
        passed=not violations,
        violations=violations,
        first_violation=violations[0] if violations else None,
    )
    return ScenarioResult(scenario, report, None, violations)


def run_scenario(scenario: ScenarioConfig, seed_override: Optional[int] = None) -> ScenarioResult:
    """
    Run a scenario end to end

    Args:
        scenario: Validated scenario
        seed_override: Replaces the scenario seed (RANKSTORE_SEED otherwise wins)

    Returns:
        ScenarioResult; ``passed`` is False when an expectation, bound or invariant failed
    """
    seed = seed_override if seed_override is not None else config.seed_for(scenario.seed)
    logger.info(f"Running scenario '{scenario.name}' (code {scenario.code}, seed {seed}): "
                f"{scenario.event_summary()}")
    if scenario.code == "lrc":
        result = _run_lrc(scenario, seed)
    else:
        result = _run_dss(scenario, seed)

    if result.passed:
        logger.info(f"Scenario '{scenario.name}' passed")
    else:
        logger.warning(f"Scenario '{scenario.name}' failed: {result.first_violation}")
    return result
