"""
Command implementations

Each command takes the parsed argparse namespace, prints its result to stdout
and returns the process exit code: 0 when everything held, 1 on an assertion
or decode failure. Parameter problems raise RankStoreError and are mapped to
exit code 2 by the entry point.
"""

import logging
from pathlib import Path
from typing import List

import numpy as np

from coding.array_codes import ac_by_name
from coding.concat import capacity_table, collect, plan_naive_params, plan_params, resilience_capacity
from coding.errors import ParameterError
from coding.gabidulin import DecodeFailure, random_rank_error
from coding.ff import get_field
from coding.lrc import (
    lrc_build, lrc_decode, lrc_encode, lrc_erasure_sweep, lrc_min_distance, lrc_pollute_group,
    lrc_worst_erasure_pattern
)
from config import config
from simulator.report import report_to_text
from simulator.scenario import run_scenario
from storage.file_storage import NodeStore, decode_bytes
from utils.config_loader import load_scenario, save_report
from utils.helpers import format_nodes, parse_node_list, percentage

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _params_from_args(args, code):
    if getattr(args, 'naive', False):
        return plan_naive_params(code.alpha, code.k, args.t, code.n, code.d, ell=args.ell, q=code.q)
    return plan_params(code.alpha, code.k, args.t, code.n, code.d, q=code.q)


# ---------------------------------------------------------------------------
# plan
# ---------------------------------------------------------------------------

def cmd_plan(args) -> int:
    """Print the planned parameters and whether they reach the resilience capacity"""
    q = args.q or config.DEFAULT_Q
    if args.table:
        rows = capacity_table(args.alpha, args.k, args.n, args.d)
        print(f"{'t':>3} {'K':>4} {'delta':>6} {'capacity':>9} {'naive':>6}  attained")
        for row in rows:
            print(f"{row.t:>3} {row.K:>4} {row.delta:>6} {row.capacity:>9} {row.naive_bound:>6}  "
                  f"{'yes' if row.attained else 'no'}")
        return EXIT_OK

    if args.naive:
        params = plan_naive_params(args.alpha, args.k, args.t, args.n, args.d, ell=args.ell, q=q)
    else:
        params = plan_params(args.alpha, args.k, args.t, args.n, args.d, q=q)
    capacity = resilience_capacity(params.alpha, params.beta, params.k, params.d, params.t)
    attained = params.K == capacity

    print(f"scheme: {params.scheme.value}")
    print(f"q = {params.q}, N = {params.N}, m = {params.m}")
    print(f"alpha = {params.alpha}, k = {params.k}, n = {params.n}, d = {params.d}, t = {params.t}")
    print(f"K = {params.K}")
    print(f"delta = {params.delta} (required {params.required_distance()})")
    print(f"beta = {params.beta}")
    print(f"repair download = {params.repair_download} symbols (trivial {params.alpha * params.k})")
    print(f"file size = {params.file_size} digits over F_{params.q}")
    print(f"resilience capacity = {capacity} symbols: {'attained' if attained else 'not attained'}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# encode / decode
# ---------------------------------------------------------------------------

def cmd_encode(args) -> int:
    """Encode a file into node files"""
    data = Path(args.input).read_bytes()
    code = ac_by_name(args.code, args.q)
    params = _params_from_args(args, code)
    manifest = NodeStore(args.out).save_file(data, params, code)
    print(f"encoded {manifest['length']} bytes into {manifest['stripes']} stripes "
          f"on nodes {format_nodes(range(1, params.n + 1))} ({args.out})")
    return EXIT_OK


def cmd_decode(args) -> int:
    """Recover a file from k node files, optionally corrupting some of them first"""
    store = NodeStore(args.store)
    params, code = store.load_system()
    nodes = parse_node_list(args.nodes) if args.nodes else store.available_nodes()[:params.k]
    if len(nodes) != params.k:
        print(f"error: need k = {params.k} nodes, got {len(nodes)}")
        return EXIT_FAILURE

    corrupt: List[int] = args.corrupt or []
    outside = [j for j in corrupt if j not in nodes]
    if outside:
        raise ParameterError(f"corrupted nodes {outside} are not among the decoded nodes")

    stripes = store.load_nodes(params, nodes)
    field = get_field(params.q, params.N)
    rng = np.random.default_rng(config.seed_for(args.seed))
    for contents in stripes:
        for j in corrupt:
            contents[j] = contents[j] + random_rank_error(field, params.alpha, params.alpha, rng)
    if corrupt:
        logger.info(f"Corrupted nodes {corrupt} in every stripe")

    recovered = []
    for s, contents in enumerate(stripes):
        result = collect(params, code, contents)
        if isinstance(result, DecodeFailure):
            print(f"error: stripe {s} could not be decoded: {result.describe()}")
            return EXIT_FAILURE
        recovered.append(result)

    data = decode_bytes(params, recovered)
    Path(args.output).write_bytes(data)
    matches = store.verify_bytes(data)
    print(f"recovered {len(data)} bytes from nodes {format_nodes(nodes)} -> {args.output} "
          f"(sha256 {'matches' if matches else 'DIFFERS'})")
    return EXIT_OK if matches else EXIT_FAILURE


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def cmd_run(args) -> int:
    """Run a scenario file and print its report"""
    scenario = load_scenario(args.scenario)
    result = run_scenario(scenario, seed_override=args.seed)
    text = report_to_text(result.report)
    print(text, end='')
    if args.output:
        save_report(result.report.model_dump(mode='json'), args.output, args.format)
    if not result.passed:
        print(f"FAILED: {result.first_violation}")
        return EXIT_FAILURE
    return EXIT_OK


# ---------------------------------------------------------------------------
# lrc
# ---------------------------------------------------------------------------

def cmd_lrc(args) -> int:
    """Locally repairable code demo: distance, erasure sweeps and group errors"""
    if args.distance:
        n, k_out, r = args.distance
        print(lrc_min_distance(n, k_out, r))
        return EXIT_OK

    code = lrc_build(args.m, args.k_out, args.r, args.N, args.q)
    d_min = lrc_min_distance(code.n, code.k_out, code.r)
    rng = np.random.default_rng(config.seed_for(args.seed))
    groups = ' '.join(format_nodes(g) for g in code.groups)
    print(f"{code}: groups {groups}, d_min = {d_min}, outer delta = {code.delta}")
    ok = True

    size = args.erasures
    expect_success = size < d_min
    if args.pattern == 'worst':
        pattern = lrc_worst_erasure_pattern(code, size)
        message = code.base.field.random(code.k_out, rng)
        result = lrc_decode(code, lrc_encode(code, message), pattern)
        decoded = not isinstance(result, DecodeFailure) and np.array_equal(result, message)
        verdict = 'decoded' if decoded else 'failed'
        expected = 'expected' if decoded == expect_success else 'UNEXPECTED'
        print(f"worst pattern {format_nodes(pattern)}: {verdict} ({expected})")
        ok &= decoded == expect_success
    else:
        decoded, total, failures = lrc_erasure_sweep(code, size, rng)
        print(f"{decoded}/{total} erasure patterns decoded ({percentage(decoded, total)}%)")
        for pattern in failures[:args.show_failures]:
            print(f"  failed: {format_nodes(pattern)}")
        ok &= (not failures) == expect_success

    if args.trials:
        position = args.position
        group = code.groups[code.group_of(position)]
        recovered = 0
        for _ in range(args.trials):
            message = code.base.field.random(code.k_out, rng)
            error = code.base.GF(int(rng.integers(1, code.base.GF.order)))
            word = lrc_pollute_group(code, lrc_encode(code, message), position, error)
            result = lrc_decode(code, word)
            if not isinstance(result, DecodeFailure) and np.array_equal(result, message):
                recovered += 1
        print(f"group error at position {position} (rank 1, weight {len(group) + 1}): "
              f"{recovered}/{args.trials} corrected")
        ok &= recovered == args.trials

    return EXIT_OK if ok else EXIT_FAILURE
