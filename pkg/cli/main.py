#!/usr/bin/env python3
"""
rankstore command line

Usage:
    python -m cli.main plan --alpha 4 --k 3 --t 1 --n 5 --d 4
    python -m cli.main plan --alpha 4 --k 3 --n 5 --d 4 --table
    python -m cli.main encode --input notes.txt --out data/outputs/notes
    python -m cli.main decode --store data/outputs/notes --nodes 1,4,5 --corrupt 4 --output notes.out
    python -m cli.main run data/scenarios/example4.scn
    python -m cli.main lrc --distance 10 6 4
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from coding.errors import RankStoreError
from config import config
from utils.logger import setup_logger
from .commands import EXIT_USAGE, cmd_decode, cmd_encode, cmd_lrc, cmd_plan, cmd_run

logger = logging.getLogger(__name__)


def _add_system_args(parser: argparse.ArgumentParser):
    parser.add_argument('--t', type=int, default=1, help='Adversary budget (default: 1)')
    parser.add_argument('--q', type=int, default=None, help='Base field order')
    parser.add_argument('--naive', action='store_true', help='Plan for naive dynamic repair')
    parser.add_argument('--ell', type=int, default=None, help='Outer dimension for --naive')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='rankstore',
        description='Rank-metric codes for adversary-resilient distributed storage'
    )
    parser.add_argument('--log-level', default=config.LOG_LEVEL,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'])
    subparsers = parser.add_subparsers(dest='command', required=True)

    plan = subparsers.add_parser('plan', help='Plan outer code parameters')
    plan.add_argument('--alpha', type=int, default=4)
    plan.add_argument('--k', type=int, default=3)
    plan.add_argument('--n', type=int, default=5)
    plan.add_argument('--d', type=int, default=4)
    _add_system_args(plan)
    plan.add_argument('--table', action='store_true', help='Capacity table over every feasible t')
    plan.set_defaults(func=cmd_plan)

    encode = subparsers.add_parser('encode', help='Encode a file into node files')
    encode.add_argument('--input', required=True, help='File to store')
    encode.add_argument('--out', required=True, help='Directory for the node files')
    encode.add_argument('--code', default='zigzag', choices=['zigzag', 'hadamard'])
    _add_system_args(encode)
    encode.set_defaults(func=cmd_encode)

    decode = subparsers.add_parser('decode', help='Recover a file from k node files')
    decode.add_argument('--store', required=True, help='Directory written by encode')
    decode.add_argument('--nodes', default=None, help="Nodes to read, e.g. '1,4,5'")
    decode.add_argument('--corrupt', type=int, action='append', default=None,
                        help='Add a random rank-alpha error to this node (repeatable)')
    decode.add_argument('--output', required=True, help='Where to write the recovered file')
    decode.add_argument('--seed', type=int, default=None)
    decode.set_defaults(func=cmd_decode)

    run = subparsers.add_parser('run', help='Run a scenario file')
    run.add_argument('scenario', help='Scenario file (.scn / .yaml)')
    run.add_argument('--seed', type=int, default=None, help='Override the scenario seed')
    run.add_argument('--output', default=None, help='Also save the report to this file')
    run.add_argument('--format', default='yaml', choices=['yaml', 'json'])
    run.set_defaults(func=cmd_run)

    lrc = subparsers.add_parser('lrc', help='Locally repairable code demo')
    lrc.add_argument('--distance', type=int, nargs=3, metavar=('N', 'K', 'R'),
                     help='Only print the minimum distance n-k+2-ceil(k/r)')
    lrc.add_argument('--m', type=int, default=8)
    lrc.add_argument('--k-out', type=int, default=6)
    lrc.add_argument('--r', type=int, default=4)
    lrc.add_argument('--N', type=int, default=None)
    lrc.add_argument('--q', type=int, default=None)
    lrc.add_argument('--erasures', type=int, default=3, help='Erasure pattern size')
    lrc.add_argument('--pattern', default='all', choices=['all', 'worst'])
    lrc.add_argument('--trials', type=int, default=500, help='Group-error trials (0 to skip)')
    lrc.add_argument('--position', type=int, default=1, help='Position the adversary corrupts')
    lrc.add_argument('--show-failures', type=int, default=5)
    lrc.add_argument('--seed', type=int, default=None)
    lrc.set_defaults(func=cmd_lrc)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    setup_logger(
        '',
        log_file=config.LOG_FILE or None,
        level=getattr(logging, args.log_level),
        json_format=config.LOG_JSON
    )

    try:
        config.validate()
        return args.func(args)
    except (RankStoreError, ValidationError, ValueError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
