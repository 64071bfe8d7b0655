#!/usr/bin/env python3
"""
Run every bundled scenario

Loads each scenario file in the scenario directory, runs it through the
simulator and prints a pass/fail table. Independent scenarios can run in a
process pool.

Usage:
    python scripts/run_scenarios.py
    python scripts/run_scenarios.py --dir data/scenarios --jobs 4
    python scripts/run_scenarios.py --skip hadamard --output data/outputs/reports
    python scripts/run_scenarios.py --help
"""

import sys
import argparse
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import config
from coding.errors import RankStoreError
from simulator.report import report_to_text
from simulator.scenario import run_scenario
from utils.config_loader import list_scenarios, load_scenario
from utils.logger import log_execution_time, setup_logger

# Setup logging
logger = setup_logger("", config.LOG_FILE or None)


@log_execution_time
def run_one(path: str, output_dir: Optional[str] = None) -> Dict:
    """Run a single scenario file; safe to call in a worker process"""
    try:
        scenario = load_scenario(path)
        result = run_scenario(scenario)
    except RankStoreError as e:
        return {'scenario': Path(path).stem, 'passed': False, 'events': 0, 'detail': str(e)}

    if output_dir:
        out = Path(output_dir) / f"{scenario.name}.yaml"
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report_to_text(result.report), encoding='utf-8')

    return {
        'scenario': scenario.name,
        'passed': result.passed,
        'events': len(result.report.events),
        'detail': result.first_violation or f"max aggregate rank {result.report.max_aggregate_rank}",
    }


def print_summary(rows: List[Dict]):
    """Print the pass/fail table"""
    print()
    print("=" * 80)
    print("SCENARIO SUMMARY")
    print("=" * 80)
    print()
    for row in rows:
        status = 'PASS' if row['passed'] else 'FAIL'
        print(f"  {status}  {row['scenario']:<32} {row['events']:>4} events  {row['detail']}")
    print()
    passed = sum(1 for row in rows if row['passed'])
    print(f"Passed: {passed}/{len(rows)}")
    print()


def main():
    """Main function"""

    parser = argparse.ArgumentParser(
        description='Run every scenario in a directory and summarize the outcomes',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Run the bundled scenarios
  python scripts/run_scenarios.py

  # Four worker processes, reports written per scenario
  python scripts/run_scenarios.py --jobs 4 --output data/outputs/reports
        """
    )

    parser.add_argument(
        '--dir',
        default=config.SCENARIO_DIR,
        help=f'Scenario directory (default: {config.SCENARIO_DIR})'
    )

    parser.add_argument(
        '--jobs',
        type=int,
        default=1,
        help='Worker processes for independent scenarios (default: 1)'
    )

    parser.add_argument(
        '--skip',
        action='append',
        default=[],
        help='Skip scenarios whose name contains this text (repeatable)'
    )

    parser.add_argument(
        '--output',
        help='Directory for per-scenario YAML reports'
    )

    args = parser.parse_args()

    if args.jobs < 1:
        parser.error("--jobs must be positive")

    paths = [str(p) for p in list_scenarios(args.dir)
             if not any(s in p.stem for s in args.skip)]
    logger.info(f"Running {len(paths)} scenarios from {args.dir} with {args.jobs} job(s)")

    if args.jobs == 1:
        rows = [run_one(p, args.output) for p in paths]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(run_one, paths, [args.output] * len(paths)))

    print_summary(rows)
    sys.exit(0 if all(row['passed'] for row in rows) else 1)


if __name__ == '__main__':
    main()
