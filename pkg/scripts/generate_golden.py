#!/usr/bin/env python3
"""
Regenerate golden files

Writes the structured text form of the bundled zigzag code (and, on request,
the example4 scenario report) so tests can compare against them.

Usage:
    python scripts/generate_golden.py
    python scripts/generate_golden.py --with-report
"""

import sys
import argparse
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import config
from coding.array_codes import ac_serialize, zigzag_5_3
from simulator.report import report_to_text
from simulator.scenario import run_scenario
from utils.config_loader import load_scenario
from utils.logger import setup_logger

logger = setup_logger("", None)


def write_zigzag(golden_dir: Path) -> Path:
    """Golden text of the (5,3) zigzag code"""
    path = golden_dir / "zigzag_5_3.yaml"
    path.write_text(ac_serialize(zigzag_5_3()), encoding='utf-8')
    logger.info(f"Wrote {path}")
    return path


def write_example4_report(golden_dir: Path, scenario_dir: Path) -> Path:
    """Golden report of the example4 scenario"""
    result = run_scenario(load_scenario(str(scenario_dir / "example4.scn")))
    path = golden_dir / "example4_report.yaml"
    path.write_text(report_to_text(result.report), encoding='utf-8')
    logger.info(f"Wrote {path}")
    return path


def main():
    """Main function"""
    parser = argparse.ArgumentParser(description='Regenerate golden files')
    parser.add_argument('--golden-dir', default=config.GOLDEN_DIR)
    parser.add_argument('--scenario-dir', default=config.SCENARIO_DIR)
    parser.add_argument('--with-report', action='store_true',
                        help='Also write the example4 scenario report')
    args = parser.parse_args()

    golden_dir = Path(args.golden_dir)
    golden_dir.mkdir(parents=True, exist_ok=True)

    print("=" * 60)
    print("GENERATING GOLDEN FILES")
    print("=" * 60)
    written = [write_zigzag(golden_dir)]
    if args.with_report:
        written.append(write_example4_report(golden_dir, Path(args.scenario_dir)))
    for path in written:
        print(f"  ✓ {path}")


if __name__ == '__main__':
    main()
