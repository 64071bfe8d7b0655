"""
Tests package for rankstore

Test Structure:
- test_coding/: fields, linearized polynomials, Gabidulin, array codes, repair
  plan search, the concatenated scheme and locally repairable codes
- test_simulator/: adversaries, the subspace verifier, the simulator and reports
- test_cli/: command functions and exit codes
- test_integration/: bundled scenarios, golden files and determinism

Running Tests:
    # Run all tests
    pytest tests/ -v

    # Quick suite
    pytest tests/ -m "not slow"

    # Run with coverage
    pytest tests/ --cov=coding --cov=simulator --cov-report=html

Test Markers:
    @pytest.mark.slow - Large fields or large trial counts
    @pytest.mark.integration - End-to-end workflows
"""

import sys
from pathlib import Path

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

SCENARIO_DIR = project_root / "data" / "scenarios"
GOLDEN_DIR = project_root / "data" / "golden"


class TestConfig:
    """Constants the tests check against"""

    # Zigzag (5,3) system at the resilience capacity
    ALPHA = 4
    K = 3
    N_NODES = 5
    D = 4
    T = 1
    BETA = 2
    OUTER_K = 4
    DELTA = 9
    OPTIMAL_BANDWIDTH = 8
    TRIVIAL_BANDWIDTH = 12

    # Propagation matrix of node 1's error into repaired node 2, over F_3
    EXAMPLE4_B2 = [
        [2, 0, 1, 0],
        [0, 2, 0, 1],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
    ]

    # Locally repairable code with groups of four
    LRC_M = 8
    LRC_K = 6
    LRC_R = 4
    LRC_N = 10
    LRC_DISTANCE = 4

    # Hadamard (5,3)
    HADAMARD_ALPHA = 16
    HADAMARD_BETA = 8


MARKERS = {
    'slow': 'Mark test as slow-running',
    'integration': 'Mark test as integration test',
}

__all__ = [
    'TestConfig',
    'SCENARIO_DIR',
    'GOLDEN_DIR',
    'MARKERS'
]
