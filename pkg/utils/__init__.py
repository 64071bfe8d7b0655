"""
Utils package for helper functions and utilities

This package contains utility modules for:
- Logging configuration and setup
- Scenario loading and report saving
- Formatting and parsing helpers
"""

from .logger import (
    setup_logger,
    log_execution_time
)
from .config_loader import (
    load_scenario,
    validate_scenario,
    list_scenarios,
    dump_yaml,
    save_report,
    merge_configs,
    get_env_config
)
from .helpers import (
    matrix_rows,
    parse_node_list,
    format_nodes,
    percentage
)

__all__ = [
    # Logger utilities
    'setup_logger',
    'log_execution_time',

    # Scenario utilities
    'load_scenario',
    'validate_scenario',
    'list_scenarios',
    'dump_yaml',
    'save_report',
    'merge_configs',
    'get_env_config',

    # Helper functions
    'matrix_rows',
    'parse_node_list',
    'format_nodes',
    'percentage'
]

__version__ = '1.0.0'
