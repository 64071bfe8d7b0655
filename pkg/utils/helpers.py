"""
Helper Functions

Small formatting and parsing utilities shared by the CLI, simulator reports
and scripts.
"""

import logging
from typing import Iterable, List

import numpy as np

logger = logging.getLogger(__name__)


def matrix_rows(matrix) -> List[str]:
    """F_q matrix as one space-separated digit string per row"""
    values = np.asarray(matrix.view(np.ndarray) if hasattr(matrix, 'view') else matrix, dtype=np.int64)
    return [' '.join(str(int(v)) for v in row) for row in np.atleast_2d(values)]


def parse_node_list(text: str) -> List[int]:
    """
    Parse a node list such as '1,4,5' or '1 4 5'

    Raises:
        ValueError: On empty input, non-integers or duplicates
    """
    parts = [p for p in text.replace(',', ' ').split() if p]
    if not parts:
        raise ValueError("empty node list")
    try:
        nodes = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"node list must contain integers, got '{text}'")
    if len(set(nodes)) != len(nodes):
        raise ValueError(f"node list contains duplicates: '{text}'")
    return nodes


def format_nodes(nodes: Iterable[int]) -> str:
    return '{' + ','.join(str(n) for n in nodes) + '}'


def percentage(part: float, total: float, decimals: int = 2) -> float:
    """
    Calculate percentage

    Args:
        part: Part value
        total: Total value
        decimals: Number of decimal places

    Returns:
        Percentage value, 0.0 when total is zero
    """
    if total == 0:
        return 0.0
    return round((part / total) * 100, decimals)
