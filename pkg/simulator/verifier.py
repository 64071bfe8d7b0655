"""
Subspace verifier

A trusted party keeps, for every node, a basis of the F_q column space of the
node's content (its N x alpha expansion). A transmission passes when every
payload symbol lies in that space, so a dynamic adversary that passes can only
send F_q-combinations of what it stores.
"""

import logging
from typing import Dict

from coding.ff import column_space_basis, expand, in_column_space

logger = logging.getLogger(__name__)


class SubspaceRegistry:
    def __init__(self):
        self._bases: Dict[int, object] = {}

    def sign(self, node: int, content):
        self._bases[node] = column_space_basis(expand(content))
        logger.debug(f"Signed node {node}: dimension {self._bases[node].shape[1]}")

    def basis(self, node: int):
        return self._bases[node]

    def dimension(self, node: int) -> int:
        return int(self._bases[node].shape[1])

    def __contains__(self, node: int) -> bool:
        return node in self._bases

    def check(self, node: int, payload) -> bool:
        """True iff every payload symbol lies in the node's registered space"""
        if node not in self._bases:
            raise KeyError(f"node {node} has no registered subspace")
        return in_column_space(self._bases[node], expand(payload))


def verifier_check(state, sender: int, payload) -> bool:
    """Check one helper payload against the sender's signature"""
    passed = state.registry.check(sender, payload)
    if not passed:
        logger.warning(f"Verifier rejected the transmission of node {sender}")
    return passed
