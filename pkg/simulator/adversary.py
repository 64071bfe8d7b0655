"""
Adversary models

Static adversaries overwrite each compromised node once. Dynamic adversaries
leave contents alone and replace transmissions through a seeded policy that
sees the requested payload and the node's full content.
"""

import logging
from typing import Callable, Dict, Optional, Set

import numpy as np

from coding.errors import ParameterError
from coding.ff import ExtensionField, apply_base_map, expand, in_column_space
from coding.gabidulin import random_full_rank, random_rank_error
from models.scenario import AdversaryModel, AdversarySpec, DynamicPolicy

logger = logging.getLogger(__name__)


class TransmissionRequest:
    """What a helper is asked to send"""

    def __init__(self, event: str, node: int, download, payload, content):
        self.event = event
        self.node = node
        self.download = download
        self.payload = payload
        self.content = content


def honest_policy(request: TransmissionRequest, field: ExtensionField, rng):
    return request.payload


def rerandomize_policy(request: TransmissionRequest, field: ExtensionField, rng):
    """Fresh uniformly random symbols on every request"""
    return field.random(request.payload.shape, rng)


def in_subspace_policy(request: TransmissionRequest, field: ExtensionField, rng):
    """content V' for a random V': wrong data that still passes the subspace check"""
    width = request.download.shape[1]
    V = random_full_rank(field.base, request.download.shape[0], width, rng)
    return apply_base_map(request.content, V)


def off_subspace_policy(request: TransmissionRequest, field: ExtensionField, rng):
    """Honest payload plus an injection outside the column space of the content"""
    signed = expand(request.content)
    while True:
        injected = request.payload + field.random(request.payload.shape, rng)
        if not in_column_space(signed, expand(injected)):
            return injected


POLICIES: Dict[DynamicPolicy, Callable] = {
    DynamicPolicy.HONEST: honest_policy,
    DynamicPolicy.RERANDOMIZE: rerandomize_policy,
    DynamicPolicy.IN_SUBSPACE: in_subspace_policy,
    DynamicPolicy.OFF_SUBSPACE: off_subspace_policy,
}


class Adversary:
    """
    Controls at most t nodes for the whole run.

    Restoring a node's content does not remove it from ``compromised``.
    """

    def __init__(self, spec: AdversarySpec, t: int, n: int, field: ExtensionField, rng):
        if len(spec.compromised) > t:
            raise ParameterError(f"adversary controls {len(spec.compromised)} nodes, budget t = {t}")
        bad = [j for j in spec.compromised if not 1 <= j <= n]
        if bad:
            raise ParameterError(f"compromised nodes {bad} outside [1, {n}]")
        self.spec = spec
        self.model = spec.model
        self.compromised: Set[int] = set(spec.compromised)
        self.field = field
        self.rng = rng
        self.corrupted: Set[int] = set()
        self.policy = POLICIES[spec.policy]

    @property
    def is_static(self) -> bool:
        return self.model == AdversaryModel.STATIC

    @property
    def is_dynamic(self) -> bool:
        return self.model == AdversaryModel.DYNAMIC

    def claim_corruption(self, node: int):
        """Mark the single permitted overwrite of a compromised node"""
        if not self.is_static:
            raise ParameterError("only a static adversary corrupts stored content")
        if node not in self.compromised:
            raise ParameterError(f"node {node} is not compromised")
        if node in self.corrupted:
            raise ParameterError(f"node {node} was already corrupted once")
        self.corrupted.add(node)

    def static_error(self, node: int, alpha: int, error_rank: Optional[int] = None):
        """The one-time random error for a compromised node"""
        self.claim_corruption(node)
        rank = min(error_rank or self.spec.error_rank or alpha, alpha)
        return random_rank_error(self.field, alpha, rank, self.rng)

    def transmit(self, request: TransmissionRequest):
        """Payload actually sent by a helper"""
        if not self.is_dynamic or request.node not in self.compromised:
            return request.payload
        payload = self.policy(request, self.field, self.rng)
        if not np.array_equal(payload, request.payload):
            logger.debug(f"Node {request.node} altered its {request.event} transmission")
        return payload

    def describe(self) -> dict:
        return {
            'model': self.model.value,
            'compromised': sorted(self.compromised),
            'policy': self.spec.policy.value if self.is_dynamic else None,
        }
