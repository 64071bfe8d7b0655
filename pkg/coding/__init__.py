"""
Rank-metric coding package for rankstore
"""

from .errors import (
    RankStoreError,
    ParameterError,
    FieldMismatchError,
    PreconditionError,
    DivisionByZeroError,
    InfeasibleParametersError,
    PlanSearchError,
    RepairError,
    ScenarioError,
    InvariantViolation
)
from .ff import ExtensionField, get_field, expand, collapse, frobenius, rank_over_base
from .linpoly import LinearizedPoly, lp_evaluate, lp_interpolate, lp_min_subspace_poly, lp_compose
from .gabidulin import DecodeFailure, ErasureInfo, GabidulinCode, gab_encode, gab_decode
from .array_codes import ArrayCode, RepairPlan, zigzag_5_3, hadamard_5_3, ac_by_name
from .repair_search import ac_find_repair_plan, ac_trivial_plan
from .concat import StoredFile, plan_params, plan_naive_params, store, collect
from .lrc import LrcCode, lrc_build, lrc_encode, lrc_decode

__all__ = [
    # Errors
    'RankStoreError',
    'ParameterError',
    'FieldMismatchError',
    'PreconditionError',
    'DivisionByZeroError',
    'InfeasibleParametersError',
    'PlanSearchError',
    'RepairError',
    'ScenarioError',
    'InvariantViolation',

    # Fields and polynomials
    'ExtensionField',
    'get_field',
    'expand',
    'collapse',
    'frobenius',
    'rank_over_base',
    'LinearizedPoly',
    'lp_evaluate',
    'lp_interpolate',
    'lp_min_subspace_poly',
    'lp_compose',

    # Codes
    'DecodeFailure',
    'ErasureInfo',
    'GabidulinCode',
    'gab_encode',
    'gab_decode',
    'ArrayCode',
    'RepairPlan',
    'zigzag_5_3',
    'hadamard_5_3',
    'ac_by_name',
    'ac_find_repair_plan',
    'ac_trivial_plan',
    'LrcCode',
    'lrc_build',
    'lrc_encode',
    'lrc_decode',

    # Storage scheme
    'StoredFile',
    'plan_params',
    'plan_naive_params',
    'store',
    'collect'
]
