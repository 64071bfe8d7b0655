"""
Exception hierarchy for the coding and simulation packages.

Decoding failures are not exceptions; see ``coding.gabidulin.DecodeFailure``.
"""


class RankStoreError(Exception):
    """Base class for every error raised by rankstore"""


class ParameterError(RankStoreError, ValueError):
    """A parameter or input shape violates an operation's precondition"""


class FieldMismatchError(ParameterError):
    """Operands belong to different fields"""


class PreconditionError(RankStoreError):
    """Input points or bases are not F_q-linearly independent"""


class DivisionByZeroError(RankStoreError, ZeroDivisionError):
    """Inverse of the zero element was requested"""


class InfeasibleParametersError(ParameterError):
    """System parameters admit no reliable storage (k <= 2t and similar)"""


class PlanSearchError(RankStoreError):
    """No repair plan was found within the search space"""


class RepairError(RankStoreError):
    """A repair could not be completed"""


class ScenarioError(RankStoreError):
    """A scenario file is malformed or refers to unknown entities"""


class InvariantViolation(RankStoreError):
    """A simulator invariant (e.g. the static aggregate rank bound) was broken"""
