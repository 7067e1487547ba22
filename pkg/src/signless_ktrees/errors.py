"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph edit or query (self-loop, duplicate edge, bad vertex)."""


class ParameterError(ValueError):
    """Infeasible construction parameters such as (n, k) below a family threshold."""


class BudgetExceeded(ValueError):
    """Requested enumeration is larger than the supported desk-scale budget."""


class NotAKTree(ValueError):
    pass


class HypothesisViolation(ValueError):
    """A shift move was requested whose preconditions do not hold."""


class PostconditionError(RuntimeError):
    """A constructive step produced a graph that violates its own contract.

    Raised loudly on purpose: the steps encode proof logic, and a silent
    deviation would hide a transcription error.
    """
