"""Exception types shared across the package."""


class MissingSeedError(ValueError):
    """A randomized construction was requested without a seed."""


class UnsupportedDegreeError(ValueError):
    """A coin operator was applied at a vertex whose degree it does not support."""


class BoundaryOverflowError(RuntimeError):
    """A walk on a bounded line would step past an endpoint; resize instead of reflecting."""


class InvariantViolationError(RuntimeError):
    """A numeric invariant (normalization, trace, positivity) failed beyond tolerance."""


class ConfigError(ValueError):
    """Invalid run configuration; `field` names the offending setting."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
