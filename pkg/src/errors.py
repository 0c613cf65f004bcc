"""
File: errors.py

Purpose: Exception hierarchy shared by the library and the command-line driver.
         Library code raises these for broken preconditions; scenario checkers
         report failed hypotheses as verdicts instead of raising.

Imports from: typing
Imported by: every module in src, app.py

Key Classes:
- FusionLimitsError: Base class for all library errors
- ArgumentError: Invalid argument (also a ValueError)
- ContainmentError: A map or subgroup does not land where it must
- CapacityError: A configured cap would be exceeded
- ConfigError: Invalid run configuration
- InvariantViolation: An asserted mathematical identity failed
"""

from typing import Any, Optional


class FusionLimitsError(Exception):
    """Base class for errors raised by the fusion-limits library."""


class ArgumentError(FusionLimitsError, ValueError):
    """An argument violates a documented precondition."""


class ContainmentError(ArgumentError):
    """An image or subgroup is not contained in the required target."""


class CapacityError(FusionLimitsError):
    """A computation would exceed one of the configured caps."""

    def __init__(self, cap: str, limit: Any, requested: Any):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        super().__init__(f"{cap} exceeded: requested {requested}, limit {limit}")


class ConfigError(FusionLimitsError):
    """The run configuration is invalid."""


class InvariantViolation(FusionLimitsError):
    """A computed identity that must hold did not hold."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        self.witness = witness
        super().__init__(message)
