"""Exception hierarchy.

Two families: InputError for violated preconditions (the CLI exits with 2)
and EstimationError for failures of the numerical pipeline itself (exit 3).
"""

from __future__ import annotations


class MulregError(Exception):
    """Base class for every error raised by mulreg."""


class InputError(MulregError):
    """A caller-supplied value violates an operation precondition."""


class EstimationError(MulregError):
    """The estimation pipeline could not produce a value."""


class NonCubicSampleSize(InputError):
    pass


class UnknownFunctionId(InputError):
    pass


class WindowOutOfDomain(InputError):
    pass


class EmptyWindow(InputError):
    pass


class InvalidBounds(InputError):
    pass


class DegenerateGrid(InputError):
    pass


class ConfigError(InputError):
    pass


class SingularDesign(EstimationError):
    pass


class NonPositiveAhat(EstimationError):
    pass


class EmptyPosteriorSupport(EstimationError):
    pass


class NonConvergence(EstimationError):
    pass


class TooManyFailures(EstimationError):
    """More than the tolerated fraction of Monte Carlo replications failed."""
