"""Exception types shared across the package."""

from __future__ import annotations


class CoupledSchedError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(CoupledSchedError, ValueError):
    """A constructor or generator argument is out of its allowed range."""


class UnsupportedTaskShapeError(CoupledSchedError, ValueError):
    """An operation that only works on stretched tasks got a general one."""


class InvalidPartitionError(CoupledSchedError, ValueError):
    """An X/Y partition references unknown ids or does not cover the tasks."""


class IncompleteScheduleError(CoupledSchedError, ValueError):
    """A schedule is missing tasks (or names tasks not in the instance)."""


class UnsupportedInstanceError(CoupledSchedError, ValueError):
    """The instance falls outside the class a solver is built for."""


class SizeLimitError(CoupledSchedError, ValueError):
    """An exhaustive routine was asked to run beyond its size cap."""


class InvalidSourceError(CoupledSchedError, ValueError):
    """A reduction source (matching/triangle input) violates its invariants."""


class ParseError(CoupledSchedError, ValueError):
    """A file or payload could not be parsed; message carries diagnostics."""
