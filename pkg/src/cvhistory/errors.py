"""Exception hierarchy shared by all simulator modules."""


class SimulationError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SimulationError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ValidationError(SimulationError, ValueError):
    """Structured input (matrix, permutation, table, config) failed validation."""


class ContractError(SimulationError):
    """A state-dependent precondition or postcondition was violated."""


class ResourceLimitError(SimulationError):
    """A size or resolution limit would be exceeded."""
