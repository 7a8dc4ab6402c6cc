"""Exception hierarchy shared across the library and the CLI."""

from __future__ import annotations


class NetplaceError(Exception):
    """Base class for all library-specific failures."""


class SystemFileError(NetplaceError):
    """A system description file failed to parse or validate."""


class InfeasibleBudgetError(NetplaceError):
    """The actuator budget is below the minimum required for dilation-freeness."""


class EmptyCandidateError(NetplaceError):
    """A selection step found no feasible candidate node.

    ``component`` carries the offending source component (0-based node ids)
    when the failure happened while seeding source components.
    """

    def __init__(self, message: str, component: tuple[int, ...] | None = None):
        super().__init__(message)
        self.component = component


class NotControllableError(NetplaceError):
    """An operation requires a structurally controllable actuator set."""


class EmptyFamilyError(NetplaceError):
    """A hitting-set instance contains an empty family and is infeasible."""


class InfeasibleBackupError(NetplaceError):
    """No single-node backup can restore structural controllability."""


class FactorizationError(NetplaceError):
    """A symmetric factorization failed; the regularizer is too small."""
