"""Actuator placement on networked linear systems.

Selects actuator positions that minimize a set metric subject to
structural controllability and a cardinality budget, and plans minimal
backup actuators that keep the system structurally controllable under any
single-actuator failure.
"""

from .backup import (
    BackupPlan,
    backup_plan,
    dilation_recovery_positions,
    essential_actuators,
    feasible_backup_positions,
    min_hitting_set,
)
from .errors import (
    EmptyCandidateError,
    EmptyFamilyError,
    FactorizationError,
    InfeasibleBackupError,
    InfeasibleBudgetError,
    NetplaceError,
    NotControllableError,
    SystemFileError,
)
from .graph import (
    DiGraph,
    SccDecomposition,
    from_adjacency,
    is_accessible,
    is_controllable_numeric,
    scc,
)
from .matching import (
    AuxiliaryBipartite,
    Matching,
    build_aux,
    is_extendable_set,
    is_feasible_set,
    is_structurally_controllable,
    matching_size,
    max_matching,
    min_dilation_free_size,
)
from .metrics import (
    GramianMetric,
    ModularMetric,
    SetMetric,
    controllability_gramian,
    matrix_exponential,
)
from .placement import (
    PlacementConfig,
    PlacementResult,
    TraceEntry,
    forward_greedy,
    initial_set,
    long_horizon_greedy,
    place,
)

__version__ = "0.1.0"

__all__ = [
    "AuxiliaryBipartite",
    "BackupPlan",
    "DiGraph",
    "EmptyCandidateError",
    "EmptyFamilyError",
    "FactorizationError",
    "GramianMetric",
    "InfeasibleBackupError",
    "InfeasibleBudgetError",
    "Matching",
    "ModularMetric",
    "NetplaceError",
    "NotControllableError",
    "PlacementConfig",
    "PlacementResult",
    "SccDecomposition",
    "SetMetric",
    "SystemFileError",
    "TraceEntry",
    "backup_plan",
    "build_aux",
    "controllability_gramian",
    "dilation_recovery_positions",
    "essential_actuators",
    "feasible_backup_positions",
    "forward_greedy",
    "from_adjacency",
    "initial_set",
    "is_accessible",
    "is_controllable_numeric",
    "is_extendable_set",
    "is_feasible_set",
    "is_structurally_controllable",
    "long_horizon_greedy",
    "matching_size",
    "matrix_exponential",
    "max_matching",
    "min_dilation_free_size",
    "min_hitting_set",
    "place",
    "scc",
]
