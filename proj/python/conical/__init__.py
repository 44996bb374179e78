"""Linear feasibility and linear programming via extreme rays of polyhedral cones."""

from ._conical import (
    CalibratedGenerator,
    DimensionTooLarge,
    Error,
    FeasibilityOutcome,
    InconsistentRatios,
    InconsistentSystem,
    InfeasibleProblem,
    InvalidInput,
    IterationCap,
    LpOutcome,
    LpStats,
    NotPointed,
    NotStrictlyTangent,
    NumericalFailure,
    OracleVerdict,
    Ray,
    ToleranceConfig,
    TraceStep,
    ZeroBeta,
    check_strict_tangency,
    contact_polytope,
    enumerate_rays,
    generate_instance,
    optimal_face,
    oracle_feasibility,
    oracle_solve,
    solve_feasibility,
    solve_lp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
