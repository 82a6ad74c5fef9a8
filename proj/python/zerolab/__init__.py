"""Common zeros of random polynomial systems over finite rings."""

from ._zerolab import (
    BudgetExceededError,
    Error,
    MismatchedRingError,
    Polynomial,
    PreconditionError,
    Ring,
    SampleSpace,
    ValidationError,
    count_common_zeros,
    exact_distribution,
    monte_carlo_distribution,
    poisson_limit_report,
    run_cli,
    theoretical_distribution,
)

__all__ = [
    "BudgetExceededError",
    "Error",
    "MismatchedRingError",
    "Polynomial",
    "PreconditionError",
    "Ring",
    "SampleSpace",
    "ValidationError",
    "count_common_zeros",
    "exact_distribution",
    "monte_carlo_distribution",
    "poisson_limit_report",
    "run_cli",
    "theoretical_distribution",
]
