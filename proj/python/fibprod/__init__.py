"""Certified solver for F_k = L_m L_n and L_k = F_m F_n."""

import json

from ._core import (
    ConfigError,
    InvariantViolation,
    PrecisionExhausted,
    baker_bounds,
    common_terms,
    enumerate_solutions,
    fib,
    lucas,
    published_solution_set,
    reduced_bounds,
    run,
)


def report(command="verify", equation="both", **options):
    """Structured pipeline report as a dict."""
    return json.loads(run(command, equation, **options))


__all__ = [
    "ConfigError",
    "InvariantViolation",
    "PrecisionExhausted",
    "baker_bounds",
    "common_terms",
    "enumerate_solutions",
    "fib",
    "lucas",
    "published_solution_set",
    "reduced_bounds",
    "report",
    "run",
]
