"""Verification of eigenvalue identities for harmonic almost submersions."""

from ._core import (
    GeometryError,
    d_homothety_c,
    delta_lambda,
    describe,
    eigenvalues,
    list_examples,
    list_suites,
    pullback_metric,
    ratio_bounds,
    run_suite,
    run_suite_csv,
    sample_points,
    tension,
    wedge_norm,
)

__all__ = [
    "GeometryError",
    "d_homothety_c",
    "delta_lambda",
    "describe",
    "eigenvalues",
    "list_examples",
    "list_suites",
    "pullback_metric",
    "ratio_bounds",
    "run_suite",
    "run_suite_csv",
    "sample_points",
    "tension",
    "wedge_norm",
]
