"""Python bindings for the abqlab quadric laboratory."""

import json

from ._core import (
    IndeterminateRankError,
    TailCertificationError,
    VerificationError,
    bounds_table,
    component_dimensions,
    decompose_table,
    family_multiplicities,
    kb_bounds,
    possible_k,
    predicted_k,
    resolve,
    sample_period_matrix,
    theta,
    verify_json,
)


def verify(n, seed=1, samples=0, tolerance=1e-9, precision="double", omega=None):
    """Run a verification and return the report as a dict."""
    return json.loads(verify_json(n, seed, samples, tolerance, precision, omega))


__all__ = [
    "IndeterminateRankError",
    "TailCertificationError",
    "VerificationError",
    "bounds_table",
    "component_dimensions",
    "decompose_table",
    "family_multiplicities",
    "kb_bounds",
    "possible_k",
    "predicted_k",
    "resolve",
    "sample_period_matrix",
    "theta",
    "verify",
    "verify_json",
]
