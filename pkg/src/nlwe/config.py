"""Numerical tolerances shared across modules.

Rank/orthogonality decisions default to 1e-9 and may be overridden either
per call or globally through the NLWE_TOLERANCE environment variable.
Eigenvalue sign decisions use the tighter 1e-10 default.
"""

from __future__ import annotations

import os

DEFAULT_TOLERANCE = 1e-9
EIGENVALUE_SIGN_TOL = 1e-10


def tolerance(override: float | None = None) -> float:
    """Resolve the span/orthogonality tolerance for one operation."""
    if override is not None:
        return float(override)
    env = os.environ.get("NLWE_TOLERANCE")
    if env:
        return float(env)
    return DEFAULT_TOLERANCE
