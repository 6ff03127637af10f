"""Python interface to the sigma-vortex solver."""

import json

from ._core import (
    SigmaVortexError,
    beta_range,
    box_log_integral,
    solve_disk,
    solve_radial,
    sweep,
    version,
)
from ._core import verify as _verify

__version__ = version()


def verify(suites=(), seed=1):
    """Run verification suites; returns the parsed report."""
    return json.loads(_verify(list(suites), seed))


__all__ = [
    "SigmaVortexError",
    "beta_range",
    "box_log_integral",
    "solve_disk",
    "solve_radial",
    "sweep",
    "verify",
    "version",
]
