"""Optimal square/rectangular annuli and empty rectangles over planar point sets."""

from ._annulus import (
    __version__,
    enumerate_mers,
    oracle_any,
    solve_any,
    solve_fixed,
)

__all__ = [
    "__version__",
    "enumerate_mers",
    "oracle_any",
    "solve_any",
    "solve_fixed",
]
