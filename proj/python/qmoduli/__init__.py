"""Exact checks on the moduli space M(3m+2n+2) on P^1 x P^1.

Thin wrappers over the C++ core. Integers are Python ints; big values are
never truncated.
"""

from ._core import (
    betti,
    det2,
    eval_poincare,
    fiber_count,
    grass_poincare,
    hilbert,
    locus_summary,
    moduli_point_count,
    planes,
    poincare_coeffs,
    proj_poincare,
    raw_count,
)

__all__ = [
    "betti",
    "det2",
    "eval_poincare",
    "fiber_count",
    "grass_poincare",
    "hilbert",
    "locus_summary",
    "moduli_point_count",
    "planes",
    "poincare_coeffs",
    "proj_poincare",
    "raw_count",
]
