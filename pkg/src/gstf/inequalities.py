"""Elementary weight-shuttling inequalities, with explicit constants.

Both checks evaluate their inequality at concrete points and report the
sides, so property tests can fuzz them directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GstfError

__all__ = [
    "PeetreCheck", "TriangleCheck",
    "peetre_bound_check", "subexp_triangle_check", "subexp_triangle_constant",
]


@dataclass(frozen=True)
class PeetreCheck:
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class TriangleCheck:
    lower_holds: bool
    upper_holds: bool
    C_used: float


def peetre_bound_check(xi: float, eta: float, N: int) -> PeetreCheck:
    """Check (1+|xi-eta|^2)^-N <= 2^N (1+|xi|^2)^-N (1+|eta|^2)^N."""
    if not (0 <= N <= 64):
        raise GstfError("N must be between 0 and 64")
    # Compared in the log domain so large N cannot overflow a float power.
    log_lhs = -N * np.log1p((xi - eta) ** 2)
    log_rhs = N * (np.log(2.0) - np.log1p(xi**2) + np.log1p(eta**2))
    with np.errstate(over="ignore"):
        lhs = float(np.exp(log_lhs))
        rhs = float(np.exp(log_rhs))
    return PeetreCheck(lhs=lhs, rhs=rhs, holds=bool(log_lhs <= log_rhs))


def subexp_triangle_constant(s: float) -> float:
    """C(s) = 2^max(1/s - 1, 0) + 1, valid for the two-sided bound below."""
    if s <= 0:
        raise GstfError("s must be positive")
    return 2.0 ** max(1.0 / s - 1.0, 0.0) + 1.0


def subexp_triangle_check(x: float, y: float, s: float) -> TriangleCheck:
    """Check C^-1 (|x|^p + |y|^p) <= |y|^p + |y-x|^p <= C (|x|^p + |y|^p)
    with p = 1/s and C = C(s).

    A small relative slack absorbs floating-point rounding on the exact
    boundary cases (e.g. x = 0)."""
    C = subexp_triangle_constant(s)
    p = 1.0 / s
    outer = np.abs(x) ** p + np.abs(y) ** p
    middle = np.abs(y) ** p + np.abs(y - x) ** p
    eps = 1e-12 * max(outer, middle, 1.0)
    lower = outer / C <= middle + eps
    upper = middle <= C * outer + eps
    return TriangleCheck(lower_holds=bool(lower), upper_holds=bool(upper), C_used=C)
