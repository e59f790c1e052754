"""Constructive membership witnesses and the triviality boundary.

Two-parameter classes with decay index s and Fourier index sigma are
nontrivial iff s + sigma > 1 (Beurling) resp. >= 1 (Roumieu).  Where an
elementary formula lands inside the class we return it sampled; at the
trivial boundary we demonstrate failure on a candidate family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import Bump, Gaussian, Hermite, catalog_eval
from .classify import INF, ClassifyOptions, GSIndex, _decay_side_beurling
from .errors import TrivialSpace, UnsupportedRegion
from .grids import Grid1D, SampledFunction, build_grid
from .transforms import dft

__all__ = [
    "default_witness_grid", "witness_check_options", "make_witness",
    "BoundaryCandidate", "BoundaryReport", "boundary_triviality_demo",
]


def default_witness_grid() -> Grid1D:
    return build_grid(12.0, 11)


def witness_check_options() -> ClassifyOptions:
    """Trial rates small enough that the envelope/function crossover of
    every shipped witness stays inside the default grid.  The noise floor
    is looser than the default because the transform-of-bump witness goes
    through a forward+inverse FFT round trip, whose error is ~1e-13
    relative rather than ~1e-16."""
    return ClassifyOptions(n_max=4, r_list=(0.0625, 0.125, 0.25, 0.5),
                           floor_rel=1e-11)


def make_witness(idx: GSIndex, grid: Grid1D | None = None) -> SampledFunction:
    """A sampled nontrivial member of the two-parameter class idx.

    Constructions: gaussian(1) when both indices clear 1/2; bump() when
    the Fourier index clears 1 (any decay index); the transform of bump()
    in the mirrored case.  TrivialSpace in the trivial region;
    UnsupportedRegion where the class is nontrivial but no elementary
    formula is shipped.
    """
    if idx.one_parameter:
        raise UnsupportedRegion("witnesses are for two-parameter classes")
    grid = grid or default_witness_grid()
    s, sigma = idx.s, idx.sigma
    beurling = idx.regularity == "beurling"
    trivial = (s + sigma <= 1.0) if beurling else (s + sigma < 1.0)
    if trivial:
        raise TrivialSpace(
            f"class with s={s}, sigma={sigma} ({idx.regularity}) "
            "contains only the zero function")

    def clears(v, bound):
        return v > bound if beurling else v >= bound

    if clears(min(s, sigma), 0.5):
        return catalog_eval(Gaussian(1.0), grid)
    if clears(sigma, 1.0):
        return catalog_eval(Bump(), grid)
    if clears(s, 1.0):
        return dft(catalog_eval(Bump(), grid))
    raise UnsupportedRegion(
        f"class s={s}, sigma={sigma} ({idx.regularity}) is nontrivial but "
        "no elementary witness formula is shipped for this region")


@dataclass(frozen=True)
class BoundaryCandidate:
    name: str
    failed: bool
    failing_side: str  # "function", "fourier", or "" if it passed
    first_failing_r: float  # nan if it passed
    attained_at: int


@dataclass(frozen=True)
class BoundaryReport:
    s: float
    sigma: float
    candidates: tuple
    all_failed: bool


def _first_boundary_failure(fn: SampledFunction, s: float,
                            opts: ClassifyOptions):
    """Smallest trial r whose envelope sup is boundary-attained; None if
    every trial passes."""
    _, table, _ = _decay_side_beurling(fn, s, opts)
    for r in sorted(table):
        fit = table[r]
        if not fit.interior_attained:
            return r, fit.attained_at
    return None


def boundary_triviality_demo(s: float, grid: Grid1D | None = None,
                             opts: ClassifyOptions | None = None) -> BoundaryReport:
    """Evidence for triviality on the Beurling boundary line s + sigma = 1.

    Runs the two-sided trial-list test at (s, 1-s) over a candidate
    family of Gaussians and Hermite functions and records each first
    failure.  all_failed = True is the expected outcome for every
    0 < s < 1.
    """
    if not (0.0 < s < 1.0):
        raise TrivialSpace("boundary demo needs 0 < s < 1")
    sigma = 1.0 - s
    grid = grid or default_witness_grid()
    opts = opts or ClassifyOptions(n_max=4)  # default trial list {0.25..4}
    candidates = [(f"gaussian({a})", Gaussian(a)) for a in (0.5, 1.0, 2.0)]
    candidates += [(f"hermite({k})", Hermite(k)) for k in range(4)]

    rows = []
    for name, spec in candidates:
        f = catalog_eval(spec, grid)
        hit = _first_boundary_failure(f, s, opts)
        side = "function"
        if hit is None:
            hit = _first_boundary_failure(dft(f), sigma, opts)
            side = "fourier"
        if hit is None:
            rows.append(BoundaryCandidate(name, False, "", math.nan, -1))
        else:
            r, at = hit
            rows.append(BoundaryCandidate(name, True, side, r, at))
    rows = tuple(rows)
    return BoundaryReport(s=s, sigma=sigma, candidates=rows,
                          all_failed=all(c.failed for c in rows))
