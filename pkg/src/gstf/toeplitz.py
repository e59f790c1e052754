"""Gabor-multiplier (Toeplitz) operators and the product-transform identity.

The operator is realized in factored form: analyze with window phi1,
multiply pointwise by a phase-space symbol, synthesize with window phi2.
The weak (inner-product) definition is recovered by the adjoint-symmetry
check in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import ClassifyOptions, GSIndex, MEMBER, classify_function
from .errors import BoundaryMassError, GridError, GstfError
from .grids import SampledFunction, TFGrid, TFR
from .transforms import BOUNDARY_FLOOR, adjoint_stft, dft2, stft

__all__ = [
    "apply_toeplitz", "stft_product_transform_defect",
    "ContinuityEntry", "ContinuityReport", "continuity_probe",
]


def apply_toeplitz(a: TFR, phi1: SampledFunction, phi2: SampledFunction,
                   f: SampledFunction) -> SampledFunction:
    """adjoint_stft(a * stft(f, phi1), phi2) on the symbol's TFGrid."""
    if phi1.grid != f.grid or phi2.grid != f.grid:
        raise GridError("apply_toeplitz: windows and f must share a grid")
    v = stft(f, phi1, a.tfgrid)
    return adjoint_stft(TFR(a.tfgrid, a.values * v.values), phi2)


def _reverse(values: np.ndarray, axis: int) -> np.ndarray:
    # On a symmetric grid, coordinate negation is index reversal.
    return np.flip(values, axis=axis)


def _edge_mass(values: np.ndarray) -> float:
    a = np.abs(values)
    peak = a.max()
    if peak == 0.0:
        return 0.0
    edge = max(a[0].max(), a[-1].max(), a[:, 0].max(), a[:, -1].max())
    return float(edge / peak)


def stft_product_transform_defect(f: SampledFunction, g: SampledFunction,
                                  phi1: SampledFunction, phi2: SampledFunction,
                                  tfgrid: TFGrid) -> dict:
    """Both phase signs of the product-transform factorization

    F_2[conj(V_phi1 f) * V_phi2 g](eta, y)
        =? exp(+-i y eta) * V_phi2 phi1(y, -eta) * V_f g(-y, eta),

    returned as {"defect_plus", "defect_minus"} max-norm relative
    defects.  The grids must be arranged so the dual coordinates land on
    window-shift multiples (e.g. xi-step an integer divisor of the time
    Nyquist band); the transform side needs both counts to be powers of
    two.
    """
    v1 = stft(f, phi1, tfgrid)
    v2 = stft(g, phi2, tfgrid)
    product = np.conj(v1.values) * v2.values
    if _edge_mass(product) > BOUNDARY_FLOOR:
        raise BoundaryMassError(
            "STFT product has not decayed at the grid boundary; "
            "enlarge the time-frequency grid")
    lhs = dft2(TFR(tfgrid, product))

    eta_grid = tfgrid.xgrid.dual()
    y_grid = tfgrid.xigrid.dual()
    rhs_grid = TFGrid(y_grid, eta_grid)
    # A[y_i, eta_k] = V_phi2 phi1(y_i, eta_k); needed at (y, -eta)
    A = stft(phi1, phi2, rhs_grid).values
    # B[y_i, eta_k] = V_f g(y_i, eta_k); needed at (-y, eta)
    B = stft(g, f, rhs_grid).values
    # transpose both to (eta, y) layout matching lhs
    a_part = _reverse(A, axis=1).T        # (eta, y): A(y, -eta)
    b_part = _reverse(B, axis=0).T        # (eta, y): B(-y, eta)
    phase = np.exp(1j * np.outer(eta_grid.coords, y_grid.coords))
    scale = np.max(np.abs(lhs.values))
    if scale == 0.0:
        return {"defect_plus": 0.0, "defect_minus": 0.0}
    out = {}
    for name, ph in (("defect_plus", phase), ("defect_minus", np.conj(phase))):
        rhs = ph * a_part * b_part
        out[name] = float(np.max(np.abs(lhs.values - rhs)) / scale)
    return out


@dataclass(frozen=True)
class ContinuityEntry:
    r_fit_in: float
    r_fit_out: float
    verdict_in: str
    verdict_out: str


@dataclass(frozen=True)
class ContinuityReport:
    entries: tuple
    all_member: bool
    symbol_verdict: str


def continuity_probe(a: TFR, phi1: SampledFunction, phi2: SampledFunction,
                     testset: list, idx: GSIndex,
                     opts: ClassifyOptions | None = None,
                     symbol_verdict: str = "unchecked") -> ContinuityReport:
    """Desk-scale continuity evidence: apply the operator to each test
    function and classify the output in the same class.

    ``symbol_verdict`` is carried through from a prior classify_symbol or
    dual-growth run on the symbol; the probe itself only measures
    envelope-in / envelope-out behavior.
    """
    opts = opts or ClassifyOptions()
    for name, w in (("phi1", phi1), ("phi2", phi2)):
        r = classify_function(w, idx, opts)
        if r.verdict != MEMBER:
            raise GstfError(f"{name} is {r.verdict} for the probed class")
    entries = []
    for f in testset:
        rep_in = classify_function(f, idx, opts)
        out = apply_toeplitz(a, phi1, phi2, f)
        rep_out = classify_function(out, idx, opts)
        entries.append(ContinuityEntry(
            r_fit_in=rep_in.r_fit, r_fit_out=rep_out.r_fit,
            verdict_in=rep_in.verdict, verdict_out=rep_out.verdict))
    entries = tuple(entries)
    return ContinuityReport(
        entries=entries,
        all_member=all(e.verdict_out == MEMBER for e in entries),
        symbol_verdict=symbol_verdict)
