"""Discrete approximations of the continuum Fourier transform, STFT and
adjoint STFT, plus defect meters for the exact identities they satisfy.

Conventions (frozen):

* forward sign -1, unitary continuum normalization: the forward transform
  approximates (2*pi)^(-1/2) * integral f(x) exp(-i x xi) dx by a Riemann
  sum with the grid step folded in, so outputs approximate continuum
  integrals rather than bare DFT values;
* D means -i * d/dx, so D^k f = (-i)^k f^(k);
* window shifts are realized by integer index shifts with zero fill, never
  periodic wrap-around.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import fftconvolve

from .errors import BoundaryMassError, GridError
from .grids import Grid1D, SampledFunction, TFGrid, TFR

__all__ = [
    "dft", "idft", "dft2", "stft", "adjoint_stft", "spectral_derivative",
    "twisted_convolution_defect", "BOUNDARY_FLOOR",
]

# Relative boundary-mass threshold gating derivative and defect operations.
BOUNDARY_FLOOR = 1e-10

_SQRT_2PI = np.sqrt(2.0 * np.pi)


def _require_pow2_symmetric(f: SampledFunction, what: str):
    n = f.grid.count
    if n & (n - 1):
        raise GridError(f"{what}: count {n} is not a power of two")
    if f.grid.center != 0.0:
        raise GridError(f"{what}: grid must be centered at 0")


def dft(f: SampledFunction) -> SampledFunction:
    """Forward transform onto the dual grid (same count, step 2*pi/(count*step))."""
    _require_pow2_symmetric(f, "dft")
    n = f.grid.count
    m = (n - 1) / 2.0
    alpha = 2.0 * np.pi * m / n
    idx = np.arange(n)
    pre = np.exp(1j * alpha * idx)
    post = np.exp(1j * alpha * idx) * np.exp(-2j * np.pi * m * m / n)
    vals = f.grid.step / _SQRT_2PI * post * np.fft.fft(f.values * pre)
    return SampledFunction(f.grid.dual(), vals)


def idft(F: SampledFunction) -> SampledFunction:
    """Inverse transform; idft(dft(f)) recovers f on the original grid."""
    _require_pow2_symmetric(F, "idft")
    n = F.grid.count
    m = (n - 1) / 2.0
    alpha = 2.0 * np.pi * m / n
    idx = np.arange(n)
    pre = np.exp(-1j * alpha * idx)
    post = np.exp(-1j * alpha * idx) * np.exp(2j * np.pi * m * m / n)
    vals = n * F.grid.step / _SQRT_2PI * post * np.fft.ifft(F.values * pre)
    return SampledFunction(F.grid.dual(), vals)


def _dft_pass(vals: np.ndarray, grid: Grid1D, axis: int) -> np.ndarray:
    """Phase-corrected unitary-continuum transform along one axis of a 2-D array."""
    n = grid.count
    if n & (n - 1):
        raise GridError(f"dft2: count {n} is not a power of two")
    if grid.center != 0.0:
        raise GridError("dft2: grids must be centered at 0")
    m = (n - 1) / 2.0
    alpha = 2.0 * np.pi * m / n
    idx = np.arange(n)
    pre = np.exp(1j * alpha * idx)
    post = np.exp(1j * alpha * idx) * np.exp(-2j * np.pi * m * m / n)
    shape = [1, 1]
    shape[axis] = n
    pre = pre.reshape(shape)
    post = post.reshape(shape)
    return grid.step / _SQRT_2PI * post * np.fft.fft(vals * pre, axis=axis)


def dft2(a: TFR) -> TFR:
    """2-D transform of a time-frequency symbol: axis 0 (x -> eta) and
    axis 1 (xi -> y), each with the unitary continuum convention."""
    vals = _dft_pass(a.values, a.tfgrid.xgrid, axis=0)
    vals = _dft_pass(vals, a.tfgrid.xigrid, axis=1)
    return TFR(TFGrid(a.tfgrid.xgrid.dual(), a.tfgrid.xigrid.dual()), vals)


def _shifted_window(window: np.ndarray, k: int) -> np.ndarray:
    """window values index-shifted by k samples (w(t - k*step)), zero fill."""
    out = np.zeros_like(window)
    n = window.shape[0]
    if k >= n or k <= -n:
        return out
    if k >= 0:
        out[k:] = window[: n - k]
    else:
        out[: n + k] = window[-k:]
    return out


def stft(f: SampledFunction, window: SampledFunction, tfgrid: TFGrid) -> TFR:
    """Short-time Fourier transform V(x, xi) = F[f * conj(w(. - x))](xi).

    Every x in tfgrid.xgrid must be an integer multiple of the sample step
    so the window translate is exact by index shifting; xi is free (the
    windowed Riemann sum is evaluated directly at each xi).
    """
    if f.grid != window.grid:
        raise GridError("stft: f and window must share a grid")
    shifts = [f.grid.shift_index(x) for x in tfgrid.xgrid.coords]
    t = f.grid.coords
    xi = tfgrid.xigrid.coords
    # columns of G are the windowed slices f(t) conj(w(t - x))
    g = np.empty((f.grid.count, len(shifts)), dtype=complex)
    wconj = np.conj(window.values)
    for c, k in enumerate(shifts):
        g[:, c] = f.values * _shifted_window(wconj, k)
    kernel = np.exp(-1j * np.outer(t, xi))
    vals = (f.grid.step / _SQRT_2PI) * (g.T @ kernel)
    return TFR(tfgrid, vals)


def adjoint_stft(F: TFR, window: SampledFunction) -> SampledFunction:
    """Adjoint of the STFT against the 2-D Riemann inner product:

    g(t) = (2*pi)^(-1/2) * iint F(x, xi) w(t - x) exp(i t xi) dxi dx.

    Satisfies adjoint_stft(stft(f, w), w) ~ ||w||^2 f on well-covered grids.
    """
    shifts = [window.grid.shift_index(x) for x in F.tfgrid.xgrid.coords]
    t = window.grid.coords
    xi = F.tfgrid.xigrid.coords
    phases = F.values @ np.exp(1j * np.outer(xi, t))  # (Nx, Nt)
    out = np.zeros(window.grid.count, dtype=complex)
    for c, k in enumerate(shifts):
        out += phases[c] * _shifted_window(window.values, k)
    w = F.tfgrid.xgrid.step * F.tfgrid.xigrid.step / _SQRT_2PI
    return SampledFunction(window.grid, w * out)


def _check_boundary_mass(values: np.ndarray, what: str, floor: float = BOUNDARY_FLOOR):
    peak = np.max(np.abs(values))
    if peak == 0.0:
        return
    edge = max(np.abs(values[0]), np.abs(values[-1]))
    if edge > floor * peak:
        raise BoundaryMassError(
            f"{what}: boundary samples carry relative mass {edge / peak:.2e} "
            f"(threshold {floor:.0e})"
        )


def spectral_derivative(f: SampledFunction, order: int) -> SampledFunction:
    """D^order f with D = -i d/dx, computed in the Fourier domain as
    idft(xi^order * dft(f))."""
    if not (0 <= order <= 8):
        raise GridError("order must be between 0 and 8")
    if order == 0:
        return f
    _check_boundary_mass(f.values, "spectral_derivative")
    F = dft(f)
    xi = F.grid.coords
    return idft(SampledFunction(F.grid, xi**order * F.values))


def _require_odd_centered(grid: Grid1D, what: str):
    if grid.center != 0.0 or grid.count % 2 == 0:
        raise GridError(f"{what}: needs an odd-count grid centered at 0 "
                        "so coordinate differences stay on the grid")


def twisted_convolution_defect(
    f: SampledFunction,
    phi1: SampledFunction,
    phi2: SampledFunction,
    phi3: SampledFunction,
    tfgrid: TFGrid,
) -> float:
    """Max-norm relative defect of the twisted-convolution identity

    (phi3, phi1) V_{phi2} f(x, xi)
      = (2*pi)^(-1/2) * iint V_{phi1} f(x-y, xi-eta) V_{phi2} phi3(y, eta)
                             exp(-i (x-y) eta) dy deta,

    with the right side evaluated by a Riemann-sum double convolution on
    tfgrid.  The grid must be large enough that all three STFTs have
    decayed below the boundary floor.
    """
    _require_odd_centered(tfgrid.xgrid, "twisted_convolution_defect (x axis)")
    _require_odd_centered(tfgrid.xigrid, "twisted_convolution_defect (xi axis)")

    v2f = stft(f, phi2, tfgrid)
    v1f = stft(f, phi1, tfgrid)
    v23 = stft(phi3, phi2, tfgrid)
    for tfr, name in ((v1f, "V_phi1 f"), (v23, "V_phi2 phi3")):
        a = np.abs(tfr.values)
        peak = a.max()
        if peak > 0:
            edge = max(a[0].max(), a[-1].max(), a[:, 0].max(), a[:, -1].max())
            if edge > BOUNDARY_FLOOR * peak:
                raise BoundaryMassError(
                    f"{name} has relative boundary mass {edge / peak:.2e}"
                )

    inner = phi1.grid.step * np.sum(phi3.values * np.conj(phi1.values))
    lhs = inner * v2f.values

    nx = tfgrid.xgrid.count
    nxi = tfgrid.xigrid.count
    mx = (nx - 1) // 2
    mxi = (nxi - 1) // 2
    u = tfgrid.xgrid.coords
    eta = tfgrid.xigrid.coords
    acc = np.zeros_like(lhs)
    for jeta in range(nxi):
        w = v1f.values * np.exp(-1j * u * eta[jeta])[:, None]
        b = v23.values[:, jeta]
        conv = fftconvolve(w, b[:, None], axes=0)[mx : mx + nx]
        # xi - eta maps xi index jxi to v1f column jxi - jeta + mxi
        lo = max(0, jeta - mxi)
        hi = min(nxi, nxi + jeta - mxi)
        acc[:, lo:hi] += conv[:, lo - jeta + mxi : hi - jeta + mxi]
    weight = tfgrid.xgrid.step * tfgrid.xigrid.step / _SQRT_2PI
    rhs = weight * acc

    scale = np.max(np.abs(lhs))
    if scale == 0.0:
        return float(np.max(np.abs(rhs)))
    return float(np.max(np.abs(lhs - rhs)) / scale)
