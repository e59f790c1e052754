"""Envelope fitting and membership verdicts for sub-exponential decay classes.

A one-parameter class is named by a :class:`GSIndex` with exactly one
finite entry: a finite ``s`` constrains the function side with envelopes
C * exp(-r |x|^(1/s)); a finite ``sigma`` constrains the Fourier side the
same way.  The unconstrained side is always a polynomial-envelope table
(1+|.|^2)^(-N), N = 0..n_max.  Roumieu classes need one working rate,
Beurling classes need every rate in a trial list.

Quantifiers over all r > 0 / all N are finitized to configurable trial
lists; finiteness of a sup on an unbounded domain is proxied by interior
attainment on the truncated grid (argmax not within a guard band of the
truncation boundary).  Samples below a relative noise floor are excluded
from rate fits and polynomial tables; a sup attained at the boundary with
a below-floor raw value yields the honest third verdict, Inconclusive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import GstfError
from .grids import SampledFunction, TFGrid, TFR
from .transforms import dft, dft2, stft

__all__ = [
    "INF", "GSIndex", "ClassifyOptions", "EnvelopeFit", "EnvelopeReport",
    "MEMBER", "NOT_MEMBER", "INCONCLUSIVE",
    "sup_envelope_constant", "fit_decay_rate", "fit_poly_table",
    "classify_function", "classify_stft", "dual_growth_report",
    "classify_symbol",
]

INF = math.inf

MEMBER = "Member"
NOT_MEMBER = "NotMember"
INCONCLUSIVE = "Inconclusive"

_LOG_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class GSIndex:
    """(s, sigma, regularity) naming a decay class; INF marks the
    unconstrained side of a one-parameter space."""

    s: float
    sigma: float
    regularity: str  # "roumieu" or "beurling"

    def __post_init__(self):
        if self.regularity not in ("roumieu", "beurling"):
            raise GstfError(f"unknown regularity {self.regularity!r}")
        if math.isinf(self.s) and math.isinf(self.sigma):
            raise GstfError("at least one of s, sigma must be finite")
        for v in (self.s, self.sigma):
            if not math.isinf(v) and not (v > 0 and math.isfinite(v)):
                raise GstfError("finite class indices must be strictly positive")

    @property
    def one_parameter(self) -> bool:
        return math.isinf(self.s) or math.isinf(self.sigma)


@dataclass(frozen=True)
class ClassifyOptions:
    r_min: float = 1e-3
    r_scale: float = 1.0
    r_list: tuple = ()  # empty = default geometric list times r_scale
    n_max: int = 8
    floor_rel: float = 1e-13
    guard: int = 2

    def trial_rs(self) -> tuple:
        base = self.r_list if self.r_list else (0.25, 0.5, 1.0, 2.0, 4.0)
        return tuple(r * self.r_scale for r in base)


@dataclass(frozen=True)
class EnvelopeFit:
    C: float  # may be +inf when the weighted product overflows
    attained_at: int
    interior_attained: bool
    raw_abs: float  # |f| at the argmax, for floor diagnostics
    # Sup attained at the edge of the trustworthy (above-floor) samples
    # while still rising: the data cannot settle the bound either way.
    masked_edge: bool = False


@dataclass(frozen=True)
class EnvelopeReport:
    C_peak: float
    r_fit: float
    N_table: dict = field(default_factory=dict)
    beurling_table: dict = field(default_factory=dict)
    verdict: str = INCONCLUSIVE
    diagnostics: dict = field(default_factory=dict)


def _interior(idx: int, n: int, guard: int) -> bool:
    return guard <= idx <= n - 1 - guard


def _weighted_sup(absvals: np.ndarray, logweight: np.ndarray, guard: int,
                  mask: np.ndarray | None = None) -> EnvelopeFit:
    """Sup of |f| * exp(logweight) in the log domain, with attainment
    diagnostics.  ``mask`` selects the admissible samples; an argmax whose
    neighbor is inadmissible is flagged masked_edge (the sup may continue
    growing where the samples are round-off garbage)."""
    n = absvals.shape[0]
    with np.errstate(divide="ignore"):
        logv = np.log(absvals) + logweight
    if mask is not None:
        logv = np.where(mask, logv, -np.inf)
    if not np.any(np.isfinite(logv)):
        return EnvelopeFit(C=0.0, attained_at=n // 2, interior_attained=True,
                           raw_abs=0.0)
    i = int(np.argmax(logv))
    top = logv[i]
    c = math.inf if top > _LOG_MAX else float(math.exp(top))
    interior = _interior(i, n, guard)
    edge = False
    if mask is not None and interior:
        edge = (i > 0 and not mask[i - 1]) or (i < n - 1 and not mask[i + 1])
    return EnvelopeFit(C=c, attained_at=i, interior_attained=interior,
                       raw_abs=float(absvals[i]), masked_edge=bool(edge))


def sup_envelope_constant(f: SampledFunction, r: float, s: float,
                          guard: int = 2,
                          floor: float | None = None) -> EnvelopeFit:
    """Sup over the grid of |f(x)| exp(r |x|^(1/s)).

    Pass an absolute ``floor`` when the samples came out of a transform
    (FFT, STFT): below it they are round-off noise, and the unbounded
    weight would amplify that noise into a fake boundary sup."""
    if s <= 0:
        raise GstfError("s must be positive")
    a = np.abs(f.values)
    w = r * np.abs(f.x) ** (1.0 / s)
    mask = a >= floor if floor is not None else None
    return _weighted_sup(a, w, guard, mask)


def fit_decay_rate(f: SampledFunction, s: float, floor: float | None = None) -> float:
    """Largest rate r with |f(x)| <= sup|f| * exp(-r |x|^(1/s)) on the grid.

    Samples below the noise floor or inside one step of the origin are
    excluded; +inf when no sample qualifies (e.g. compact support)."""
    if s <= 0:
        raise GstfError("s must be positive")
    a = np.abs(f.values)
    c_peak = float(a.max())
    if c_peak == 0.0:
        return math.inf
    if floor is None:
        floor = 1e-13 * c_peak
    x = np.abs(f.x)
    sel = (a > floor) & (x >= f.grid.step)
    if not np.any(sel):
        return math.inf
    ratios = (math.log(c_peak) - np.log(a[sel])) / x[sel] ** (1.0 / s)
    return float(ratios.min())


def fit_poly_table(f: SampledFunction, n_max: int, floor_rel: float = 1e-13,
                   guard: int = 2) -> dict:
    """C_N = sup |f(x)| (1+x^2)^N for N = 0..n_max, below-floor samples
    excluded (polynomial weights amplify round-off garbage at the rim)."""
    if n_max > 16:
        raise GstfError("n_max must be at most 16")
    a = np.abs(f.values)
    peak = a.max()
    mask = a >= floor_rel * peak if peak > 0 else None
    logw1 = np.log1p(f.x**2)
    return {n: _weighted_sup(a, n * logw1, guard, mask) for n in range(n_max + 1)}


def _poly_side(fn: SampledFunction, opts: ClassifyOptions):
    table = fit_poly_table(fn, opts.n_max, opts.floor_rel, opts.guard)
    ok = all(f.interior_attained and not f.masked_edge for f in table.values())
    inconclusive = any(f.masked_edge for f in table.values())
    return ok, inconclusive, table


def _decay_side_roumieu(fn: SampledFunction, s: float, opts: ClassifyOptions):
    r_fit = fit_decay_rate(fn, s)
    return r_fit >= opts.r_min, r_fit


def _decay_side_beurling(fn: SampledFunction, s: float, opts: ClassifyOptions,
                         masked: bool = False):
    """Trial-list sup fits.  ``masked`` marks transform-computed samples,
    whose sub-floor values are noise and get excluded; direct samples are
    trusted all the way down, so a boundary-attained sup is conclusive."""
    floor = None
    if masked:
        floor = opts.floor_rel * float(np.abs(fn.values).max())
    table = {}
    ok = True
    inconclusive = False
    for r in opts.trial_rs():
        fit = sup_envelope_constant(fn, r, s, opts.guard, floor)
        table[r] = fit
        if fit.masked_edge:
            inconclusive = True  # still rising where samples turn to noise
        elif not fit.interior_attained:
            ok = False
    return ok and not inconclusive, table, inconclusive


def _sided_inputs(f: SampledFunction, idx: GSIndex):
    """Return (decay_fn, decay_index, poly_fn) for a one-parameter class."""
    if not idx.one_parameter:
        raise GstfError("classify_function handles one-parameter spaces; "
                        "classify each side separately")
    if math.isinf(idx.sigma):  # S_s / Sigma_s: decay on f, poly table on f^
        return f, idx.s, dft(f)
    return dft(f), idx.sigma, f  # S^sigma / Sigma^sigma: mirrored


def classify_function(f: SampledFunction, idx: GSIndex,
                      opts: ClassifyOptions | None = None) -> EnvelopeReport:
    """Membership verdict for f against a one-parameter class."""
    opts = opts or ClassifyOptions()
    a = np.abs(f.values)
    c_peak = float(a.max())
    if c_peak == 0.0:
        return EnvelopeReport(C_peak=0.0, r_fit=math.inf, verdict=MEMBER,
                              diagnostics={"zero_function": True})
    decay_fn, s, poly_fn = _sided_inputs(f, idx)
    decay_is_transform = not math.isinf(idx.sigma)

    poly_ok, poly_inc, n_table = _poly_side(poly_fn, opts)
    diagnostics = {"floor_rel": opts.floor_rel, "guard": opts.guard}
    decay_inc = False
    if idx.regularity == "roumieu":
        decay_ok, r_fit = _decay_side_roumieu(decay_fn, s, opts)
        beurling_table = {}
    else:
        decay_ok, beurling_table, decay_inc = _decay_side_beurling(
            decay_fn, s, opts, masked=decay_is_transform)
        r_fit = fit_decay_rate(decay_fn, s)

    verdict = _aggregate(decay_ok, decay_inc, poly_ok, poly_inc)
    return EnvelopeReport(C_peak=c_peak, r_fit=r_fit, N_table=n_table,
                          beurling_table=beurling_table, verdict=verdict,
                          diagnostics=diagnostics)


def _aggregate(decay_ok: bool, decay_inc: bool, poly_ok: bool,
               poly_inc: bool) -> str:
    """Hard failure beats everything; otherwise an at-the-noise-edge fit
    leaves the verdict open."""
    if decay_ok and poly_ok:
        return MEMBER
    hard_fail = (not decay_ok and not decay_inc) or (not poly_ok and not poly_inc)
    return NOT_MEMBER if hard_fail else INCONCLUSIVE


def _profiles(v: TFR, idx: GSIndex):
    """Max-magnitude profiles of a TFR along the decay and polynomial axes.

    For a finite s the decay variable is position and the polynomial
    variable is frequency; for a finite sigma the roles transpose."""
    a = np.abs(v.values)
    x_profile = SampledFunction(v.tfgrid.xgrid, a.max(axis=1))
    xi_profile = SampledFunction(v.tfgrid.xigrid, a.max(axis=0))
    if math.isinf(idx.sigma):
        return x_profile, idx.s, xi_profile
    return xi_profile, idx.sigma, x_profile


def classify_stft(f: SampledFunction, window: SampledFunction, idx: GSIndex,
                  tfgrid: TFGrid, opts: ClassifyOptions | None = None,
                  check_window: bool = True,
                  precomputed: TFR | None = None) -> EnvelopeReport:
    """Membership verdict from the decay signature of V_window f.

    The two-variable envelope C_N (1+|freq var|^2)^(-N) exp(-r |decay
    var|^(1/s)) is checked through its marginals: the max-profile along
    each axis is fed to the same fitters as classify_function.  Pass
    ``precomputed = stft(f, window, tfgrid)`` to reuse one transform
    across several classes."""
    opts = opts or ClassifyOptions()
    if check_window:
        wr = classify_function(window, idx, opts)
        if wr.verdict != MEMBER:
            raise GstfError(
                f"window is {wr.verdict} for the requested class; "
                "pick a window inside the class")
    v = precomputed if precomputed is not None else stft(f, window, tfgrid)
    c_peak = float(np.abs(v.values).max())
    if c_peak == 0.0:
        return EnvelopeReport(C_peak=0.0, r_fit=math.inf, verdict=MEMBER,
                              diagnostics={"zero_function": True})
    decay_fn, s, poly_fn = _profiles(v, idx)

    poly_ok, poly_inc, n_table = _poly_side(poly_fn, opts)
    decay_inc = False
    if idx.regularity == "roumieu":
        decay_ok, r_fit = _decay_side_roumieu(decay_fn, s, opts)
        beurling_table = {}
    else:
        # STFT samples are quadrature outputs: sub-floor values are noise.
        decay_ok, beurling_table, decay_inc = _decay_side_beurling(
            decay_fn, s, opts, masked=True)
        r_fit = fit_decay_rate(decay_fn, s)

    verdict = _aggregate(decay_ok, decay_inc, poly_ok, poly_inc)
    return EnvelopeReport(C_peak=c_peak, r_fit=r_fit, N_table=n_table,
                          beurling_table=beurling_table, verdict=verdict,
                          diagnostics={"floor_rel": opts.floor_rel,
                                       "guard": opts.guard})


def dual_growth_report(f: SampledFunction, window: SampledFunction,
                       idx: GSIndex, tfgrid: TFGrid,
                       opts: ClassifyOptions | None = None,
                       check_window: bool = True,
                       precomputed: TFR | None = None) -> EnvelopeReport:
    """Dual-space probe: |V| must stay under (1+|freq var|^2)^N0 *
    exp(r |decay var|^(1/s)) for some N0 <= n_max.

    Roumieu duals need an N0 for every trial r; Beurling duals need a
    single working r0."""
    opts = opts or ClassifyOptions()
    if check_window:
        wr = classify_function(window, idx, opts)
        if wr.verdict != MEMBER:
            raise GstfError(
                f"window is {wr.verdict} for the requested class; "
                "pick a window inside the class")
    v = precomputed if precomputed is not None else stft(f, window, tfgrid)
    a = np.abs(v.values)
    c_peak = float(a.max())
    if math.isinf(idx.sigma):
        decay_x = np.abs(tfgrid.xgrid.coords)[:, None] ** (1.0 / idx.s)
        logpoly = np.log1p(tfgrid.xigrid.coords**2)[None, :]
    else:
        decay_x = np.abs(tfgrid.xigrid.coords)[None, :] ** (1.0 / idx.sigma)
        logpoly = np.log1p(tfgrid.xgrid.coords**2)[:, None]

    flat_interior = _flat_interior_mask(a.shape, opts.guard)
    with np.errstate(divide="ignore"):
        loga = np.log(a)

    n0_by_r = {}
    table = {}
    for r in opts.trial_rs():
        found = None
        for n0 in range(opts.n_max + 1):
            logv = loga - n0 * logpoly - r * decay_x
            if not np.any(np.isfinite(logv)):
                found = n0  # zero TFR: trivially bounded
                break
            i = int(np.argmax(logv))
            if flat_interior[i]:
                found = n0
                break
        n0_by_r[r] = found
        ii = i if np.any(np.isfinite(loga)) else a.size // 2
        top = logv.ravel()[ii]
        table[r] = EnvelopeFit(
            C=math.inf if top > _LOG_MAX else float(math.exp(top)),
            attained_at=ii,
            interior_attained=found is not None,
            raw_abs=float(a.ravel()[ii]),
        )
    if idx.regularity == "roumieu":
        member = all(n0 is not None for n0 in n0_by_r.values())
    else:
        member = any(n0 is not None for n0 in n0_by_r.values())
    return EnvelopeReport(C_peak=c_peak, r_fit=math.nan, beurling_table=table,
                          verdict=MEMBER if member else NOT_MEMBER,
                          diagnostics={"N0_by_r": n0_by_r})


def _flat_interior_mask(shape, guard: int) -> np.ndarray:
    interior = np.zeros(shape, dtype=bool)
    interior[guard:shape[0] - guard, guard:shape[1] - guard] = True
    return interior.ravel()


def classify_symbol(a: TFR, s_or_sigma: float, side: str,
                    opts: ClassifyOptions | None = None) -> EnvelopeReport:
    """Mixed-envelope verdict for a phase-space symbol a(x, xi).

    side="position-decay": sub-exponential decay in x and a polynomial
    table in xi for a itself; polynomial in eta and sub-exponential in y
    for its 2-D transform a^(eta, y).  side="frequency-decay" mirrors the
    roles.  The single index is used on both sub-exponential axes, which
    is the symbol hypothesis the Toeplitz continuity probes need."""
    opts = opts or ClassifyOptions()
    if side not in ("position-decay", "frequency-decay"):
        raise GstfError(f"unknown side {side!r}")
    mag = np.abs(a.values)
    c_peak = float(mag.max())
    if c_peak == 0.0:
        return EnvelopeReport(C_peak=0.0, r_fit=math.inf, verdict=MEMBER,
                              diagnostics={"zero_function": True})
    ahat = dft2(a)
    if side == "position-decay":
        decay_fn = SampledFunction(a.tfgrid.xgrid, mag.max(axis=1))
        poly_fn = SampledFunction(a.tfgrid.xigrid, mag.max(axis=0))
        hat_mag = np.abs(ahat.values)
        hat_poly = SampledFunction(ahat.tfgrid.xgrid, hat_mag.max(axis=1))
        hat_decay = SampledFunction(ahat.tfgrid.xigrid, hat_mag.max(axis=0))
    else:
        decay_fn = SampledFunction(a.tfgrid.xigrid, mag.max(axis=0))
        poly_fn = SampledFunction(a.tfgrid.xgrid, mag.max(axis=1))
        hat_mag = np.abs(ahat.values)
        hat_poly = SampledFunction(ahat.tfgrid.xigrid, hat_mag.max(axis=0))
        hat_decay = SampledFunction(ahat.tfgrid.xgrid, hat_mag.max(axis=1))

    ok_decay, r_fit = _decay_side_roumieu(decay_fn, s_or_sigma, opts)
    ok_poly, inc_poly, n_table = _poly_side(poly_fn, opts)
    ok_hat_decay, r_fit_hat = _decay_side_roumieu(hat_decay, s_or_sigma, opts)
    ok_hat_poly, inc_hat, hat_table = _poly_side(hat_poly, opts)

    if ok_decay and ok_poly and ok_hat_decay and ok_hat_poly:
        verdict = MEMBER
    elif (not ok_decay or not ok_hat_decay
          or (not ok_poly and not inc_poly)
          or (not ok_hat_poly and not inc_hat)):
        verdict = NOT_MEMBER
    else:
        verdict = INCONCLUSIVE
    return EnvelopeReport(
        C_peak=c_peak, r_fit=r_fit, N_table=n_table,
        verdict=verdict,
        diagnostics={"r_fit_transform": r_fit_hat,
                     "transform_N_table": hat_table,
                     "side": side})
