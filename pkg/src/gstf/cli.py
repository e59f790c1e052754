"""Command-line front door.

Subcommands: transform, stft, classify, witness, toeplitz, verify.
Reports are JSON (fixed field order, floats at 17 significant digits, so
identical invocations give byte-identical files) or CSV.  Exit codes:
0 success, 1 failed assertion (--assert-member, or a failed verify
suite), 2 errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time

import numpy as np

from .catalog import Gaussian, Hermite, Modulate, Translate, catalog_eval
from .classify import (ClassifyOptions, GSIndex, MEMBER, classify_function,
                       classify_stft, fit_decay_rate)
from .errors import GridError, GstfError
from .grids import Grid1D, SampledFunction, TFGrid, TFR, build_grid
from .parse import parse_function_expr
from .toeplitz import (apply_toeplitz, continuity_probe,
                       stft_product_transform_defect)
from .transforms import adjoint_stft, dft, stft, twisted_convolution_defect
from .witnesses import make_witness

__all__ = ["main", "run_command"]

SCHEMA_VERSION = 1


# ---------------------------------------------------------------- reports

def _jfloat(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(float(x), ".17g")


def _jdump(obj) -> str:
    """Deterministic JSON: insertion order kept, floats at 17 sig digits."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _jfloat(float(obj))
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(obj, dict):
        items = ", ".join(f"{_jdump(str(k))}: {_jdump(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_jdump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, command: str, params: dict, body: dict,
            elapsed: float) -> dict:
    rep = {"schema_version": SCHEMA_VERSION, "command": command,
           "params": params}
    rep.update(body)
    rep["timings"] = {"elapsed_s": elapsed} if args.timings else None
    return rep


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


# ----------------------------------------------------------------- inputs

def _load_csv_samples(path: str) -> SampledFunction:
    xs, vals = [], []
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows and rows[0] and rows[0][0].strip().lower() == "x":
        rows = rows[1:]
    for row in rows:
        if not row:
            continue
        x = float(row[0])
        re = float(row[1])
        im = float(row[2]) if len(row) > 2 else 0.0
        xs.append(x)
        vals.append(complex(re, im))
    if len(xs) < 2:
        raise GridError("CSV input needs at least two samples")
    xs = np.asarray(xs)
    steps = np.diff(xs)
    step = steps[0]
    if step <= 0 or np.any(np.abs(steps - step) > 1e-9 * abs(step)):
        raise GridError("CSV input must have strictly increasing uniform x")
    grid = Grid1D(float((xs[0] + xs[-1]) / 2), float(step), len(xs))
    return SampledFunction(grid, np.asarray(vals))


def _input_function(args) -> tuple:
    """(SampledFunction, description) from --expr or --in."""
    if getattr(args, "infile", None):
        return _load_csv_samples(args.infile), f"csv:{args.infile}"
    if not args.expr:
        raise GstfError("provide --expr or --in")
    spec = parse_function_expr(args.expr)
    grid = _make_grid(args)
    return catalog_eval(spec, grid), str(spec)


def _make_grid(args) -> Grid1D:
    n = args.points
    if n & (n - 1) or n < 2:
        raise GridError("--points must be a power of two")
    return build_grid(args.half_width, n.bit_length() - 1)


def _samples_rows(f: SampledFunction):
    return [(float(x), float(v.real), float(v.imag))
            for x, v in zip(f.x, f.values)]


def _space_index(args) -> GSIndex:
    reg = None
    if args.space:
        reg = {"S": "roumieu", "Sigma": "beurling"}[args.space]
    if args.type:
        if reg is not None and reg != args.type:
            raise GstfError(f"--space {args.space} contradicts --type {args.type}")
        reg = args.type
    if reg is None:
        raise GstfError("provide --space or --type")
    s = args.s if args.s is not None else math.inf
    sigma = args.sigma if args.sigma is not None else math.inf
    return GSIndex(s, sigma, reg)


def _options(args) -> ClassifyOptions:
    kw = {}
    if args.n_max is not None:
        kw["n_max"] = args.n_max
    if args.r_list:
        kw["r_list"] = tuple(float(t) for t in args.r_list.split(","))
    if args.floor is not None:
        kw["floor_rel"] = args.floor
    return ClassifyOptions(**kw)


# ------------------------------------------------------------ subcommands

def _cmd_transform(args) -> int:
    t0 = time.perf_counter()
    f, desc = _input_function(args)
    out = dft(f)
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        _write(args, _csv_text(("x", "value-real", "value-imag"),
                               _samples_rows(out)))
        return 0
    params = {"input": desc, "half_width": args.half_width,
              "points": args.points}
    rep = _report(args, "transform", params, {
        "verdict": None,
        "grid": {"center": out.grid.center, "step": out.grid.step,
                 "count": out.grid.count},
        "samples": _samples_rows(out),
    }, elapsed)
    _write(args, _jdump(rep) + "\n")
    return 0


def _default_tfgrid(grid: Grid1D) -> TFGrid:
    return TFGrid(Grid1D(0.0, 8 * grid.step, 129), Grid1D(0.0, 0.25, 129))


def _cmd_stft(args) -> int:
    t0 = time.perf_counter()
    f, desc = _input_function(args)
    wspec = parse_function_expr(args.window)
    window = catalog_eval(wspec, f.grid)
    tf = _default_tfgrid(f.grid)
    v = stft(f, window, tf)
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        rows = []
        for i, x in enumerate(tf.xgrid.coords):
            for j, xi in enumerate(tf.xigrid.coords):
                val = v.values[i, j]
                rows.append((float(x), float(xi), float(val.real),
                             float(val.imag)))
        _write(args, _csv_text(("x", "xi", "value-real", "value-imag"), rows))
        return 0
    a = np.abs(v.values)
    params = {"input": desc, "window": str(wspec),
              "half_width": args.half_width, "points": args.points}
    rep = _report(args, "stft", params, {
        "verdict": None,
        "max_abs": float(a.max()),
        "profiles": {
            "x": [(float(x), float(p)) for x, p in
                  zip(tf.xgrid.coords, a.max(axis=1))],
            "xi": [(float(xi), float(p)) for xi, p in
                   zip(tf.xigrid.coords, a.max(axis=0))],
        },
    }, elapsed)
    _write(args, _jdump(rep) + "\n")
    return 0


def _fit_tables(rep):
    ntab = {str(n): {"C": f.C, "attained_at": f.attained_at,
                     "interior_attained": f.interior_attained,
                     "masked_edge": f.masked_edge}
            for n, f in sorted(rep.N_table.items())}
    btab = {format(r, ".17g"): {"C": f.C, "attained_at": f.attained_at,
                                "interior_attained": f.interior_attained,
                                "masked_edge": f.masked_edge}
            for r, f in sorted(rep.beurling_table.items())}
    return ntab, btab


def _cmd_classify(args) -> int:
    t0 = time.perf_counter()
    f, desc = _input_function(args)
    idx = _space_index(args)
    opts = _options(args)
    if args.window:
        wspec = parse_function_expr(args.window)
        window = catalog_eval(wspec, f.grid)
        tf = TFGrid(Grid1D(0.0, 4 * f.grid.step, 513), Grid1D(0.0, 0.5, 1001))
        rep = classify_stft(f, window, idx, tf, opts)
        wdesc = str(wspec)
    else:
        rep = classify_function(f, idx, opts)
        wdesc = None
    elapsed = time.perf_counter() - t0
    ntab, btab = _fit_tables(rep)
    params = {"input": desc, "window": wdesc,
              "s": None if math.isinf(idx.s) else idx.s,
              "sigma": None if math.isinf(idx.sigma) else idx.sigma,
              "regularity": idx.regularity,
              "half_width": args.half_width, "points": args.points,
              "n_max": opts.n_max, "r_list": list(opts.trial_rs()),
              "floor": opts.floor_rel}
    if args.format == "csv":
        rows = [("meta", "verdict", rep.verdict, "", "", ""),
                ("meta", "C_peak", format(rep.C_peak, ".17g"), "", "", ""),
                ("meta", "r_fit", _jfloat(rep.r_fit).strip('"'), "", "", "")]
        for n, t in ntab.items():
            rows.append(("poly", n, _jfloat(t["C"]).strip('"'), t["attained_at"],
                         t["interior_attained"], t["masked_edge"]))
        for r, t in btab.items():
            rows.append(("beurling", r, _jfloat(t["C"]).strip('"'),
                         t["attained_at"], t["interior_attained"],
                         t["masked_edge"]))
        _write(args, _csv_text(
            ("kind", "key", "value", "attained_at", "interior_attained",
             "masked_edge"), rows))
    else:
        out = _report(args, "classify", params, {
            "verdict": rep.verdict,
            "fitted": {"C_peak": rep.C_peak, "r_fit": rep.r_fit,
                       "N_table": ntab, "beurling_table": btab},
            "diagnostics": {
                "attainment": {
                    "poly_all_interior": all(
                        t["interior_attained"] and not t["masked_edge"]
                        for t in ntab.values()),
                },
                "floor": opts.floor_rel,
                "guard_band": opts.guard,
            },
        }, elapsed)
        _write(args, _jdump(out) + "\n")
    if args.assert_member and rep.verdict != MEMBER:
        return 1
    return 0


def _cmd_witness(args) -> int:
    t0 = time.perf_counter()
    idx = _space_index(args)
    grid = _make_grid(args)
    w = make_witness(idx, grid)
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        _write(args, _csv_text(("x", "value-real", "value-imag"),
                               _samples_rows(w)))
        return 0
    params = {"s": idx.s, "sigma": idx.sigma, "regularity": idx.regularity,
              "half_width": args.half_width, "points": args.points}
    rep = _report(args, "witness", params, {
        "verdict": "Witness",
        "grid": {"center": w.grid.center, "step": w.grid.step,
                 "count": w.grid.count},
        "samples": _samples_rows(w),
    }, elapsed)
    _write(args, _jdump(rep) + "\n")
    return 0


def _cmd_toeplitz(args) -> int:
    t0 = time.perf_counter()
    f, desc = _input_function(args)
    wspec = parse_function_expr(args.window)
    window = catalog_eval(wspec, f.grid)
    window = window * (1.0 / window.norm2())
    tf = _default_tfgrid(f.grid)
    if args.symbol == "unit":
        sym = TFR(tf, np.ones((tf.xgrid.count, tf.xigrid.count)))
    else:
        x = tf.xgrid.coords[:, None]
        xi = tf.xigrid.coords[None, :]
        sym = TFR(tf, np.exp(-(x**2 + xi**2) / 2.0))
    out = apply_toeplitz(sym, window, window, f)
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        _write(args, _csv_text(("x", "value-real", "value-imag"),
                               _samples_rows(out)))
        return 0
    scale = float(np.max(np.abs(f.values))) or 1.0
    params = {"input": desc, "window": str(wspec), "symbol": args.symbol,
              "half_width": args.half_width, "points": args.points}
    rep = _report(args, "toeplitz", params, {
        "verdict": None,
        "reproduction_defect": float(
            np.max(np.abs(out.values - f.values)) / scale)
        if args.symbol == "unit" else None,
        "samples": _samples_rows(out),
    }, elapsed)
    _write(args, _jdump(rep) + "\n")
    return 0


# ------------------------------------------------------------ verify suite

def _suite_identities(checks: list):
    g = build_grid(12.0, 10)
    h = g.step
    tf = TFGrid(Grid1D(0.0, 8 * h, 129), Grid1D(0.0, 0.25, 129))
    gauss = catalog_eval(Gaussian(1.0), g)
    herm = catalog_eval(Hermite(2), g)

    v = stft(herm, gauss, tf)
    moyal = abs(v.norm2() ** 2 - (herm.norm2() * gauss.norm2()) ** 2)
    moyal /= (herm.norm2() * gauss.norm2()) ** 2
    checks.append(("moyal_defect", moyal, 1e-6))

    rec = adjoint_stft(v, gauss)
    inv = np.max(np.abs(rec.values / gauss.norm2() ** 2 - herm.values))
    inv /= np.max(np.abs(herm.values))
    checks.append(("stft_inversion_defect", inv, 1e-5))

    tc = twisted_convolution_defect(
        herm, gauss, catalog_eval(Gaussian(2.0), g),
        catalog_eval(Gaussian(0.5), g), tf)
    checks.append(("twisted_convolution_defect", tc, 1e-4))

    xg = Grid1D(0.0, 8 * h, 128)
    xig = Grid1D(0.0, 2 * np.pi / (1024 * h), 128)
    tfp = TFGrid(xg, xig)
    pool = [Gaussian(1.0), Gaussian(2.0), Gaussian(0.5), Hermite(1),
            Hermite(2), Hermite(3), Translate(Gaussian(1.0), 1.0),
            Modulate(Gaussian(1.0), 1.0)]
    rng = np.random.default_rng(20240817)
    signs = set()
    worst = 0.0
    for _ in range(12):
        f4, g4, p1, p2 = (catalog_eval(pool[i], g)
                          for i in rng.integers(0, len(pool), 4))
        d = stft_product_transform_defect(f4, g4, p1, p2, tfp)
        win = "minus" if d["defect_minus"] <= d["defect_plus"] else "plus"
        signs.add(win)
        worst = max(worst, min(d["defect_minus"], d["defect_plus"]))
    checks.append(("product_transform_defect", worst, 1e-4))
    checks.append(("product_transform_sign_consistent",
                   0.0 if len(signs) == 1 else 1.0, 0.5))


def _catalog_specs():
    from .catalog import Bump, Poly, Product, SubExp, Sum
    return [Gaussian(1.0), Gaussian(0.5), Hermite(1), Hermite(2), Hermite(3),
            Bump(), Translate(Gaussian(1.0), 1.5), Modulate(Gaussian(1.0), 3.0),
            Gaussian(0.001), Product(Poly(2), Gaussian(1.0)),
            Sum(Gaussian(1.0), Translate(Gaussian(1.0), 2.0)),
            SubExp(2.0, 1.0)]


def _catalog_spaces():
    return [GSIndex(0.5, math.inf, "roumieu"), GSIndex(1.0, math.inf, "roumieu"),
            GSIndex(1.0, math.inf, "beurling"),
            GSIndex(math.inf, 0.5, "roumieu")]


def _suite_classification(checks: list):
    godd = Grid1D(0.0, 24.0 / 1024, 1025)
    r1 = fit_decay_rate(catalog_eval(Gaussian(1.0), godd), 0.5)
    checks.append(("rate_recovery_gaussian", abs(r1 - 0.5), 1e-9))
    from .catalog import SubExp
    r2 = fit_decay_rate(catalog_eval(SubExp(1.0, 2.0), godd), 1.0)
    checks.append(("rate_recovery_subexp", abs(r2 - 2.0), 1e-9))

    g = build_grid(12.0, 11)
    tf = TFGrid(Grid1D(0.0, 4 * g.step, 513), Grid1D(0.0, 0.5, 1001))
    opts = ClassifyOptions(n_max=4, r_scale=0.5)
    win = catalog_eval(Gaussian(1.0), g)
    mismatch = 0
    for spec in _catalog_specs():
        f = catalog_eval(spec, g)
        v = stft(f, win, tf)
        for idx in _catalog_spaces():
            a = classify_function(f, idx, opts).verdict
            b = classify_stft(f, win, idx, tf, opts, check_window=False,
                              precomputed=v).verdict
            mismatch += a != b
    checks.append(("catalog_agreement_mismatches", float(mismatch), 0.5))


def _suite_toeplitz(checks: list):
    g = build_grid(12.0, 10)
    tf = _default_tfgrid(g)
    gauss = catalog_eval(Gaussian(1.0), g)
    w = gauss * (1.0 / gauss.norm2())
    one = TFR(tf, np.ones((tf.xgrid.count, tf.xigrid.count)))
    worst = 0.0
    for spec in (Gaussian(1.0), Hermite(2)):
        f = catalog_eval(spec, g)
        out = apply_toeplitz(one, w, w, f)
        worst = max(worst, float(np.max(np.abs(out.values - f.values))
                                 / np.max(np.abs(f.values))))
    checks.append(("unit_symbol_reproduction", worst, 1e-5))

    f = catalog_eval(Hermite(1), g)
    g2 = catalog_eval(Gaussian(2.0), g)
    rng = np.random.default_rng(7)
    sym = TFR(tf, rng.standard_normal((129, 129))
              + 1j * rng.standard_normal((129, 129)))
    lhs = g.step * np.sum(apply_toeplitz(sym, w, w, f).values
                          * np.conj(g2.values))
    v1 = stft(f, w, tf)
    v2 = stft(g2, w, tf)
    rhs = tf.xgrid.step * tf.xigrid.step * np.sum(
        sym.values * np.conj(np.conj(v1.values) * v2.values))
    checks.append(("adjoint_symmetry", abs(lhs - rhs) / abs(lhs), 1e-6))

    x = tf.xgrid.coords[:, None]
    xi = tf.xigrid.coords[None, :]
    pos_sym = TFR(tf, np.exp(-(x**2 + xi**2) / 2.0))
    qmin = 0.0
    for spec in (Gaussian(1.0), Hermite(1), Hermite(3),
                 Modulate(Gaussian(0.5), 2.0)):
        ff = catalog_eval(spec, g)
        q = g.step * np.sum(apply_toeplitz(pos_sym, w, w, ff).values
                            * np.conj(ff.values))
        qmin = min(qmin, float(q.real))
    checks.append(("positivity_defect", -qmin, 1e-10))

    idx = GSIndex(1.0, math.inf, "beurling")
    opts = ClassifyOptions(n_max=4, r_scale=0.5)
    testset = [catalog_eval(s, g) for s in
               (Gaussian(1.0), Gaussian(0.5), Hermite(1), Hermite(2),
                Hermite(3))]
    rep = continuity_probe(pos_sym, w, w, testset, idx, opts)
    checks.append(("continuity_probe_nonmember_outputs",
                   0.0 if rep.all_member else 1.0, 0.5))


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    checks = []
    if args.suite in ("identities", "all"):
        _suite_identities(checks)
    if args.suite in ("classification", "all"):
        _suite_classification(checks)
    if args.suite in ("toeplitz", "all"):
        _suite_toeplitz(checks)
    elapsed = time.perf_counter() - t0
    rows = [(name, _jfloat(val).strip('"'), _jfloat(tol).strip('"'),
             "pass" if val <= tol else "fail")
            for name, val, tol in checks]
    ok = all(val <= tol for _, val, tol in checks)
    if args.format == "csv":
        _write(args, _csv_text(("check", "value", "tolerance", "status"), rows))
    else:
        rep = _report(args, "verify", {"suite": args.suite}, {
            "verdict": "pass" if ok else "fail",
            "checks": [{"name": n, "value": v, "tolerance": t,
                        "status": "pass" if v <= t else "fail"}
                       for n, v, t in checks],
        }, elapsed)
        _write(args, _jdump(rep) + "\n")
    return 0 if ok else 1


# -------------------------------------------------------------- dispatch

def _add_common(p: argparse.ArgumentParser, with_input=True):
    if with_input:
        p.add_argument("--expr", help="function expression")
        p.add_argument("--in", dest="infile",
                       help="CSV input: x, value-real[, value-imag]")
    p.add_argument("--half-width", type=float, default=12.0)
    p.add_argument("--points", type=int, default=2048,
                   help="sample count (power of two)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings (breaks byte-identical "
                        "reports)")


def _add_space(p: argparse.ArgumentParser):
    p.add_argument("--space", choices=("S", "Sigma"))
    p.add_argument("--s", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--type", choices=("roumieu", "beurling"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gstf",
        description="Time-frequency transforms, decay-class verdicts, "
                    "Gabor multipliers, and identity verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="discrete continuum-normalized "
                                         "Fourier transform")
    _add_common(p)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("stft", help="short-time Fourier transform")
    _add_common(p)
    p.add_argument("--window", default="gaussian(1)")
    p.set_defaults(func=_cmd_stft)

    p = sub.add_parser("classify", help="decay-class membership verdict")
    _add_common(p)
    _add_space(p)
    p.add_argument("--window", help="classify through the STFT with this "
                                    "window instead of directly")
    p.add_argument("--n-max", type=int)
    p.add_argument("--r-list", help="comma-separated trial rates")
    p.add_argument("--floor", type=float, help="relative noise floor")
    p.add_argument("--assert-member", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("witness", help="sampled nontrivial class member")
    _add_common(p, with_input=False)
    _add_space(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("toeplitz", help="apply a Gabor-multiplier operator")
    _add_common(p)
    p.add_argument("--window", default="gaussian(1)")
    p.add_argument("--symbol", choices=("unit", "gaussian"), default="unit")
    p.set_defaults(func=_cmd_toeplitz)

    p = sub.add_parser("verify", help="run the identity/classification/"
                                      "toeplitz check suites")
    _add_common(p, with_input=False)
    p.add_argument("--suite", choices=("identities", "classification",
                                       "toeplitz", "all"), default="all")
    p.set_defaults(func=_cmd_verify)
    return ap


def run_command(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except GstfError as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
