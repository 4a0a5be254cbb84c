"""Command-line front end: ``gfourier {kernel,verify,eigen,basis}``.

Numbers are written in shortest round-trip form (``repr`` of a float), and
rows follow a fixed order, so identical options give byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

import numpy as np

from .kernels import FAMILIES, KernelParams, ParameterError, evaluate
from .multivector import blade_name

ALIASES = {"deformed": "deformed_semigroup", "fourier_bessel": "cft_class", "frac_cft": "cft_fractional"}
SUITE_NAMES = ("algebra", "specfun", "harmonics", "kernels", "transforms", "all")
BASIS_KINDS = ("harmonic", "monogenic", "dunkl_harmonic", "dunkl_monogenic")


class UsageError(Exception):
    pass


def fmt(v: float) -> str:
    v = float(v)
    if v == 0.0:
        return "0.0"  # drops the sign of -0.0
    return repr(v)


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"cannot serialise {type(o).__name__}")


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default, allow_nan=True) + "\n"


# ------------------------------------------------------------------ parsing


def _add_kernel_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("kernel parameters")
    g.add_argument("--family", required=False, help=f"one of {', '.join(FAMILIES)} (alias: deformed)")
    g.add_argument("--m", type=int, default=2, help="dimension")
    g.add_argument("--sign", choices=("+", "-", "plus", "minus"), default="-")
    g.add_argument("--a", type=float, default=None, help="radial deformation parameter")
    g.add_argument("--c", type=float, default=None, help="Dirac deformation parameter")
    g.add_argument("--kappa", default=None, help="multiplicity, or comma list (one per coordinate)")
    g.add_argument("--alpha", type=float, default=None, help="fractional angle")
    g.add_argument("--beta", type=float, default=None, help="Clifford rotation angle")
    g.add_argument("--omega", type=complex, default=None, help="semigroup parameter, e.g. 1.5707963267948966j")
    g.add_argument("--j", type=int, default=None, help="class index (cft_class only)")
    g.add_argument("--mode", default=None, help="series, closed or fourier")
    g.add_argument("--tol", type=float, default=None, help="series truncation tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfourier", description="Generalised Fourier transform kernels and verification suites.")
    parser.add_argument("--config", help="JSON file whose keys mirror the long flags (dashes as underscores)")
    sub = parser.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernel", help="evaluate a kernel on a grid of point pairs and write CSV")
    _add_kernel_flags(k)
    k.add_argument("--grid", default="10", help="points per side (the CSV has grid^2 rows), or a CSV file of x,y rows")
    k.add_argument("--radius", type=float, default=2.0, help="largest |x| and |y| on the grid")
    k.add_argument("--out", default="-", help="output path, '-' for stdout")

    v = sub.add_parser("verify", help="run a verification suite and write a JSON report")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--quick", action="store_true", help="reduced degrees and panels")
    v.add_argument("--m", type=int, default=None, help="restrict to one dimension where the suite allows")
    v.add_argument("--only", default=None, help="run checks whose name contains this text")
    v.add_argument("--timings", action="store_true", help="include wall-clock seconds (output is then not reproducible)")
    v.add_argument("--out", default="-", help="output path, '-' for stdout")

    e = sub.add_parser("eigen", help="measured against predicted eigenvalues, CSV")
    _add_kernel_flags(e)
    e.add_argument("--max-j", type=int, default=2)
    e.add_argument("--max-k", type=int, default=2)
    e.add_argument("--members", type=int, default=1, help="angular basis members per degree")
    e.add_argument("--level", type=int, default=0, help="quadrature refinement level")
    e.add_argument("--nr", type=int, default=None, help="radial nodes (overrides the default rule)")
    e.add_argument("--nsphere", type=int, default=None, help="sphere resolution (with --nr)")
    e.add_argument("--check-tol", type=float, default=None, help="pass threshold on rel_error (1e-6, or 1e-5 for m >= 4)")
    e.add_argument("--out", default="-", help="output path, '-' for stdout")

    b = sub.add_parser("basis", help="exact polynomial basis as JSON")
    b.add_argument("--m", type=int, required=False, default=2)
    b.add_argument("--k", type=int, required=False, default=0)
    b.add_argument("--kind", choices=BASIS_KINDS, default="monogenic")
    b.add_argument("--kappa", default=None, help="Z2^m multiplicities for the dunkl kinds (rationals, comma list)")
    b.add_argument("--out", default="-", help="output path, '-' for stdout")
    return parser


def parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
        given = _explicit_dests(parser, argv, args.command)
        known = set(vars(args))
        for key, val in cfg.items():
            dest = key.replace("-", "_")
            if dest in ("command", "config"):
                continue
            if dest not in known:
                raise UsageError(f"config key {key!r} is not an option of {args.command}")
            if dest not in given:
                setattr(args, dest, val)
    return args


def _explicit_dests(parser: argparse.ArgumentParser, argv, command: str) -> set[str]:
    """Destinations the user set on the command line (they win over the config file)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[command]
    out = set()
    for action in sub._actions:
        if any(tok == opt or tok.startswith(opt + "=") for opt in action.option_strings for tok in argv):
            out.add(action.dest)
    return out


def _kappa(raw):
    if raw is None:
        return ()
    if isinstance(raw, (int, float)):
        return (float(raw),)
    if isinstance(raw, (list, tuple)):
        return tuple(float(Fraction(str(v))) for v in raw)
    return tuple(float(Fraction(s.strip())) for s in str(raw).split(",") if s.strip())


def kernel_params(args: argparse.Namespace) -> KernelParams:
    """Validate the flag combination for the family and build ``KernelParams``."""
    if not args.family:
        raise UsageError("--family is required")
    family = ALIASES.get(args.family, args.family)
    if family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    if args.j is not None and family != "cft_class":
        raise UsageError("--j is only valid with --family cft_class")
    allowed = {
        "classical": set(),
        "fractional": {"alpha"},
        "dunkl_z2m": {"kappa"},
        "radial": {"a"},
        "radial_rank1": {"a", "kappa"},
        "cft": {"sign"},
        "cft_fractional": {"alpha", "beta"},
        "cft_class": {"j"},
        "deformed_semigroup": {"c", "omega"},
        "gft": set(),
    }[family]
    for name in ("a", "c", "kappa", "alpha", "beta", "omega"):
        if getattr(args, name) is not None and name not in allowed:
            raise UsageError(f"--{name} does not apply to family {family}")
    kw = {"sign": {"plus": "+", "minus": "-"}.get(args.sign, args.sign)}
    for name in ("a", "c", "alpha", "beta", "j", "mode", "tol"):
        val = getattr(args, name)
        if val is not None:
            kw[name] = val
    if args.omega is not None:
        kw["omega"] = complex(args.omega)
    if args.kappa is not None:
        kw["kappa"] = _kappa(args.kappa)
    return KernelParams(family, args.m, **kw)


def _open_out(path: str):
    if path == "-":
        return _Stdout()
    return open(path, "w", encoding="utf-8", newline="")


class _Stdout(io.StringIO):
    def __exit__(self, *exc):
        sys.stdout.write(self.getvalue())
        sys.stdout.flush()
        return super().__exit__(*exc)


# ----------------------------------------------------------------- commands


def grid_points(m: int, n: int, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """``x`` on the ray through ``(1, ..., 1)``, ``y`` on the ray through ``e_1``; ``n`` radii each."""
    t = np.linspace(0.0, radius, n)
    u = np.ones(m) / math.sqrt(m)
    v = np.zeros(m)
    v[0] = 1.0
    xs, ys = t[:, None] * u, t[:, None] * v
    return np.repeat(xs, n, axis=0), np.tile(ys, (n, 1))


def _grid(spec: str, m: int, radius: float) -> tuple[np.ndarray, np.ndarray]:
    if spec.isdigit():
        n = int(spec)
        if n < 1:
            raise UsageError("--grid must be positive")
        return grid_points(m, n, radius)
    rows = []
    with open(spec, encoding="utf-8") as fh:
        for rec in csv.reader(fh):
            if not rec or rec[0].strip().startswith("#"):
                continue
            try:
                rows.append([float(v) for v in rec])
            except ValueError:
                if rows:
                    raise UsageError(f"non-numeric row in {spec}: {rec}") from None
                continue  # header
    pts = np.array(rows, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 * m:
        raise UsageError(f"{spec} must have 2m = {2 * m} columns (x then y)")
    return pts[:, :m], pts[:, m:]


def cmd_kernel(args) -> int:
    params = kernel_params(args)
    x, y = _grid(str(args.grid), params.m, args.radius)
    vals = evaluate(params, x, y)
    m = params.m
    header = [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)]
    for b in range(vals.shape[1]):
        header += [f"re_{blade_name(b)}", f"im_{blade_name(b)}"]
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for xi, yi, row in zip(x, y, vals):
            cells = [fmt(v) for v in xi] + [fmt(v) for v in yi]
            for z in row:
                cells += [fmt(z.real), fmt(z.imag)]
            w.writerow(cells)
    return 0


def _run_one(payload):
    from .suites import report_summary, suite_checks
    import time

    suite, quick, m, i = payload
    name, thunk = suite_checks(suite, quick, m)[i]
    start = time.perf_counter()
    try:
        return report_summary(name, thunk(), time.perf_counter() - start)
    except Exception as exc:
        return {
            "name": name,
            "status": "error",
            "max_error": None,
            "tolerance": None,
            "checked": 0,
            "seconds": round(time.perf_counter() - start, 3),
            "first_failure": f"{type(exc).__name__}: {exc}",
        }


def thread_cap() -> int:
    raw = os.environ.get("GFOURIER_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"GFOURIER_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def cmd_verify(args) -> int:
    from .suites import suite_checks

    checks = suite_checks(args.suite, args.quick, args.m)
    picked = [i for i, (name, _) in enumerate(checks) if args.only is None or args.only in name]
    payloads = [(args.suite, args.quick, args.m, i) for i in picked]
    workers = min(thread_cap(), max(1, len(payloads)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, payloads))
    else:
        records = []
        for p in payloads:
            rec = _run_one(p)
            print(f"{rec['status'].upper():5s} {rec['name']} ({rec['seconds']:.1f}s)", file=sys.stderr, flush=True)
            records.append(rec)
    if not args.timings:
        for r in records:
            r.pop("seconds", None)
    ok = all(r["status"] == "pass" for r in records)
    report = {
        "suite": args.suite,
        "quick": bool(args.quick),
        "m": args.m,
        "status": "pass" if ok else "fail",
        "checks": records,
    }
    with _open_out(args.out) as fh:
        fh.write(dump_json(report))
    return 0 if ok else 1


def cmd_eigen(args) -> int:
    from .quadrature import rm_rule
    from .transforms import default_indices, default_rule, eigen_check

    params = kernel_params(args)
    indices = default_indices(params, args.max_j, args.max_k, args.members)
    rule = None
    if args.nr is not None or args.nsphere is not None:
        base = default_rule(params, None, args.level)
        if base.declared_weight != "dx":
            raise UsageError("--nr/--nsphere are not available for this family's tensor rule")
        n_r = args.nr or 48
        n_s = args.nsphere or 40
        if params.family == "radial":
            rule = rm_rule(params.m, params.m + params.a - 3, n_r, n_s, params.a, 1.0 / params.a)
        else:
            rule = rm_rule(params.m, params.m - 1, n_r, n_s, 2.0, 0.5)
    reports = eigen_check(params, indices, rule=rule, level=args.level)
    tol = args.check_tol if args.check_tol is not None else (1e-5 if params.m >= 4 else 1e-6)
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["j", "k", "member", "predicted_re", "predicted_im", "measured_re", "measured_im", "rel_error"])
        for r in reports:
            w.writerow(
                [r.index.j, r.index.k, r.index.member]
                + [fmt(r.predicted.real), fmt(r.predicted.imag), fmt(r.measured.real), fmt(r.measured.imag), fmt(r.rel_error)]
            )
    bad = [r for r in reports if not r.rel_error < tol]
    for r in bad:
        print(f"rel_error {r.rel_error:.3g} exceeds {tol:g} at {r.index.label()}", file=sys.stderr)
    return 0 if not bad else 1


def cmd_basis(args) -> int:
    from .exactpoly import RootSystem
    from .harmonics import build_basis

    if args.m < 1 or args.k < 0:
        raise UsageError("need m >= 1 and k >= 0")
    roots = None
    if args.kind.startswith("dunkl"):
        ks = [Fraction(str(s).strip()) for s in str(args.kappa).split(",")] if args.kappa is not None else [Fraction(0)]
        roots = RootSystem.z2m(args.m, ks if len(ks) > 1 else ks[0])
    elif args.kappa is not None:
        raise UsageError("--kappa applies to the dunkl kinds only")
    basis = build_basis(args.m, args.k, args.kind, roots)
    rec = basis.to_records()
    if roots is not None:
        rec["kappa"] = [str(k) for k in roots.kappa]
    with _open_out(args.out) as fh:
        fh.write(dump_json(rec))
    return 0


COMMANDS = {"kernel": cmd_kernel, "verify": cmd_verify, "eigen": cmd_eigen, "basis": cmd_basis}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ParameterError, ValueError, NotImplementedError) as exc:
        print(f"gfourier: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
