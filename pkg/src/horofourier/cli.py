"""Command-line interface: ``horofourier <eval|transform|verify> [flags]``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or
configuration error, 3 an input violates a data invariant.
"""
from __future__ import annotations

import argparse
import io
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .errors import HoroFourierError, InvariantError
from .kernels import eisenstein, plancherel_density, q_poly
from .quadrature import composite_gauss_legendre
from .report import VerificationReport, fmt
from .suite import SUITES, SuiteConfig, mixed_test_function, pw_table, run_check
from .transforms import (
    LAMBDA_MAX,
    T_MAX,
    RadialProfile,
    SpectralProfile,
    delta_spherical_forward,
    hft_forward,
    inverse_profile,
    standard_profile,
    weighted_l2,
)

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    """Bad flags or configuration (exit code 2)."""


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class GridConfig:
    t_max: float = T_MAX
    t_panels: int = 6
    t_order: int = 48
    lambda_max: float = LAMBDA_MAX
    lambda_panels: int = 9
    lambda_order: int = 64

    def __post_init__(self):
        if not (self.t_max > 0 and self.lambda_max > 0):
            raise UsageError("grid ranges must be non-empty")
        if min(self.t_panels, self.t_order, self.lambda_panels, self.lambda_order) < 1:
            raise UsageError("grid panels and orders must be >= 1")

    def t_rule(self):
        return composite_gauss_legendre(self.t_order, 0.0, self.t_max, self.t_panels)

    def lambda_rule(self):
        return composite_gauss_legendre(self.lambda_order, -self.lambda_max, self.lambda_max, self.lambda_panels)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on; loaded from TOML and overridden by flags."""

    suite: SuiteConfig = field(default_factory=SuiteConfig)
    grids: GridConfig = field(default_factory=GridConfig)
    out: str | None = None
    jobs: int = 1
    strict_parity: bool = False


_TUPLE_KEYS = {"family_n", "family_a", "p_values", "pw_radii", "decay_orders"}


def _coerce(cls, table: dict, where: str):
    known = {f.name: f for f in fields(cls)}
    kwargs = {}
    for key, value in table.items():
        if key not in known:
            raise UsageError(f"unknown config key {where}{key!r}")
        if isinstance(value, dict):
            raise UsageError(f"config key {where}{key!r} must be a value, not a table")
        if key in _TUPLE_KEYS:
            if not isinstance(value, list) or not value:
                raise UsageError(f"config key {key!r} must be a non-empty array")
            value = tuple(value)
        kwargs[key] = value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid config {where or 'values'}: {exc}") from None


def load_config(path: str | None) -> RunConfig:
    """Read a TOML file with optional ``[suite]`` and ``[grids]`` tables.

    Top-level keys are run options (``out``, ``jobs``, ``strict_parity``)
    or suite keys, so a flat file also works.
    """
    if path is None:
        return RunConfig()
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"cannot parse config {path}: {exc}") from None
    suite = dict(data.pop("suite", {}))
    grids = dict(data.pop("grids", {}))
    run = {}
    for key in ("out", "jobs", "strict_parity"):
        if key in data:
            run[key] = data.pop(key)
    suite.update(data)
    cfg = RunConfig(_coerce(SuiteConfig, suite, "suite."), _coerce(GridConfig, grids, "grids."), **run)
    if not isinstance(cfg.jobs, int) or cfg.jobs < 1:
        raise UsageError("jobs must be a positive integer")
    return cfg


# ---------------------------------------------------------------------------
# bundled profiles and CSV I/O


def bundled_profiles():
    """Names of the analytically generated test profiles ``sech{2a}_n{n}``."""
    return [f"sech{2 * a}_n{n}" for a in (2, 3) for n in range(4)] + ["mixed"]


def load_bundled(name: str, rule) -> RadialProfile:
    if name not in bundled_profiles() or name == "mixed":
        raise UsageError(f"unknown profile {name!r}; choose from {', '.join(bundled_profiles()[:-1])}")
    two_a, n = name[4:].split("_n")
    return standard_profile(int(n), int(two_a) / 2.0, rule)


def _write_csv(header, rows, meta=None) -> str:
    buf = io.StringIO()
    for key, value in (meta or {}).items():
        buf.write(f"# {key} = {value}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _read_csv(path: str, header):
    """Return ``(meta, columns)`` of a file written by :func:`_write_csv`."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    meta = {}
    body = []
    for line in lines:
        if line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            if not sep:
                raise InvariantError(f"{path}: malformed metadata line {line!r}", invariant="file format")
            meta[key.strip()] = value.strip()
        elif line.strip():
            body.append(line)
    if not body or body[0].split(",") != list(header):
        raise InvariantError(f"{path}: expected header {','.join(header)}", invariant="file format")
    try:
        data = np.array([[float(x) for x in line.split(",")] for line in body[1:]], dtype=float)
    except ValueError:
        raise InvariantError(f"{path}: non-numeric entry", invariant="file format") from None
    if data.ndim != 2 or data.shape[0] == 0 or data.shape[1] != len(header):
        raise InvariantError(f"{path}: expected {len(header)} columns and at least one row",
                             invariant="file format")
    return meta, data


RADIAL_HEADER = ("t", "value_re", "value_im")
SPECTRAL_HEADER = ("lambda_re", "lambda_im", "h_re", "h_im")
EVAL_HEADER = ("lambda_re", "lambda_im", "t", "n", "value_re", "value_im")


def _meta_number(meta, key, path, cast=float):
    if key not in meta:
        raise InvariantError(f"{path}: missing metadata {key!r}", invariant="file format")
    try:
        return cast(meta[key])
    except ValueError:
        raise InvariantError(f"{path}: metadata {key!r} is not a number", invariant="file format") from None


def _match_nodes(x, nodes, path, what):
    if x.size != nodes.size or not np.allclose(x, nodes, rtol=0, atol=1e-12):
        raise InvariantError(f"{path}: {what} samples do not lie on the configured quadrature grid; "
                             "use the grid flags to match the file", invariant="grid nodes")


def read_radial(path: str, rule) -> RadialProfile:
    meta, data = _read_csv(path, RADIAL_HEADER)
    n = _meta_number(meta, "n", path, int)
    kappa = _meta_number(meta, "kappa", path)
    _match_nodes(data[:, 0], rule.nodes, path, "t")
    return RadialProfile(n, rule, data[:, 1] + 1j * data[:, 2], kappa, label=os.path.basename(path))


def read_spectral(path: str, rule) -> tuple[SpectralProfile, float]:
    meta, data = _read_csv(path, SPECTRAL_HEADER)
    n = _meta_number(meta, "n", path, int)
    kappa = _meta_number(meta, "kappa", path) if "kappa" in meta else 2.0
    if np.any(data[:, 1] != 0):
        raise InvariantError(f"{path}: spectral samples must be on the real axis", invariant="real grid")
    _match_nodes(data[:, 0], rule.nodes, path, "lambda")
    return SpectralProfile(n, rule, data[:, 2] + 1j * data[:, 3]), kappa


def radial_csv(f: RadialProfile) -> str:
    v = np.asarray(f.values, dtype=complex)
    return _write_csv(RADIAL_HEADER, zip(f.t, v.real, v.imag), {"n": f.n, "kappa": fmt(f.kappa)})


def spectral_csv(n: int, lam, h, kappa: float | None = None) -> str:
    lam = np.asarray(lam, dtype=complex)
    h = np.asarray(h, dtype=complex)
    meta = {"n": n} if kappa is None else {"n": n, "kappa": fmt(kappa)}
    return _write_csv(SPECTRAL_HEADER, zip(lam.real, lam.imag, h.real, h.imag), meta)


# ---------------------------------------------------------------------------
# commands


def parse_values(spec: str, kind=complex):
    """``"a"``, ``"a,b,c"`` or ``"start:stop:count"`` (inclusive linspace)."""
    try:
        if ":" in spec:
            a, b, k = spec.split(":")
            k = int(k)
            if k < 1:
                raise ValueError
            return np.linspace(kind(a), kind(b), k)
        return np.array([kind(x) for x in spec.split(",")])
    except ValueError:
        raise UsageError(f"cannot parse value list {spec!r}") from None


def _check_parity(n, cfg: RunConfig):
    if cfg.strict_parity and n % 2:
        raise UsageError(f"n = {n} is odd but --strict-parity admits only even K-types")


def cmd_eval(args, cfg: RunConfig) -> tuple[str, str]:
    lam = parse_values(args.lam)
    n = args.n
    _check_parity(n, cfg)
    rows = []
    if args.kind in ("phi", "eisenstein"):
        ts = parse_values(args.t, float)
        if np.any(ts < 0):
            raise UsageError("t must be >= 0")
        k = 0 if args.kind == "phi" else n
        for lv in lam:
            vals = np.atleast_1d(eisenstein(lv, k, ts))
            rows += [(lv.real, lv.imag, t, float(k), v.real, v.imag) for t, v in zip(ts, vals)]
    elif args.kind == "density":
        if np.any(lam.imag != 0):
            raise UsageError("density takes real lambda")
        vals = np.atleast_1d(plancherel_density(lam.real))
        rows = [(lv.real, 0.0, math.nan, math.nan, float(v), 0.0) for lv, v in zip(lam, vals)]
    else:
        vals = np.atleast_1d(q_poly(n, lam))
        rows = [(lv.real, lv.imag, math.nan, float(n), v.real, v.imag) for lv, v in zip(lam, vals)]
    return f"eval_{args.kind}.csv", _write_csv(EVAL_HEADER, rows)


def _input_profile(args, cfg: RunConfig) -> RadialProfile:
    rule = cfg.grids.t_rule()
    if args.profile:
        f = load_bundled(args.profile, rule)
    elif args.input:
        f = read_radial(args.input, rule)
    else:
        raise UsageError("give --profile NAME or --input FILE")
    _check_parity(f.n, cfg)
    return f


def cmd_transform(args, cfg: RunConfig) -> list[tuple[str, str]]:
    lam_rule = cfg.grids.lambda_rule()
    if args.direction == "forward":
        f = _input_profile(args, cfg)
        h = delta_spherical_forward(f, lam_rule, args.p)
        stem = args.profile or os.path.splitext(os.path.basename(args.input))[0]
        return [(f"forward_{stem}.csv", spectral_csv(f.n, lam_rule.nodes, h, f.kappa))]
    if args.direction == "inverse":
        t_rule = cfg.grids.t_rule()
        if args.profile:
            f = _input_profile(args, cfg)
            h = SpectralProfile(f.n, lam_rule, delta_spherical_forward(f, lam_rule, args.p))
            g = inverse_profile(h, t_rule, f.kappa)
            err = weighted_l2(g.values - f.values, t_rule, 4.0) / weighted_l2(f.values, t_rule, 4.0)
            print(f"round-trip relative L2 error on t <= 4: {fmt(err)}")
            stem = args.profile
        elif args.input:
            h, kappa = read_spectral(args.input, lam_rule)
            _check_parity(h.n, cfg)
            g = inverse_profile(h, t_rule, kappa)
            stem = os.path.splitext(os.path.basename(args.input))[0]
        else:
            raise UsageError("give --profile NAME or --input FILE")
        return [(f"inverse_{stem}.csv", radial_csv(g))]
    # hft
    theta = 2 * np.pi * np.arange(args.n_theta) / args.n_theta
    if args.profile == "mixed":
        F = hft_forward(mixed_test_function, lam_rule, theta, cfg.grids.t_rule(), 4.0)
        stem = "mixed"
    else:
        f = _input_profile(args, cfg)
        F = hft_forward(lambda t, psi, f=f: f(t) * np.exp(1j * f.n * np.asarray(psi)),
                        lam_rule, theta, f.rule, f.kappa) if f.evaluator is not None else None
        if F is None:
            raise UsageError("hft needs a bundled profile (an evaluator between nodes)")
        stem = args.profile
    rows = [(lv, 0.0, th, F[i, j].real, F[i, j].imag)
            for i, lv in enumerate(lam_rule.nodes) for j, th in enumerate(theta)]
    return [(f"hft_{stem}.csv", _write_csv(("lambda_re", "lambda_im", "theta", "F_re", "F_im"), rows))]


def _run_one(item):
    cid, suite_cfg = item
    t0 = time.perf_counter()
    rep = run_check(cid, suite_cfg)
    return cid, rep, time.perf_counter() - t0


def cmd_verify(args, cfg: RunConfig) -> tuple[VerificationReport, list[tuple[str, str]]]:
    suite_cfg = cfg.suite
    if cfg.strict_parity:
        even = tuple(n for n in suite_cfg.family_n if n % 2 == 0)
        suite_cfg = replace(suite_cfg, family_n=even)
    ids = SUITES[args.suite]
    items = [(cid, suite_cfg) for cid in ids]
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_one, items))
    else:
        results = [_run_one(item) for item in items]
    report = VerificationReport(f"verify {args.suite}")
    for cid, rep, seconds in results:
        report.merge(rep)
        print(f"{cid}: {'PASS' if rep.passed else 'FAIL'} ({len(rep)} checks, {seconds:.1f} s)", file=sys.stderr)
    files = [(f"report_{args.suite}.txt", report.to_text()), (f"summary_{args.suite}.csv", report.to_csv())]
    if args.suite == "pw":
        rows = pw_table(suite_cfg)
        files.append(("pw_table.csv", _write_csv(("R", "R_hat", "outcome"), rows)))
    return report, files


# ---------------------------------------------------------------------------
# entry point


def _global_flags(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", metavar="PATH", default=d, help="TOML run configuration")
    parser.add_argument("--out", metavar="DIR", default=d, help="output directory (default: stdout for eval/transform)")
    parser.add_argument("--jobs", metavar="N", type=int, default=d, help="parallel worker processes for verify")
    parser.add_argument("--strict-parity", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="admit only even K-types n")


def build_parser():
    parser = argparse.ArgumentParser(prog="horofourier", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    ev = sub.add_parser("eval", parents=[common], help="tabulate kernels and spectral functions")
    ev.add_argument("kind", choices=["phi", "eisenstein", "density", "qpoly"])
    ev.add_argument("--lambda", dest="lam", default="0",
                    help="values: a | a,b,c | start:stop:count, complex ok; "
                         "write --lambda=-2:2:5 for a negative start")
    ev.add_argument("--t", default="0", help="radii, same syntax")
    ev.add_argument("--n", type=int, default=0, help="K-type index")

    tr = sub.add_parser("transform", parents=[common], help="forward, inverse and Helgason transforms")
    tr.add_argument("direction", choices=["forward", "inverse", "hft"])
    src = tr.add_mutually_exclusive_group()
    src.add_argument("--profile", help="bundled profile: " + ", ".join(bundled_profiles()))
    src.add_argument("--input", metavar="FILE", help="radial CSV (forward) or spectral CSV (inverse)")
    tr.add_argument("--p", type=float, default=None, help="restrict to the S^p strip")
    tr.add_argument("--n-theta", type=int, default=8, help="boundary angles for hft")
    for name, typ in (("t-max", float), ("t-panels", int), ("t-order", int),
                      ("lambda-max", float), ("lambda-panels", int), ("lambda-order", int)):
        tr.add_argument(f"--{name}", type=typ, default=None)

    ve = sub.add_parser("verify", parents=[common], help="run an acceptance suite")
    ve.add_argument("suite", choices=list(SUITES))
    ve.add_argument("--tolerance-scale", type=float, default=None, help="multiply every tolerance")
    return parser


def _emit(files, out):
    if out is None:
        for _, text in files:
            sys.stdout.write(text)
        return
    os.makedirs(out, exist_ok=True)
    for name, text in files:
        path = os.path.join(out, name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {path}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = load_config(args.config)
        over = {k: getattr(args, k) for k in ("out", "jobs") if getattr(args, k, None) is not None}
        if getattr(args, "strict_parity", False):
            over["strict_parity"] = True
        cfg = replace(cfg, **over)
        if cfg.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if args.command == "transform":
            g = {k: getattr(args, k) for k in ("t_max", "t_panels", "t_order", "lambda_max", "lambda_panels",
                                               "lambda_order") if getattr(args, k) is not None}
            cfg = replace(cfg, grids=replace(cfg.grids, **g))
            if args.n_theta < 1:
                raise UsageError("--n-theta must be >= 1")
        if args.command == "eval":
            _emit([cmd_eval(args, cfg)], cfg.out)
            return EXIT_OK
        if args.command == "transform":
            _emit(cmd_transform(args, cfg), cfg.out)
            return EXIT_OK
        if args.tolerance_scale is not None:
            if not args.tolerance_scale > 0:
                raise UsageError("--tolerance-scale must be positive")
            cfg = replace(cfg, suite=replace(cfg.suite, tolerance_scale=args.tolerance_scale))
        report, files = cmd_verify(args, cfg)
        _emit(files, cfg.out or ".")
        sys.stdout.write(report.to_text())
        return EXIT_OK if report.passed else EXIT_FAIL
    except UsageError as exc:
        print(f"horofourier: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HoroFourierError as exc:
        name = getattr(exc, "invariant", "") or type(exc).__name__
        print(f"horofourier: invariant violated ({name}): {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
