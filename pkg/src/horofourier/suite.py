"""The acceptance suite: numbered checks grouped into named suites.

Every check takes a :class:`SuiteConfig` and returns a
:class:`~horofourier.report.VerificationReport`.  Tolerances are the stated
acceptance tolerances multiplied by ``SuiteConfig.tolerance_scale``; round-off
allowances on exact inequalities are not scaled.
"""
from __future__ import annotations

import contextlib
import io
import math
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .disk import BoundaryPoint, DiskPoint, busemann, integrate_X, log_poisson_polar
from .kernels import (
    eisenstein,
    eisenstein_closed_form,
    eisenstein_tensor,
    phi_closed_form,
    phi_lambda,
    phi_zero,
    plancherel_density,
    q_delta,
    q_zeros,
)
from .quadrature import circle_average, composite_gauss_legendre
from .report import CheckResult, VerificationReport
from .schwartz import (
    SchwartzConfig,
    analyticity_check,
    bump_log_transform,
    bump_profile,
    central_derivatives,
    inverse_gaussian_profile,
    lemma42_bound_check,
    nu_seminorm,
    pw_type_estimate,
    radial_operator,
    spectral_decay_check,
    strip_table,
    tau_seminorm,
)
from .transforms import (
    ForwardEvaluator,
    PolarSamples,
    default_lambda_rule,
    default_t_rule,
    delta_project_spatial,
    delta_project_spectral,
    delta_spherical_forward,
    hft_forward,
    hft_forward_2d,
    plancherel_check,
    round_trip_error,
    standard_profile,
)

ROUNDOFF = 1e-13


@dataclass(frozen=True)
class SuiteConfig:
    """Parameters of a suite run; every field can be set from the config file."""

    tolerance_scale: float = 1.0
    family_n: tuple = (0, 1, 2, 3)
    family_a: tuple = (2.0, 3.0)
    p_values: tuple = (2.0, 1.0)
    pw_radii: tuple = (0.5, 1.0, 2.0)
    pw_sigma_max: float = 1000.0
    decay_orders: tuple = (0, 2, 4, 6)
    bound_base_a: float = 4.0
    bound_slow_a: float = 1.75
    chart_samples: int = 20
    seed: int = 20240601

    def __post_init__(self):
        if not self.tolerance_scale > 0:
            raise ValueError("tolerance_scale must be positive")
        for p in self.p_values:
            if not 0 < p <= 2:
                raise ValueError(f"p must lie in (0, 2], got {p}")

    def tol(self, base: float) -> float:
        return base * self.tolerance_scale

    def family(self):
        return [standard_profile(n, a) for n in self.family_n for a in self.family_a]


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    scale = float(np.max(np.abs(b)))
    return float(np.max(np.abs(a - b))) / scale if scale else float(np.max(np.abs(a)))


# ---------------------------------------------------------------------------
# test functions on the disk


def mixed_test_function(t, psi):
    """Mixed-type function ``sech^4 t (1 + tanh t e^{i psi}/2 + tanh^2 t cos(2 psi)/4)``."""
    t = np.asarray(t, dtype=float)
    th = np.tanh(t)
    return np.cosh(t) ** -4.0 * (1.0 + 0.5 * th * np.exp(1j * np.asarray(psi))
                                 + 0.25 * th * th * np.cos(2.0 * np.asarray(psi)))


MIXED_KAPPA = 4.0
MIXED_THETA = 8


@lru_cache(maxsize=1)
def _mixed_hft():
    return hft_forward_2d(mixed_test_function, default_lambda_rule(), MIXED_THETA)


def random_test_functions(count: int, seed: int):
    """Smooth rapidly decaying functions: ``sech^a(d(z, z0)) tanh^m(t) e^{i m psi}`` mixtures."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        z0 = 0.6 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        a = rng.uniform(6.0, 10.0)
        m = int(rng.integers(0, 4))
        c = complex(rng.normal(), rng.normal())

        def f(t, psi, z0=z0, a=a, m=m, c=c):
            t = np.asarray(t, dtype=float)
            z = np.tanh(t) * np.exp(1j * np.asarray(psi))
            d = np.arctanh(np.minimum(np.abs((z - z0) / (1.0 - np.conj(z0) * z)), 1.0 - 1e-16))
            return np.cosh(d) ** -a * (1.0 + c * np.tanh(t) ** m * np.exp(1j * m * np.asarray(psi)))

        out.append(f)
    return out


# ---------------------------------------------------------------------------
# AC1: kernel correctness


def check_kernels(cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("AC1 kernel correctness")
    tol = cfg.tol(1e-9)
    lams = [0.0, 1.0, 2.0, 0.5j]
    ts = np.linspace(0.1, 1.5, 8)
    worst = 0.0
    for n in range(4):
        for lam in lams:
            quad = eisenstein(lam, n, ts)
            closed = np.array([eisenstein_closed_form(lam, n, t) for t in ts])
            worst = max(worst, float(np.max(np.abs(quad - closed) / np.abs(closed))))
    rep.add(CheckResult("AC1.closed_form_eisenstein", worst < tol, worst, tol, note="n<=3, t<=1.5"))
    phi_quad = np.array([phi_lambda(lam, ts) for lam in lams])
    phi_cf = np.array([[phi_closed_form(lam, t) for t in ts] for lam in lams])
    err = float(np.max(np.abs(phi_quad - phi_cf) / np.abs(phi_cf)))
    rep.add(CheckResult("AC1.closed_form_phi", err < tol, err, tol))

    tol_eig = cfg.tol(1e-6)
    h = 1e-3
    ts = np.linspace(0.2, 4.0, 20)
    worst = 0.0
    for n in range(4):
        for lam in [0.0, 1.0, 2.0, 2.0 + 0.5j]:
            g0, d1, d2 = central_derivatives(lambda x: eisenstein(lam, n, x), ts, h)
            lap = radial_operator(g0, d1, d2, ts, n)
            worst = max(worst, float(np.max(np.abs(lap + (lam * lam + 1.0) * g0))))
    rep.add(CheckResult("AC1.eigen_residual", worst < tol_eig, worst, tol_eig,
                        note="5-point central differences, step 1e-3, t in [0.2, 4]"))
    return rep


# ---------------------------------------------------------------------------
# AC2: estimates


def _fit_q(ts):
    return float(np.max(phi_zero(ts) * np.exp(ts) / (1.0 + ts)))


def check_estimates(cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("AC2 estimates")
    eps = cfg.tol(ROUNDOFF)
    grid = SchwartzConfig(2.0).radial_grid
    ts = np.concatenate([[0.0], grid])
    p0 = phi_zero(ts)
    rep.add(CheckResult("AC2.phi0_positive", bool(np.min(p0) > 0), float(np.min(p0)), 0.0, note="min phi_0 > 0"))
    excess = float(np.max(p0) - 1.0)
    rep.add(CheckResult("AC2.phi0_le_1", excess <= eps, excess, eps, note="max phi_0 - 1"))
    lower = float(np.max(1.0 - p0 * np.exp(ts)))
    rep.add(CheckResult("AC2.phi0_lower", lower <= eps, lower, eps, note="max 1 - phi_0 e^t"))
    q1 = _fit_q(ts)
    q2 = _fit_q(np.concatenate([[0.0], SchwartzConfig(2.0).refined().radial_grid]))
    change = abs(q2 - q1) / q1
    tol_q = cfg.tol(0.05)
    rep.add(CheckResult("AC2.phi0_upper_q_stable", change < tol_q, change, tol_q, note=f"q={q2:.10g}"))

    t8 = ts[ts <= 8.0]
    worst, low = -math.inf, math.inf
    for lam in (0.25, 0.5, 1.0):
        v = phi_lambda(-1j * lam, t8)
        low = min(low, float(np.min(v.real)))
        worst = max(worst, float(np.max(v.real / (np.exp(lam * t8) * phi_zero(t8)) - 1.0)))
    rep.add(CheckResult("AC2.phi_imag_positive", low > 0, low, 0.0))
    rep.add(CheckResult("AC2.phi_imag_upper", worst <= eps, worst, eps,
                        note="max phi_{-i lam}/(e^{lam t} phi_0) - 1"))

    tb = np.linspace(0.0, 6.0, 25)[:, None, None]
    psi = 2 * np.pi * np.arange(16)[None, :, None] / 16
    theta = 2 * np.pi * np.arange(16)[None, None, :] / 16  # includes psi = theta and psi = theta + pi
    B = 0.5 * log_poisson_polar(tb, psi, theta)
    excess = float(np.max(np.abs(B) - tb))
    rep.add(CheckResult("AC2.busemann_bound", excess <= eps, excess, eps, note="max |B| - t, c = 1"))
    eq = abs(busemann(DiskPoint(2.0, 1.0), BoundaryPoint(1.0)) - 2.0)
    rep.add(CheckResult("AC2.busemann_equality", eq <= eps, eq, eps, note="z on the radius toward b"))

    lam = np.linspace(-100.0, 100.0, 20001)
    ratio = float(np.max(plancherel_density(lam) / (1.0 + np.abs(lam))))
    rep.add(CheckResult("AC2.c_function_bound", ratio <= 1.0, ratio, 1.0, note="max nu_P / (1+|lam|)"))

    re = np.linspace(-24.0, 24.0, 49)
    im = np.linspace(-1.0, 1.0, 5)
    t6 = np.linspace(0.0, 6.0, 31)
    E = eisenstein_tensor(1j * im, re, tuple(range(5)), t6)  # (t, im, re, n)
    env = phi_zero(t6)[:, None, None] * np.exp(np.abs(im)[None, :, None] * (1.0 + t6)[:, None, None])
    for n in range(5):
        M = np.max(np.abs(E[..., n]) / env, axis=0)  # (im, re)
        x = np.log1p(np.abs(re))
        y = np.log(np.max(M, axis=0))
        far = np.abs(re) >= 4.0
        b = max(0.0, float(np.polyfit(x[far], y[far], 1)[0]))
        c = float(np.max(M / (1.0 + np.abs(re))[None, :] ** b))
        ok = math.isfinite(b) and math.isfinite(c)
        rep.add(CheckResult(f"AC2.eisenstein_bound_n{n}", ok, c, math.inf, note=f"b_fit={b:.4f}"))
    return rep


# ---------------------------------------------------------------------------
# AC3 - AC6: transforms


def check_round_trip(cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("AC3 round trip")
    tol = cfg.tol(1e-6)
    for f in cfg.family():
        for p in cfg.p_values:
            if not f.kappa > 2.0 / p:
                continue
            err = round_trip_error(f, p=p)
            rep.add(CheckResult(f"AC3.{f.label}.p{p:g}", err < tol, err, tol))
    return rep


def check_plancherel(cfg: SuiteConfig) -> VerificationReport:
    from .transforms import hft_plancherel_check

    rep = VerificationReport("AC4 Plancherel")
    tol = cfg.tol(1e-6)
    for f in cfg.family():
        _, _, d = plancherel_check(f)
        rep.add(CheckResult(f"AC4.{f.label}", d < tol, d, tol))
    tol2 = cfg.tol(1e-5)
    _, _, d = hft_plancherel_check(mixed_test_function, F=_mixed_hft())
    rep.add(CheckResult("AC4.hft_mixed", d < tol2, d, tol2))
    return rep


def check_projections(cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("AC5 projections")
    tol = cfg.tol(1e-9)
    F = _mixed_hft()
    samples = PolarSamples.from_function(mixed_test_function, default_t_rule(), n_psi=16)
    worst = 0.0
    for n in (-2, -1, 0, 1, 2):
        spatial = delta_project_spatial(samples, n, MIXED_KAPPA)
        a = delta_spherical_forward(spatial, F.rule)
        b = delta_project_spectral(F, n).values
        worst = max(worst, abs(float(np.max(np.abs(a - b)))) / float(np.max(np.abs(F.values))))
    rep.add(CheckResult("AC5.commuting_square", worst < tol, worst, tol, note="n in -2..2"))

    g = standard_profile(1, 2.0)
    lam = np.linspace(-10.0, 10.0, 21)
    f1 = lambda t, psi: g(t) * np.exp(1j * np.asarray(psi))  # noqa: E731
    F0 = hft_forward(f1, lam, np.array([0.0]), kappa=g.kappa)[:, 0]
    d = _rel(F0, delta_spherical_forward(g, lam))
    rep.add(CheckResult("AC5.boundary_identity", d < tol, d, tol, note="F f(lam, e) = f~(lam), n = 1"))
    return rep


def check_evenness(cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("AC6 evenness")
    tol = cfg.tol(1e-9)
    re = np.linspace(0.25, 6.0, 24)
    for f in cfg.family():
        eps = min(1.0, f.strip_bound())
        lam = (re[None, :] + 1j * np.array([-eps, -0.5 * eps, 0.0, 0.5 * eps, eps])[:, None]).ravel()
        zeros = np.concatenate([q_zeros(f.n), -q_zeros(f.n)])
        if zeros.size:
            lam = lam[np.min(np.abs(lam[:, None] - zeros[None, :]), axis=1) > 0.25]
        h = delta_spherical_forward(f, np.concatenate([lam, -lam]))
        k = lam.size
        d = float(np.max(np.abs(h[:k] / q_delta(f.n, lam) - h[k:] / q_delta(f.n, -lam))))
        rep.add(CheckResult(f"AC6.{f.label}", d < tol, d, tol, note=f"{k} points, |Im| <= {eps:g}"))
    return rep


# ---------------------------------------------------------------------------
# AC7 - AC8: Schwartz side


def check_analyticity(cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("AC7 strip analyticity")
    tol = cfg.tol(1e-7)
    scfg = SchwartzConfig(1.0)
    for f in cfg.family():
        sub = analyticity_check(ForwardEvaluator(f), scfg, rel_tol=tol)
        worst = max(c.measured for c in sub.checks)
        npass = sum(c.passed for c in sub.checks)
        rep.add(CheckResult(f"AC7.{f.label}", sub.passed, worst, tol, note=f"{npass}/{len(sub)} points"))
    return rep


def _nu_suite(rep, f, p, tag, cfg):
    worst, bad = 0.0, []
    for k in range(3):
        for q in range(5):
            r = nu_seminorm(f, k, q, p)
            if not math.isfinite(r.value) or r.divergent:
                bad.append(f"k{k}q{q}")
            else:
                worst = max(worst, r.value)
    rep.add(CheckResult(f"AC8.nu.{tag}.p{p:g}", not bad, worst, math.inf,
                        note="all finite" if not bad else "divergent: " + " ".join(bad)))


def check_seminorms(cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("AC8 Schwartz seminorms")
    for f in cfg.family():
        for p in cfg.p_values:
            if not f.kappa > 2.0 / p:
                continue
            scfg = SchwartzConfig(p)
            tab = strip_table(ForwardEvaluator(f), scfg)
            vals = [tau_seminorm(None, r, o, scfg, tab).value for r in range(4) for o in range(3)]
            ok = all(math.isfinite(v) for v in vals)
            rep.add(CheckResult(f"AC8.tau.{f.label}.p{p:g}", ok, max(vals), math.inf, note="r<=3, order<=2"))
            _nu_suite(rep, f, p, f.label, cfg)
    scfg = SchwartzConfig(1.0)
    for a, tag in ((cfg.bound_base_a, "base"), (cfg.bound_slow_a, "slow")):
        sub = lemma42_bound_check(standard_profile(0, a), scfg, r=2, order=1, stability=10.0)
        for c in sub.checks:
            rep.add(CheckResult(f"AC8.{c.check_id}.{tag}", c.passed, c.measured, c.tolerance,
                                note=f"sech^{2 * a:g} {c.note}"))
    for n in cfg.family_n:
        f = inverse_gaussian_profile(n)
        for p in cfg.p_values:
            _nu_suite(rep, f, p, f"inverse_gaussian_n{n}", cfg)
    return rep


# ---------------------------------------------------------------------------
# AC9: Paley-Wiener


def pw_table(cfg: SuiteConfig):
    """``(R, R_hat, outcome)`` for bumps of radial support ``[0, R]``."""
    rows = []
    for R in cfg.pw_radii:
        f = bump_profile(R)
        est = pw_type_estimate(log_abs=lambda s, f=f: bump_log_transform(f, s), sigma_max=cfg.pw_sigma_max)
        rows.append((R, est.R_hat, est.outcome))
    return rows


def check_paley_wiener(cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("AC9 Paley-Wiener")
    tol = cfg.tol(0.05)
    for R, R_hat, outcome in pw_table(cfg):
        err = abs(R_hat - R) / R
        rep.add(CheckResult(f"AC9.type_R{R:g}", err < tol and outcome == "finite", err, tol,
                            note=f"R_hat={R_hat:.6f}"))
    f = bump_profile(1.0, c=4.0, order=64)
    lam_rule = composite_gauss_legendre(32, 0.0, 100.0, 10)
    for N in cfg.decay_orders:
        sup, arg, interior = spectral_decay_check(f, lam_rule, N)
        ok = math.isfinite(sup) and (interior or N == 0)
        rep.add(CheckResult(f"AC9.decay_N{N}", ok, sup, math.inf, note=f"sup at lam={arg:.3f}"))
    return rep


# ---------------------------------------------------------------------------
# AC10: infrastructure


def check_infrastructure(cfg: SuiteConfig) -> VerificationReport:
    from .cli import main as cli_main

    rep = VerificationReport("AC10 infrastructure")
    outputs, codes = [], []
    for _ in range(2):
        with tempfile.TemporaryDirectory() as d, contextlib.redirect_stdout(io.StringIO()):
            codes.append(cli_main(["--out", d, "eval", "eisenstein", "--n", "2", "--lambda=-3:3:7", "--t", "0:2:5"]))
            codes.append(cli_main(["--out", d, "transform", "forward", "--profile", "sech4_n1"]))
            files = sorted(os.listdir(d))
            outputs.append({name: open(os.path.join(d, name), "rb").read() for name in files})
    same = outputs[0] == outputs[1] and len(outputs[0]) == 2 and not any(codes)
    rep.add(CheckResult("AC10.deterministic", same, 0.0 if same else 1.0, 0.0,
                        note=",".join(sorted(outputs[0]))))

    tol = cfg.tol(1e-7)
    worst = 0.0
    for f in random_test_functions(cfg.chart_samples, cfg.seed):
        a = integrate_X(f, "polar")
        b = integrate_X(f, "horocyclic")
        worst = max(worst, abs(a - b) / abs(a))
    rep.add(CheckResult("AC10.chart_consistency", worst < tol, worst, tol, note=f"{cfg.chart_samples} functions"))

    tol = cfg.tol(1e-14)
    worst = 0.0
    for k in range(-20, 21):
        for m in range(-20, 21):
            v = circle_average(lambda th: np.exp(1j * (k - m) * th), 64)
            worst = max(worst, abs(v - (1.0 if k == m else 0.0)))
    rep.add(CheckResult("AC10.character_orthogonality", worst < tol, worst, tol, note="|k|,|m| <= 20, 64 points"))
    return rep


CHECKS = {
    "AC1": check_kernels,
    "AC2": check_estimates,
    "AC3": check_round_trip,
    "AC4": check_plancherel,
    "AC5": check_projections,
    "AC6": check_evenness,
    "AC7": check_analyticity,
    "AC8": check_seminorms,
    "AC9": check_paley_wiener,
    "AC10": check_infrastructure,
}

SUITES = {
    "estimates": ("AC1", "AC2"),
    "plancherel": ("AC3", "AC4", "AC5", "AC6"),
    "schwartz": ("AC7", "AC8"),
    "pw": ("AC9",),
    "all": tuple(CHECKS),
}


def run_check(check_id: str, cfg: SuiteConfig) -> VerificationReport:
    return CHECKS[check_id](cfg)
