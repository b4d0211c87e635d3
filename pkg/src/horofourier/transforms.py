"""delta-spherical and Helgason Fourier transforms on the disk.

Conventions (curvature -4, ``dx = 2 sinh(2t) dt dpsi/2pi``):

* type-``n`` function ``f(t, psi) = g(t) e^{i n psi}``;
* forward transform ``f~(lam) = int_0^inf g(t) Phi_{-lam,n}(t) 2 sinh(2t) dt``;
* inverse ``g(t) = (1/2) int_R Phi_{lam,n}(t) h(lam) nu_P(lam) dlam``;
* Helgason transform ``F(lam, theta) = int_X f(z) P(z, e^{i theta})^{(1 - i lam)/2} dx``
  with inverse ``f(z) = (1/2) int_R avg_theta F(lam, theta) P(z, e^{i theta})^{(1 + i lam)/2} nu_P dlam``.

``f~ / q_delta(n, .)`` is even in ``lam``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _engine
from .disk import MEASURE, TWO_PI
from .errors import (
    DomainError,
    InvariantError,
    ParameterError,
    StripError,
    TruncationError,
)
from .kernels import (
    STRIP_SLACK,
    SpectralParameter,
    SumGrid,
    eisenstein_table,
    eisenstein_tensor,
    plancherel_density,
    q_delta,
    _n,
)
from .quadrature import QuadratureRule, composite_gauss_legendre

OMEGA = MEASURE.weyl_order
STRIP_MARGIN = 0.05
EDGE_TOL = 1e-14
TAIL_TOL = 1e-3
T_MAX = 12.0
LAMBDA_MAX = 36.0
BATCH_MODES = 4


def default_t_rule() -> QuadratureRule:
    """Gauss-Legendre, 6 panels of order 48 on ``[0, 12]``."""
    return composite_gauss_legendre(48, 0.0, T_MAX, 6)


def default_lambda_rule() -> QuadratureRule:
    """Gauss-Legendre, 9 panels of order 64 on ``[-36, 36]``."""
    return composite_gauss_legendre(64, -LAMBDA_MAX, LAMBDA_MAX, 9)


def _is_symmetric(x):
    return np.allclose(x, -x[::-1], rtol=0, atol=1e-12 * max(1.0, float(np.max(np.abs(x)))))


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Radial part ``g`` of a type-``n`` function, sampled on a quadrature grid.

    ``kappa`` records the decay ``|g(t)| <= C e^{-kappa t}``; ``evaluator``
    is an optional exact formula for ``g`` between nodes.
    """

    n: int
    rule: QuadratureRule
    values: np.ndarray
    kappa: float
    evaluator: Callable | None = field(default=None, repr=False)
    source: "SpectralProfile | None" = field(default=None, repr=False)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "n", _n(self.n))
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.rule.nodes.shape:
            raise InvariantError("profile values must match the grid", invariant="grid-shape")
        if not np.all(np.isfinite(vals)):
            raise InvariantError("profile values must be finite", invariant="finite")
        if not self.kappa > 0:
            raise InvariantError("decay rate kappa must be positive", invariant="decay")
        if self.n != 0:
            t3 = self.rule.nodes[:3]
            ratio = np.abs(vals[:3]) / t3 ** abs(self.n)
            scale = float(np.max(np.abs(vals))) or 1.0
            if ratio[0] > 4.0 * max(ratio[1], ratio[2]) + 1e-12 * scale / t3[0] ** abs(self.n):
                raise InvariantError(
                    f"g(t)/t^{abs(self.n)} is not bounded near 0", invariant="origin-vanishing"
                )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def t(self):
        return self.rule.nodes

    def __call__(self, t):
        if self.evaluator is None:
            raise DomainError("profile has no evaluator between grid nodes")
        return self.evaluator(t)

    def strip_bound(self, p: float | None = None) -> float:
        """Largest admissible ``|Im lam|``: ``min(2/p - 1, kappa - 1 - margin)``."""
        eps = self.kappa - 1.0 - STRIP_MARGIN
        if p is not None:
            eps = min(eps, 2.0 / p - 1.0)
        return max(eps, 0.0)

    def require_p(self, p: float):
        """Check ``kappa > 2/p`` before an ``S^p`` operation."""
        if not 0 < p <= 2:
            raise ParameterError(f"p must lie in (0, 2], got {p}")
        if not self.kappa > 2.0 / p:
            raise InvariantError(
                f"decay kappa={self.kappa:g} does not exceed 2/p={2.0 / p:g}", invariant="decay"
            )
        return self

    def scaled(self, c) -> "RadialProfile":
        ev = None if self.evaluator is None else (lambda t, e=self.evaluator: c * e(t))
        return RadialProfile(self.n, self.rule, c * self.values, self.kappa, ev, label=self.label)


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    """Transform values on a symmetric real grid plus optional strip samples."""

    n: int
    rule: QuadratureRule
    values: np.ndarray
    epsilon: float = 0.0
    strip_points: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    strip_values: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    evaluator: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "n", _n(self.n))
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.rule.nodes.shape:
            raise InvariantError("spectral values must match the grid", invariant="grid-shape")
        if not np.all(np.isfinite(vals)):
            raise InvariantError("spectral values must be finite", invariant="finite")
        if not _is_symmetric(self.rule.nodes):
            raise InvariantError("real grid must be symmetric about 0", invariant="symmetric-grid")
        sp = np.asarray(self.strip_points, dtype=complex)
        sv = np.asarray(self.strip_values, dtype=complex)
        if sp.shape != sv.shape or not np.all(np.isfinite(sv)):
            raise InvariantError("strip samples malformed", invariant="strip-samples")
        if np.any(np.abs(sp.imag) > self.epsilon + STRIP_SLACK):
            raise InvariantError("strip sample outside |Im lam| <= epsilon", invariant="strip")
        for a in (vals, sp, sv):
            a.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "strip_points", sp)
        object.__setattr__(self, "strip_values", sv)

    @property
    def lam(self):
        return self.rule.nodes

    def __call__(self, lam):
        if self.evaluator is None:
            raise DomainError("spectral profile has no analytic evaluator")
        return self.evaluator(lam)


@dataclass(frozen=True, eq=False)
class PolarSamples:
    """Samples ``f(t_i, psi_m)`` on a radial rule times an equispaced circle grid."""

    rule: QuadratureRule
    values: np.ndarray  # shape (len(rule), n_psi)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 2 or vals.shape[0] != len(self.rule):
            raise InvariantError("samples must have shape (n_t, n_psi)", invariant="grid-shape")
        if not np.all(np.isfinite(vals)):
            raise InvariantError("samples must be finite", invariant="finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def psi(self):
        m = self.values.shape[1]
        return TWO_PI * np.arange(m) / m

    @classmethod
    def from_function(cls, f, rule=None, n_psi=16):
        rule = default_t_rule() if rule is None else rule
        psi = TWO_PI * np.arange(n_psi) / n_psi
        return cls(rule, np.asarray(f(rule.nodes[:, None], psi[None, :]), dtype=complex))

    def modes(self):
        """Fourier coefficients ``c_m(t)`` for ``|m| < n_psi/2`` as a dict."""
        m = self.values.shape[1]
        c = np.fft.fft(self.values, axis=1) / m
        return {k: c[:, k % m] for k in range(-((m - 1) // 2), (m - 1) // 2 + 1)}


@dataclass(frozen=True, eq=False)
class BoundaryFunction2D:
    """Samples ``F(lam_j, theta_m)`` on a spectral rule times an equispaced circle grid."""

    rule: QuadratureRule
    values: np.ndarray  # shape (len(rule), n_theta)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 2 or vals.shape[0] != len(self.rule):
            raise InvariantError("samples must have shape (n_lambda, n_theta)", invariant="grid-shape")
        if not np.all(np.isfinite(vals)):
            raise InvariantError("samples must be finite", invariant="finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def theta(self):
        m = self.values.shape[1]
        return TWO_PI * np.arange(m) / m


# ---------------------------------------------------------------------------
# profiles


def standard_profile(n: int, a: float, rule: QuadratureRule | None = None) -> RadialProfile:
    """``g_{n,a}(t) = tanh(t)^|n| sech(t)^{2a}``; decay rate ``kappa = 2a``."""
    rule = default_t_rule() if rule is None else rule
    m = abs(int(n))

    def g(t, m=m, a=a):
        t = np.asarray(t)
        if not np.iscomplexobj(t):
            t = t.astype(float)
        return np.tanh(t) ** m * np.cosh(t) ** (-2.0 * a)

    return RadialProfile(n, rule, g(rule.nodes), 2.0 * a, g, label=f"g_{n},{a:g}")


def profile_from_function(n, g, kappa, rule=None, label="") -> RadialProfile:
    rule = default_t_rule() if rule is None else rule
    return RadialProfile(n, rule, np.asarray(g(rule.nodes), dtype=complex), kappa, g, label=label)


def spectral_from_function(n, h, rule=None, epsilon=0.0) -> SpectralProfile:
    """Sample an analytic ``h`` on the real grid; ``h`` is kept for strip evaluation."""
    rule = default_lambda_rule() if rule is None else rule
    return SpectralProfile(n, rule, np.asarray(h(rule.nodes), dtype=complex), epsilon, evaluator=h)


# ---------------------------------------------------------------------------
# delta-spherical transform


def _modes(n):
    # tables are shared across the low K-types; extra modes cost little
    return tuple(range(max(BATCH_MODES, abs(n)) + 1)), abs(n)


def _kernel(lams, n, ts, negate):
    """``Phi_{+-lam, n}(ts)`` as an array ``(len(ts), len(lams))``."""
    modes, k = _modes(n)
    if isinstance(lams, QuadratureRule) and lams.is_tensor:
        if negate and not _is_symmetric(lams.nodes):
            return eisenstein_table(-lams.nodes, modes, ts)[:, :, k]
        E = eisenstein_table(lams, modes, ts)[:, :, k]
        return E[:, ::-1] if negate else E
    lam = np.atleast_1d(np.asarray(lams, dtype=complex))
    return eisenstein_table(-lam if negate else lam, modes, ts)[:, :, k]


def _phi0_bound(t):
    # phi_0(t) <= min(1, (1 + t) e^{-t}) on the disk
    return np.minimum(1.0, (1.0 + t) * np.exp(-t))


def _tail_check(f: RadialProfile, lam_im_max: float, rel_tol=TAIL_TOL):
    """Bound the part of the radial integral beyond the grid, relative to its size."""
    T = f.rule.interval[1]
    t = f.t
    rate = f.kappa - 1.0 - lam_im_max
    dens = MEASURE.radial_weight(t) * _phi0_bound(t) * np.exp(lam_im_max * t)
    scale = float(np.sum(f.rule.weights * np.abs(f.values) * dens))
    if scale == 0.0:
        return
    tail = abs(f.values[-1]) * dens[-1] / rate if rate > 0 else math.inf
    if tail > rel_tol * scale:
        raise TruncationError(
            f"radial tail beyond t={T:g} is {tail / scale:.2e} of the integral (limit {rel_tol:g})",
            tail_estimate=tail, cutoff=T,
        )


def delta_spherical_forward(f: RadialProfile, lam, p: float | None = None):
    """``f~(lam) = int g(t) Phi_{-lam,n}(t) 2 sinh(2t) dt`` on the profile's grid.

    ``lam`` may be a scalar, an array, a :class:`SpectralParameter`, a
    composite quadrature rule or a :class:`SumGrid` (returns a 2-D array).
    Parameters outside the strip allowed by the profile's decay (and by ``p``
    when given) raise :class:`StripError`.
    """
    eps = f.strip_bound(p)
    if isinstance(lam, SpectralParameter):
        eps = min(eps, lam.strip_bound)
        lam = lam.lam
    if isinstance(lam, SumGrid):
        im = lam.max_abs_imag()
    else:
        lam_arr = lam.nodes if isinstance(lam, QuadratureRule) else np.asarray(lam, dtype=complex)
        im = float(np.max(np.abs(np.imag(lam_arr)), initial=0.0))
    if im > eps + STRIP_SLACK:
        raise StripError(f"|Im lam| = {im:g} outside the admissible strip {eps:g}")
    _tail_check(f, im)
    w = f.rule.weights * MEASURE.radial_weight(f.t) * f.values
    if isinstance(lam, SumGrid):
        E = eisenstein_tensor(-lam.rows, -lam.cols, [abs(f.n)], f.t)[..., 0]
        return np.tensordot(w, E, axes=(0, 0))
    E = _kernel(lam if isinstance(lam, QuadratureRule) else lam_arr.ravel(), f.n, f.t, negate=True)
    out = w @ E
    if isinstance(lam, QuadratureRule):
        return out
    out = out.reshape(np.shape(lam_arr))
    return out[()] if out.ndim == 0 else out


class ForwardEvaluator:
    """Callable ``lam -> f~(lam)`` that also accepts :class:`SumGrid` arguments."""

    accepts_sum_grid = True

    def __init__(self, f: RadialProfile, p: float | None = None):
        self.f = f
        self.p = p

    @property
    def epsilon(self) -> float:
        """Half-width of the strip on which the transform is analytic and computable."""
        return self.f.strip_bound(self.p)

    def __call__(self, lam):
        return delta_spherical_forward(self.f, lam, self.p)


def forward_profile(f: RadialProfile, rule: QuadratureRule | None = None, p: float | None = None) -> SpectralProfile:
    """Spectral profile of ``f`` on ``rule`` with an evaluator for strip points."""
    rule = default_lambda_rule() if rule is None else rule
    eps = f.strip_bound(p)
    vals = delta_spherical_forward(f, rule, p)
    return SpectralProfile(f.n, rule, vals, eps, evaluator=ForwardEvaluator(f, p))


def _edge_check(h: SpectralProfile, weighted, edge_tol):
    edge = float(max(abs(weighted[0]), abs(weighted[-1])))
    if edge > edge_tol:
        raise TruncationError(
            f"|h nu_P| = {edge:.2e} at the grid edge exceeds {edge_tol:g}",
            tail_estimate=edge,
            cutoff=float(h.rule.interval[1]),
        )


def delta_spherical_inverse(h: SpectralProfile, t, edge_tol: float = EDGE_TOL):
    """``g(t) = (1/2) int Phi_{lam,n}(t) h(lam) nu_P(lam) dlam`` on the profile's grid.

    ``edge_tol`` bounds ``|h nu_P|`` at the two outermost nodes; a larger edge
    value means the grid truncates non-negligible spectral mass.
    """
    t_arr = np.asarray(t.nodes if isinstance(t, QuadratureRule) else t, dtype=float)
    weighted = h.values * plancherel_density(h.lam)
    _edge_check(h, weighted, edge_tol)
    E = _kernel(h.rule, h.n, t_arr.ravel(), negate=False)
    out = (E @ (h.rule.weights * weighted)) / OMEGA
    out = out.reshape(t_arr.shape)
    return out[()] if out.ndim == 0 else out


def inverse_profile(h: SpectralProfile, rule: QuadratureRule | None = None, kappa: float = 2.0,
                    edge_tol: float = EDGE_TOL) -> RadialProfile:
    """Radial profile ``I h`` on ``rule``.  ``kappa`` is the caller's decay claim."""
    rule = default_t_rule() if rule is None else rule
    vals = delta_spherical_inverse(h, rule, edge_tol)
    return RadialProfile(
        h.n, rule, vals, kappa,
        evaluator=lambda t: delta_spherical_inverse(h, t, edge_tol),
        source=h,
    )


def weighted_l2(values, rule: QuadratureRule, t_max: float | None = None) -> float:
    """``(int |v|^2 2 sinh(2t) dt)^{1/2}`` using ``rule``, optionally only nodes ``t <= t_max``."""
    mask = np.ones(len(rule), bool) if t_max is None else rule.nodes <= t_max
    w = rule.weights[mask] * MEASURE.radial_weight(rule.nodes[mask])
    return math.sqrt(float(np.sum(w * np.abs(np.asarray(values)[mask]) ** 2)))


def round_trip_error(f: RadialProfile, lam_rule=None, t_max: float = 4.0, p=None, edge_tol=EDGE_TOL) -> float:
    """Relative ``L^2(Delta)`` error of inverse(forward(f)) on ``t <= t_max``."""
    h = forward_profile(f, lam_rule, p)
    g = inverse_profile(h, f.rule, f.kappa, edge_tol)
    return weighted_l2(g.values - f.values, f.rule, t_max) / weighted_l2(f.values, f.rule, t_max)


def plancherel_check(f: RadialProfile, lam_rule=None):
    """``(lhs, rhs, defect)`` for ``int |f|^2 dx = (1/2) int |f~|^2 nu_P dlam``."""
    lam_rule = default_lambda_rule() if lam_rule is None else lam_rule
    lhs = weighted_l2(f.values, f.rule) ** 2
    ft = delta_spherical_forward(f, lam_rule)
    rhs = float(np.sum(lam_rule.weights * np.abs(ft) ** 2 * plancherel_density(lam_rule.nodes))) / OMEGA
    if lhs == 0.0 and rhs == 0.0:
        return 0.0, 0.0, 0.0
    return lhs, rhs, abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def apply_Ddelta_spectral(phi: RadialProfile, n_target, lam_rule=None, edge_tol: float = EDGE_TOL) -> RadialProfile:
    """Type-``n_target`` profile ``f`` with ``f~ = q_delta(n_target, .) * phi^``.

    Realizes the differential operator relating K-invariant functions to
    type-``n`` functions through its action on transforms.
    """
    if phi.n != 0:
        raise InvariantError("apply_Ddelta_spectral needs a K-invariant (n = 0) profile", invariant="n=0")
    n = _n(n_target)
    lam_rule = default_lambda_rule() if lam_rule is None else lam_rule
    if n == 0:
        return phi
    src = phi.source
    if src is not None and src.evaluator is not None:
        # phi came from a spectral profile: reuse it exactly instead of re-transforming
        phat_fn = src.evaluator
    else:
        phat_fn = lambda lam: delta_spherical_forward(phi, lam)  # noqa: E731
    phat = phat_fn(lam_rule.nodes) if src is not None else delta_spherical_forward(phi, lam_rule)
    h = SpectralProfile(
        n, lam_rule, q_delta(n, lam_rule.nodes) * phat, phi.strip_bound(),
        evaluator=lambda lam: q_delta(n, lam) * phat_fn(lam),
    )
    return inverse_profile(h, phi.rule, phi.kappa, edge_tol)


# ---------------------------------------------------------------------------
# Helgason Fourier transform


def _as_callable(f):
    if isinstance(f, PolarSamples):
        modes = f.modes()
        rule = f.rule

        def ev(t, psi):
            t = np.asarray(t, dtype=float)
            idx = np.searchsorted(rule.nodes, t.ravel())
            ok = (idx < len(rule)) & (rule.nodes[np.minimum(idx, len(rule) - 1)] == t.ravel())
            if not np.all(ok):
                raise DomainError("polar samples can only be evaluated at their radial nodes")
            idx = idx.reshape(t.shape)
            return sum(c[idx] * np.exp(1j * m * np.asarray(psi)) for m, c in modes.items())

        return rule, ev
    return None, f


def hft_forward(f, lam, theta, rule: QuadratureRule | None = None, kappa: float = 4.0):
    """Helgason transform ``F(lam, theta)`` by 2-D quadrature in the polar chart.

    ``f(t, psi)`` is a broadcasting callable (or :class:`PolarSamples`);
    ``lam`` a rule or array; ``theta`` an array of boundary angles.  For each
    radial node the angular integral is done adaptively around the peak of
    the Poisson kernel at ``theta``.  Returns an array ``(len(lam), len(theta))``.
    ``kappa`` is the decay rate used to bound ``|Im lam|``.
    """
    prule, fn = _as_callable(f)
    rule = prule if prule is not None else (default_t_rule() if rule is None else rule)
    if isinstance(lam, QuadratureRule) and lam.is_tensor:
        rows, cols = -lam.centers.astype(complex), -lam.local.astype(complex)
    else:
        rows, cols = -np.atleast_1d(np.asarray(lam, dtype=complex)), np.zeros(1, complex)
    im = float(np.max(np.abs(rows.imag), initial=0.0))
    if im > kappa - 1.0 - STRIP_MARGIN + STRIP_SLACK:
        raise StripError(f"|Im lam| = {im:g} outside the admissible strip")
    thetas = np.atleast_1d(np.asarray(theta, dtype=float))
    out = np.zeros((rows.size * cols.size, thetas.size), dtype=complex)
    wt = rule.weights * MEASURE.radial_weight(rule.nodes)
    s_rows = 0.5 * (1.0 + 1j * rows)
    s_cols = 0.5j * cols
    for i, t in enumerate(rule.nodes):
        for m, th in enumerate(thetas):
            def weight_fn(phi, t=t, th=th):
                v = np.asarray(fn(np.full_like(phi, t), th - phi), dtype=complex)
                return np.stack([v.real, v.imag])

            S, _ = _engine.circle_sums(float(t), s_rows, s_cols, None, weight_fn=weight_fn)
            out[:, m] += wt[i] * (S[:, :, 0] + 1j * S[:, :, 1]).ravel()
    return out


def hft_forward_2d(f, lam_rule=None, n_theta: int = 8, rule=None, kappa: float = 4.0) -> BoundaryFunction2D:
    lam_rule = default_lambda_rule() if lam_rule is None else lam_rule
    theta = TWO_PI * np.arange(n_theta) / n_theta
    return BoundaryFunction2D(lam_rule, hft_forward(f, lam_rule, theta, rule, kappa))


def _check_alias(n, m):
    if not abs(n) < m / 2:
        raise ParameterError(f"|n| = {abs(n)} must be < grid size / 2 = {m / 2:g} (aliasing)")


def delta_project_spatial(f: PolarSamples, n, kappa: float = 4.0) -> RadialProfile:
    """Radial profile of the type-``n`` component ``(1/2pi) int f(t, psi) e^{-i n psi} dpsi``."""
    n = _n(n)
    m = f.values.shape[1]
    _check_alias(n, m)
    g = f.values @ np.exp(-1j * n * f.psi) / m
    return RadialProfile(n, f.rule, g, kappa)


def delta_project_spectral(F: BoundaryFunction2D, n) -> SpectralProfile:
    """Boundary Fourier coefficient ``(1/2pi) int F(lam, theta) e^{-i n theta} dtheta``."""
    n = _n(n)
    m = F.values.shape[1]
    _check_alias(n, m)
    return SpectralProfile(n, F.rule, F.values @ np.exp(-1j * n * F.theta) / m)


def hft_inverse(F: BoundaryFunction2D, z, edge_tol: float = EDGE_TOL):
    """``f(z) = (1/2) int avg_theta F(lam, theta) P(z, theta)^{(1+i lam)/2} nu_P dlam``.

    The circle integral is done exactly on the trigonometric interpolant of
    the equispaced ``theta`` samples: mode ``m`` contributes
    ``e^{i m psi} Phi_{lam,m}(t)``.  ``z`` is a :class:`DiskPoint` or a
    sequence of them.
    """
    pts = [z] if not isinstance(z, (list, tuple, np.ndarray)) else list(z)
    m = F.values.shape[1]
    coef = np.fft.fft(F.values, axis=1) / m
    ts = np.array([p.t for p in pts], dtype=float)
    psis = np.array([p.psi for p in pts], dtype=float)
    out = np.zeros(len(pts), dtype=complex)
    for k in range(-((m - 1) // 2), (m - 1) // 2 + 1):
        hk = coef[:, k % m]
        if not np.any(hk):
            continue
        h = SpectralProfile(k, F.rule, hk)
        out += np.exp(1j * k * psis) * delta_spherical_inverse(h, ts, edge_tol)
    return out[0] if not isinstance(z, (list, tuple, np.ndarray)) else out


def hft_plancherel_check(f, lam_rule=None, n_theta: int = 8, rule=None, kappa: float = 4.0, F=None):
    """``(lhs, rhs, defect)`` for ``int |f|^2 dx = (1/2) int avg_theta |F|^2 nu_P dlam``."""
    from .disk import integrate_X
    from .quadrature import TailPolicy

    lam_rule = default_lambda_rule() if lam_rule is None else lam_rule
    F = hft_forward_2d(f, lam_rule, n_theta, rule, kappa) if F is None else F
    lhs = integrate_X(lambda t, psi: np.abs(f(t, psi)) ** 2, "polar",
                      TailPolicy(abs_tol=1e-15, max_cutoff=12.0, growth_exponent=-1.0)).real
    rhs = float(np.sum(lam_rule.weights * np.mean(np.abs(F.values) ** 2, axis=1)
                       * plancherel_density(lam_rule.nodes))) / OMEGA
    return lhs, rhs, abs(lhs - rhs) / max(abs(lhs), abs(rhs))
