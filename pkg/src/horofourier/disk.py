"""The hyperbolic disk of curvature -4 (so rho = 1).

Points are stored in geodesic polar coordinates ``(t, psi)``: ``t`` is the
distance from the origin and the Euclidean position is ``tanh(t) e^{i psi}``.
Measure convention used everywhere in the package::

    dx = 2 sinh(2t) dt  dpsi / (2 pi)

The Poisson kernel ``P(z, b) = (1 - |z|^2) / |z - b|^2`` plays the role of
``exp(-2 H(x^{-1} k))``; the Busemann function is ``B = log(P) / 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ParameterError, TruncationError
from .quadrature import TailPolicy, adaptive_gauss_legendre

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DiskPoint:
    t: float
    psi: float = 0.0

    def __post_init__(self):
        t = float(self.t)
        if not (t >= 0.0 and math.isfinite(t)):
            raise DomainError(f"geodesic radius must be finite and >= 0, got {self.t}")
        psi = 0.0 if t == 0.0 else float(self.psi) % TWO_PI
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "psi", psi)

    @property
    def z(self) -> complex:
        return math.tanh(self.t) * complex(math.cos(self.psi), math.sin(self.psi))

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        return cls(distance_from_origin(abs(z)), math.atan2(z.imag, z.real))


@dataclass(frozen=True)
class BoundaryPoint:
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)


@dataclass(frozen=True)
class MeasureConvention:
    """Constants of the instantiation: Delta(t) = 2 sinh 2t, dk = dpsi/2pi, |W| = 2."""

    weyl_order: int = 2
    rho: float = 1.0

    @staticmethod
    def radial_weight(t):
        return 2.0 * np.sinh(2.0 * np.asarray(t, dtype=float))

    @staticmethod
    def angular_weight():
        return 1.0 / TWO_PI


MEASURE = MeasureConvention()


def _one_minus_tanh(t):
    # 1 - tanh t without cancellation
    return 2.0 / (np.exp(2.0 * t) + 1.0)


def log_poisson_polar(t, psi, theta):
    """``log P`` at the point ``(t, psi)`` and boundary angle ``theta`` (broadcasts)."""
    t = np.asarray(t, dtype=float)
    r = np.tanh(t)
    om = _one_minus_tanh(t)
    s2 = np.sin(0.5 * (np.asarray(psi) - np.asarray(theta))) ** 2
    return -2.0 * np.log(np.cosh(t)) - np.log(om * om + 4.0 * r * s2)


def poisson_kernel(z: DiskPoint, b: BoundaryPoint) -> float:
    """``(1 - r^2) / |z - b|^2`` with ``r = tanh t``; always positive."""
    return float(np.exp(log_poisson_polar(z.t, z.psi, b.theta)))


def busemann(z: DiskPoint, b: BoundaryPoint) -> float:
    """Signed horocyclic distance ``log(P) / 2``; satisfies ``|B| <= t``."""
    return float(0.5 * log_poisson_polar(z.t, z.psi, b.theta))


def distance_from_origin(r: float) -> float:
    """Geodesic distance ``artanh r`` of a point with Euclidean radius ``r``."""
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"Euclidean radius must lie in [0, 1), got {r}")
    return math.atanh(r)


def horocyclic_to_polar(s, v):
    """Map chart coordinates ``(s, v)`` to geodesic polar ``(t, psi)``.

    Upper half plane ``w = xi + i e^{2s}`` with ``xi = e^{s} sinh v``, sent to
    the disk by ``z = (w - i)/(w + i)``.  Then ``cosh 2t = cosh 2s + sinh(v)^2/2``.
    """
    s = np.asarray(s, dtype=float)
    v = np.asarray(v, dtype=float)
    x = 2.0 * np.sinh(s) ** 2 + 0.5 * np.sinh(v) ** 2  # cosh(2t) - 1
    t = 0.5 * np.log1p(x + np.sqrt(x * (x + 2.0)))
    xi = np.exp(s) * np.sinh(v)
    y = np.exp(2.0 * s)
    psi = np.arctan2(-2.0 * xi, xi * xi + y * y - 1.0)
    return t, psi


def horocyclic_density(s, v):
    """Density of ``dx`` in the ``(s, v)`` chart: ``e^{-s} cosh(v) / pi``."""
    return np.exp(-np.asarray(s)) * np.cosh(v) / math.pi


def _polar_circle_rows(f, ts, tol, start=32, max_points=2**16):
    """Adaptive trapezoid averages of ``f(t_i, .)`` for every row ``t_i``."""
    ts = np.asarray(ts, dtype=float)[:, None]
    n = start
    psi = TWO_PI * np.arange(n) / n
    total = np.asarray(f(ts, psi[None, :]), dtype=complex).sum(axis=1)
    prev = total / n
    while 2 * n <= max_points:
        mid = TWO_PI * (np.arange(n) + 0.5) / n
        total = total + np.asarray(f(ts, mid[None, :]), dtype=complex).sum(axis=1)
        n *= 2
        cur = total / n
        if np.all(np.abs(cur - prev) <= tol * np.maximum(1.0, np.abs(cur))):
            return cur
        prev = cur
    return cur


def _cutoff(f, policy: TailPolicy) -> float:
    """Smallest integer radius past which the modelled tail of ``f dx`` is below tolerance."""
    policy.validate()
    if policy.growth_exponent >= 0:
        raise TruncationError("tail cannot be certified for a non-decaying integrand",
                              tail_estimate=math.inf, cutoff=0.0)
    psi = TWO_PI * np.arange(64) / 64
    T = 1.0
    while True:
        end = float(np.max(np.abs(np.asarray(f(np.full_like(psi, T), psi)))))
        tail = end * float(MEASURE.radial_weight(T)) / -policy.growth_exponent
        if tail < policy.abs_tol:
            return T
        if T >= policy.max_cutoff:
            raise TruncationError(f"tail estimate {tail:.3g} above abs_tol {policy.abs_tol:g} at cutoff {T:g}",
                                  tail_estimate=tail, cutoff=T)
        T = min(T + 1.0, policy.max_cutoff)


def integrate_X(
    f: Callable,
    chart: str = "polar",
    policy: TailPolicy = TailPolicy(abs_tol=1e-14, max_cutoff=12.0, growth_exponent=-1.0),
    panel_order: int = 16,
    rel_tol: float = 1e-11,
) -> complex:
    """Integrate ``f(t, psi)`` over the disk against ``dx``.

    ``f`` must accept broadcasting arrays.  The integration radius ``T`` is
    the first integer at which ``max_psi |f(T, psi)| Delta(T)`` divided by the
    decay rate ``-policy.growth_exponent`` drops below ``policy.abs_tol``.
    The polar chart integrates ``Delta(t)`` times adaptive circle averages
    over ``[0, T]``; the horocyclic chart integrates the box ``|s| <= T``,
    ``|v| <= asinh(2 sinh T)``, which contains the geodesic ball of radius ``T``.
    Both use adaptive Gauss-Legendre panels.
    """
    if chart not in ("polar", "horocyclic"):
        raise ParameterError(f"unknown chart {chart!r}; use 'polar' or 'horocyclic'")
    T = _cutoff(f, policy)
    if chart == "polar":
        def radial(ts):
            return MEASURE.radial_weight(ts) * _polar_circle_rows(f, ts, 1e-15)

        return complex(adaptive_gauss_legendre(radial, 0.0, T, panel_order, rel_tol,
                                               initial_panels=int(math.ceil(T))))
    V = math.asinh(2.0 * math.sinh(T))

    def inner(s):
        def row(v):
            tt, pp = horocyclic_to_polar(s[None, :], v[:, None])
            vals = np.asarray(f(tt, pp), dtype=complex)
            return vals * horocyclic_density(s[None, :], v[:, None])

        return adaptive_gauss_legendre(row, -V, V, panel_order, rel_tol,
                                       initial_panels=int(math.ceil(2 * V)))

    return complex(adaptive_gauss_legendre(inner, -T, T, panel_order, rel_tol,
                                           initial_panels=int(math.ceil(2 * T))))
