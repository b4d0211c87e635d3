"""Deterministic quadrature primitives.

Gauss-Legendre rules (computed by Newton iteration, any order up to 4096),
equispaced trapezoid averages on the circle, and panel-wise integration over
the half line with an explicit exponential tail model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .errors import EvaluationError, ConvergenceError, ParameterError, TruncationError

MAX_ORDER = 4096
CIRCLE_START = 32
CIRCLE_MAX = 2**16


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights on an interval ``(a, b)``.

    Composite rules built from equal panels also record ``centers`` (panel
    midpoints) and ``local`` (nodes relative to the midpoint), so that
    ``nodes == (centers[:, None] + local[None, :]).ravel()`` up to rounding.
    """

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]
    centers: np.ndarray | None = field(default=None, repr=False)
    local: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        a, b = self.interval
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1 or nodes.size == 0:
            raise ParameterError("nodes and weights must be matching non-empty 1-D arrays")
        if not a < b:
            raise ParameterError(f"empty interval ({a}, {b})")
        if np.any(weights <= 0):
            raise ParameterError("quadrature weights must be positive")
        if np.any(np.diff(nodes) <= 0) or nodes[0] <= a or nodes[-1] >= b:
            raise ParameterError("nodes must be strictly increasing inside (a, b)")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size

    def integrate(self, values):
        """Weighted sum over the first axis of ``values`` (sampled at ``nodes``)."""
        values = np.asarray(values)
        return np.tensordot(self.weights, values, axes=(0, 0))

    def apply(self, f):
        return self.integrate(f(self.nodes))

    @property
    def is_tensor(self):
        return self.centers is not None


class TailPolicy(NamedTuple):
    """Truncation policy for integrals over ``[0, inf)``.

    ``growth_exponent`` is the known exponential rate of the integrand: the
    tail beyond ``T`` is modelled as ``|f(T)| * exp(growth_exponent * (t - T))``.
    """

    abs_tol: float = 1e-13
    max_cutoff: float = 40.0
    growth_exponent: float = -1.0

    def validate(self):
        if not self.abs_tol > 0:
            raise ParameterError("TailPolicy.abs_tol must be positive")
        if not self.max_cutoff >= 1:
            raise ParameterError("TailPolicy.max_cutoff must be >= 1")
        return self


class HalflineResult(NamedTuple):
    value: complex | np.ndarray
    cutoff: float
    tail_estimate: float


@lru_cache(maxsize=64)
def _legendre_reference(order: int):
    """Nodes/weights on (-1, 1) via Newton iteration on P_order."""
    n = order
    m = (n + 1) // 2
    k = np.arange(1, m + 1)
    # Tricomi initial guess for the positive roots, descending
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5)) * (1 - (n - 1) / (8.0 * n**3))
    dp = np.ones_like(x)
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, n + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        delta = p1 / dp
        x = x - delta
        if np.max(np.abs(delta)) < 1e-15:
            break
    else:
        raise ConvergenceError(f"Gauss-Legendre Newton iteration stalled at order {order}")
    # derivative at the converged nodes
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    if n % 2 == 1:
        x[-1] = 0.0
    # mirror so that nodes are exactly antisymmetric and weights symmetric
    xs = np.concatenate([-x, x[::-1][n % 2:]])
    ws = np.concatenate([w, w[::-1][n % 2:]])
    return xs, ws


def gauss_legendre(order: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """Gauss-Legendre rule with ``order`` nodes on ``(a, b)``.

    Exact for polynomials of degree ``2*order - 1``.
    """
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise ParameterError(f"order must be an integer, got {order!r}")
    if not 1 <= order <= MAX_ORDER:
        raise ParameterError(f"order must be in [1, {MAX_ORDER}], got {order}")
    a, b = float(a), float(b)
    if not a < b:
        raise ParameterError(f"need a < b, got ({a}, {b})")
    x, w = _legendre_reference(int(order))
    half, mid = 0.5 * (b - a), 0.5 * (a + b)
    return QuadratureRule(mid + half * x, half * w, (a, b))


def composite_gauss_legendre(order: int, a: float, b: float, panels: int) -> QuadratureRule:
    """Gauss-Legendre on ``panels`` equal sub-intervals of ``(a, b)``."""
    if panels < 1:
        raise ParameterError("panels must be >= 1")
    ref = gauss_legendre(order)
    h = (b - a) / panels
    centers = a + h * (np.arange(panels) + 0.5)
    local = 0.5 * h * ref.nodes
    nodes = (centers[:, None] + local[None, :]).ravel()
    weights = np.tile(0.5 * h * ref.weights, panels)
    return QuadratureRule(nodes, weights, (float(a), float(b)), centers, local)


def _sample(evaluator, theta):
    vals = evaluator(theta)
    vals = np.asarray(vals, dtype=complex)
    if vals.shape != theta.shape:
        vals = np.array([complex(evaluator(th)) for th in theta])
    bad = ~np.isfinite(vals)
    if np.any(bad):
        where = float(theta[np.argmax(bad)])
        raise EvaluationError(f"non-finite integrand value at theta={where!r}", where=where)
    return vals


def circle_average(evaluator: Callable, n_points: int) -> complex:
    """Equispaced trapezoid value of ``(1/2pi) * int_0^{2pi} evaluator(theta) dtheta``.

    Spectrally accurate for analytic periodic integrands; exact for
    trigonometric polynomials of degree < ``n_points``.
    """
    if n_points < 4:
        raise ParameterError("n_points must be >= 4")
    theta = 2 * np.pi * np.arange(n_points) / n_points
    return complex(np.mean(_sample(evaluator, theta)))


def circle_average_adaptive(
    evaluator: Callable,
    abs_tol: float = 1e-13,
    start: int = CIRCLE_START,
    max_points: int = CIRCLE_MAX,
) -> tuple[complex, int]:
    """Doubling trapezoid average; returns ``(value, n_points)``.

    Each refinement re-uses the previous samples and evaluates only the new
    midpoints.  Stops at the first refinement that changes the value by less
    than ``abs_tol``.
    """
    n = start
    theta = 2 * np.pi * np.arange(n) / n
    total = _sample(evaluator, theta).sum()
    prev = total / n
    while 2 * n <= max_points:
        mid = 2 * np.pi * (np.arange(n) + 0.5) / n
        total = total + _sample(evaluator, mid).sum()
        n *= 2
        cur = total / n
        if abs(cur - prev) < abs_tol:
            return complex(cur), n
        prev = cur
    raise ConvergenceError(f"circle average not converged to {abs_tol:g} with {n} points")


def integrate_halfline(
    integrand: Callable,
    policy: TailPolicy = TailPolicy(),
    panel_order: int = 48,
    panel_width: float = 2.0,
) -> HalflineResult:
    """Integrate ``integrand`` over ``[0, inf)`` panel by panel.

    ``integrand`` maps a 1-D array of abscissae to values whose first axis runs
    over the abscissae (extra axes are integrated component-wise).  Panels are
    added until the modelled tail ``max|f(T)| / |growth_exponent|`` drops below
    ``policy.abs_tol``; a non-negative growth exponent means the tail can never
    be certified and ends in :class:`TruncationError` at ``max_cutoff``.
    """
    policy.validate()
    ref = gauss_legendre(panel_order)
    total = None
    T = 0.0
    tail = float("inf")
    while T < policy.max_cutoff - 1e-12:
        hi = min(T + panel_width, policy.max_cutoff)
        half = 0.5 * (hi - T)
        nodes = np.concatenate([T + half * (ref.nodes + 1.0), [hi]])
        vals = np.asarray(integrand(nodes))
        if not np.all(np.isfinite(vals)):
            raise EvaluationError(f"non-finite integrand on panel [{T}, {hi}]", where=T)
        part = np.tensordot(half * ref.weights, vals[:-1], axes=(0, 0))
        total = part if total is None else total + part
        T = hi
        end = float(np.max(np.abs(vals[-1]))) if vals[-1].size else 0.0
        if end == 0.0:
            tail = 0.0
        elif policy.growth_exponent < 0:
            tail = end / -policy.growth_exponent
        else:
            tail = float("inf")
        if tail < policy.abs_tol:
            return HalflineResult(total, T, tail)
    raise TruncationError(
        f"tail estimate {tail:.3g} above abs_tol {policy.abs_tol:g} at cutoff {T:g}",
        tail_estimate=tail,
        cutoff=T,
    )


def adaptive_gauss_legendre(
    f: Callable,
    a: float,
    b: float,
    order: int = 16,
    rel_tol: float = 1e-12,
    abs_tol: float = 0.0,
    initial_panels: int = 1,
    max_panels: int = 20000,
):
    """Adaptive panel bisection with a fixed Gauss-Legendre rule.

    A panel is accepted once its value and the sum over its two halves agree
    to within its share (by width) of ``max(abs_tol, rel_tol * L1)``, where
    ``L1`` is the running estimate of the integral of ``|f|``.  ``f`` maps a
    1-D array of abscissae to values whose first axis runs over them; extra
    axes are integrated component-wise and judged by their maximum.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ParameterError(f"need a < b, got ({a}, {b})")
    ref = gauss_legendre(order)
    x, w = ref.nodes, ref.weights
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    total = 0.0
    l1 = 0.0
    count = 0
    while lo.size:
        count += lo.size
        if count > max_panels:
            raise ConvergenceError(f"adaptive quadrature exceeded {max_panels} panels on ({a}, {b})")
        mid = 0.5 * (lo + hi)
        bounds = np.stack([np.stack([lo, mid, lo]), np.stack([hi, hi, mid])])  # (2, 3, P)
        half = 0.5 * (bounds[1] - bounds[0])
        nodes = 0.5 * (bounds[1] + bounds[0])[..., None] + half[..., None] * x  # (3, P, order)
        vals = np.asarray(f(nodes.ravel()))
        if not np.all(np.isfinite(vals)):
            raise EvaluationError(f"non-finite integrand on ({a}, {b})")
        vals = vals.reshape((3, lo.size, order) + vals.shape[1:])
        extra = (None,) * (vals.ndim - 3)
        wv = (half[(...,) + (None,)] * w)[(...,) + extra]
        parts = np.sum(wv * vals, axis=2)  # (3, P, ...)
        whole, halves = parts[0], parts[1] + parts[2]
        l1_panel = np.sum(wv[1:] * np.abs(vals[1:]), axis=0)  # (P, ...)
        err = np.abs(whole - halves)
        if err.ndim > 1:
            err = err.reshape(err.shape[0], -1).max(axis=1)
        # accepted mass plus the current estimate of every pending panel
        scale = float(np.max(l1 + np.sum(l1_panel, axis=0)))
        allowed = max(abs_tol, rel_tol * scale) * (hi - lo) / (b - a)
        ok = err <= np.maximum(allowed, 1e-15 * scale)
        total = total + np.sum(halves[ok], axis=0)
        l1 = l1 + np.sum(l1_panel[ok], axis=0)
        lo, hi = np.concatenate([lo[~ok], mid[~ok]]), np.concatenate([mid[~ok], hi[~ok]])
    return total
