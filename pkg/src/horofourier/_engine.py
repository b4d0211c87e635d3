"""Adaptive circle averages of Poisson-kernel powers.

Computes, for a radial point at distance ``t`` and many spectral exponents
``s``, the averages ``(1/2pi) int P(t, theta)^s cos(n theta) dtheta``.

Plain equispaced sampling needs ``O(e^{2t})`` points because ``P`` peaks with
width ``~e^{-2t}`` at ``theta = 0``.  Two changes of variable fix this:

* the boundary is moved by the disk automorphism taking ``tanh(t/2)`` to 0, so
  the integrand becomes ``P(a, u)^s P(-a, u)^{1-s}`` with ``a = tanh(t/2)``,
  two peaks of width ``~e^{-t}`` at ``u = 0`` and ``u = pi``;
* a periodic clustering map ``u = v - (beta/2) sin 2v`` concentrates the
  equispaced ``v`` nodes around both peaks.

Both maps are analytic and periodic, so the trapezoid rule in ``v`` keeps its
geometric convergence, and the points needed grow like ``e^{t}`` instead of
``e^{2t}``.  Node geometry is evaluated as offsets from the nearest peak to
avoid cancellation for large ``t``.
"""
from __future__ import annotations

import math

import numpy as np

from . import _backend
from .errors import ConvergenceError

START_POINTS = 32
MAX_POINTS = 2**16
DEFAULT_RTOL = 1e-12
GAP_SCALE = 1.0


def _x_minus_sin(x):
    """``x - sin x`` accurate near 0."""
    out = x - np.sin(x)
    small = np.abs(x) < 0.6
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        term = xs * x2 / 6.0
        acc = term.copy()
        for k in range(1, 12):
            term = -term * x2 / ((2 * k + 2) * (2 * k + 3))
            acc += term
        out[small] = acc
    return out


def node_geometry(t: float, idx: np.ndarray, n_total: int):
    """Quadrature data for nodes ``idx`` of the ``n_total``-point rule at radius ``t``.

    Returns ``(base, d, wz)``: the log-weight ``log P(-a,u) + log(du/dv)``,
    the slope ``log P(a,u) - log P(-a,u)`` multiplying ``s``, and the
    boundary point ``e^{i theta}`` in the original coordinates.
    """
    a = math.tanh(0.5 * t)
    w = 2.0 / (math.exp(t) + 1.0)  # 1 - a
    gap = min(1.0, GAP_SCALE * w ** (2.0 / 3.0))
    beta = 1.0 - gap
    j = np.asarray(idx)
    near0 = (4 * j <= n_total) | (4 * j >= 3 * n_total)
    off = np.where(near0, np.where(2 * j < n_total, j, j - n_total), j - n_total // 2)
    eta = 2.0 * np.pi * off / n_total
    delta = gap * eta + beta * 0.5 * _x_minus_sin(2.0 * eta)
    jac = gap + 2.0 * beta * np.sin(eta) ** 2
    sd = np.sin(0.5 * delta) ** 2
    cd = np.cos(0.5 * delta) ** 2
    s2 = np.where(near0, sd, cd)
    c2 = np.where(near0, cd, sd)
    lc = -2.0 * math.log(math.cosh(0.5 * t))
    lp = lc - np.log(w * w + 4.0 * a * s2)
    lm = lc - np.log(w * w + 4.0 * a * c2)
    e = np.exp(1j * delta)
    em1 = -2.0 * sd + 1j * np.sin(delta)  # e^{i delta} - 1
    wz = np.where(near0, (e + a) / (1.0 + a * e), (-w - em1) / (w - a * em1))
    return lm + np.log(jac), lp - lm, wz


def _mode_weights(wz, ns):
    return np.ascontiguousarray([np.real(wz ** abs(int(n))) for n in ns], dtype=float)


def circle_sums(
    t: float,
    s_rows,
    s_cols,
    ns,
    shift=None,
    rtol: float = DEFAULT_RTOL,
    atol: float = 0.0,
    backend=None,
    max_points: int = MAX_POINTS,
    weight_fn=None,
):
    """Averages of ``P^s cos(n theta)`` for ``s = s_rows[r] + s_cols[c]``.

    Returns ``(S, n_points)`` with ``S[r, c, k]`` the average for mode
    ``ns[k]``, multiplied by ``exp(-shift[r])``.  Points double from 32
    (re-using earlier nodes) until every entry changes by at most
    ``rtol * L1 * max|W| + atol`` where ``L1`` is the average modulus of
    ``P^s``.

    ``weight_fn(theta) -> (K, len(theta))`` real array replaces the mode
    weights ``cos(n theta)`` when given (``ns`` is then ignored).
    """
    tensor_sum = _backend.get_backend(backend)
    s_rows = np.ascontiguousarray(s_rows, dtype=complex).ravel()
    s_cols = np.ascontiguousarray(s_cols, dtype=complex).ravel()
    shift = np.zeros(s_rows.size) if shift is None else np.ascontiguousarray(shift, dtype=float)
    if weight_fn is None:
        ns = list(ns)

        def weights(wz):
            return _mode_weights(wz, ns)
    else:
        def weights(wz):
            return np.ascontiguousarray(weight_fn(np.angle(wz)), dtype=float)

    n = START_POINTS
    base, d, wz = node_geometry(t, np.arange(n), n)
    W = weights(wz)
    wmax = float(np.max(np.abs(W), initial=0.0))
    total, mtot = tensor_sum(base, d, W, s_rows, s_cols, shift)
    prev = total / n
    while 2 * n <= max_points:
        base, d, wz = node_geometry(t, 2 * np.arange(n) + 1, 2 * n)
        W = weights(wz)
        wmax = max(wmax, float(np.max(np.abs(W), initial=0.0)))
        part, mpart = tensor_sum(base, d, W, s_rows, s_cols, shift)
        total = total + part
        mtot = mtot + mpart
        n *= 2
        cur = total / n
        bound = rtol * wmax * (mtot / n)[:, :, None] + atol
        if np.all(np.abs(cur - prev) <= bound):
            return cur, n
        prev = cur
    raise ConvergenceError(
        f"circle average at t={t:g} not converged with {max_points} points"
    )
