"""Transform kernels on the disk.

``eisenstein(lam, n, t)`` is the circle average of ``P(z_t, e^{i theta})^s e^{i n theta}``
with ``s = (1 + i lam)/2`` and ``z_t = tanh(t)`` on the positive axis; ``n = 0``
gives the elementary spherical function ``phi_lambda``.  The adaptive circle
quadrature in :mod:`horofourier._engine` is the authoritative evaluator; the
hypergeometric closed forms here are cross-checks valid for ``tanh(t)^2 <= 0.9``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _engine
from .errors import DomainError, ParameterError, StripError
from .specfun import HypergeometricArgs, gamma_complex, hyp2f1, pochhammer

STRIP_SLACK = 1e-12


@dataclass(frozen=True)
class SpectralParameter:
    """A point of the closed strip ``|Im lambda| <= strip_bound``."""

    lam: complex
    strip_bound: float = math.inf

    def __post_init__(self):
        lam = complex(self.lam)
        if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
            raise ParameterError(f"spectral parameter must be finite, got {self.lam}")
        if self.strip_bound < 0:
            raise ParameterError("strip_bound must be >= 0")
        if abs(lam.imag) > self.strip_bound + STRIP_SLACK:
            raise StripError(f"|Im lambda| = {abs(lam.imag):g} exceeds strip bound {self.strip_bound:g}")
        object.__setattr__(self, "lam", lam)

    def __complex__(self):
        return self.lam


@dataclass(frozen=True)
class KTypeIndex:
    """The character ``e^{i n theta}`` of the rotation group."""

    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ParameterError(f"K-type index must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    def __int__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class SumGrid:
    """The 2-D parameter grid ``lam[r, c] = rows[r] + cols[c]``.

    Kernel tables on such grids need only ``R + C`` exponentials per
    quadrature node instead of ``R * C``.
    """

    rows: np.ndarray
    cols: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rows", np.atleast_1d(np.asarray(self.rows, dtype=complex)).ravel())
        object.__setattr__(self, "cols", np.atleast_1d(np.asarray(self.cols, dtype=complex)).ravel())

    @property
    def values(self):
        return self.rows[:, None] + self.cols[None, :]

    @property
    def shape(self):
        return (self.rows.size, self.cols.size)

    def max_abs_imag(self):
        return float(np.max(np.abs(self.values.imag)))


def _lam(x):
    return x.lam if isinstance(x, SpectralParameter) else x


def _n(x):
    return x.n if isinstance(x, KTypeIndex) else int(x)


# ---------------------------------------------------------------------------
# tabulation


@lru_cache(maxsize=16)
def _cached_tensor(rows_b, cols_b, ns, ts_b, scaled, rtol):
    rows = np.frombuffer(rows_b, dtype=complex)
    cols = np.frombuffer(cols_b, dtype=complex)
    ts = np.frombuffer(ts_b, dtype=float)
    out = np.empty((ts.size, rows.size, cols.size, len(ns)), dtype=complex)
    s_rows = 0.5 * (1.0 + 1j * rows)
    s_cols = 0.5j * cols
    for i, t in enumerate(ts):
        shift = np.abs(rows.imag) * t if scaled else None
        out[i], _ = _engine.circle_sums(float(t), s_rows, s_cols, ns, shift=shift, rtol=rtol)
    out.setflags(write=False)
    return out


def eisenstein_tensor(lam_rows, lam_cols, ns, ts, scaled=False, rtol=_engine.DEFAULT_RTOL):
    """Kernel table on a sum grid ``lambda = lam_rows[r] + lam_cols[c]``.

    Returns a read-only array ``E[i, r, c, k] = Phi_{lambda, ns[k]}(ts[i])``.
    With ``scaled=True`` each row is multiplied by ``exp(-|Im lam_rows[r]| t)``,
    which keeps values of order one far off the real axis.  Results are cached.
    """
    rows = np.ascontiguousarray(np.atleast_1d(lam_rows), dtype=complex)
    cols = np.ascontiguousarray(np.atleast_1d(lam_cols), dtype=complex)
    ts = np.ascontiguousarray(np.atleast_1d(ts), dtype=float)
    if np.any(ts < 0) or not np.all(np.isfinite(ts)):
        raise DomainError("t must be finite and >= 0")
    ns = tuple(abs(_n(n)) for n in np.atleast_1d(ns))
    return _cached_tensor(rows.tobytes(), cols.tobytes(), ns, ts.tobytes(), bool(scaled), float(rtol))


def eisenstein_table(lams, ns, ts, scaled=False):
    """Kernel values ``E[i, j, k] = Phi_{lams[j], ns[k]}(ts[i])``.

    ``lams`` may be a composite quadrature rule, whose panel structure is used
    to share exponentials, or any 1-D array of complex parameters.
    """
    if getattr(lams, "is_tensor", False):
        E = eisenstein_tensor(lams.centers, lams.local, ns, ts, scaled)
        return E.reshape(E.shape[0], -1, E.shape[3])
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    return eisenstein_tensor(lams, [0.0], ns, ts, scaled)[:, :, 0, :]


def _evaluate(lam, n, t, scaled=False):
    lam_a = np.asarray(_lam(lam), dtype=complex)
    t_a = np.asarray(t, dtype=float)
    lam_b, t_b = np.broadcast_arrays(lam_a, t_a)
    if np.any(t_b < 0):
        raise DomainError("t must be >= 0")
    ul, li = np.unique(lam_b.ravel(), return_inverse=True)
    ut, ti = np.unique(t_b.ravel(), return_inverse=True)
    E = eisenstein_table(ul, [_n(n)], ut, scaled)[:, :, 0]
    out = E[ti, li].reshape(lam_b.shape)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# kernels


def eisenstein(lam, n, t):
    """``Phi_{lambda,n}(t)``: average of ``P^{(1+i lam)/2} e^{i n theta}`` at radius ``t``.

    Broadcasts over ``lam`` and ``t``.  The full function on the disk is
    ``e^{i n psi} Phi_{lambda,n}(t)``.  Even in ``n``.
    """
    return _evaluate(lam, n, t)


def eisenstein_scaled(lam, n, t):
    """``exp(-|Im lam| t) Phi_{lambda,n}(t)``, evaluated without overflow."""
    return _evaluate(lam, n, t, scaled=True)


def eisenstein_adjoint(lam, n, t):
    """Adjoint kernel: average of ``P^{(1-i lam)/2} e^{-i n theta}``, equal to ``Phi_{-lambda,n}``."""
    return _evaluate(-np.asarray(_lam(lam), dtype=complex), n, t)


def phi_lambda(lam, t):
    """Elementary spherical function ``phi_lambda(t)``."""
    return eisenstein(lam, 0, t)


def phi_zero(t):
    """Ground spherical function ``phi_0(t)``; positive and at most 1."""
    return np.real(eisenstein(0.0, 0, t))


def eisenstein_closed_form(lam, n, t):
    """Hypergeometric form of ``Phi_{lambda,n}(t)``, valid for ``tanh(t)^2 <= 0.9``.

    ``(s)_m / m! tanh^m(t) sech^{2s}(t) 2F1(s, s+m; m+1; tanh^2 t)`` with
    ``s = (1 + i lam)/2`` and ``m = |n|``.
    """
    lam = complex(_lam(lam))
    m = abs(_n(n))
    t = float(t)
    if t < 0:
        raise DomainError("t must be >= 0")
    s = 0.5 * (1.0 + 1j * lam)
    x = math.tanh(t) ** 2
    if m and t == 0.0:
        return 0j
    pre = pochhammer(s, m) / math.factorial(m) * math.tanh(t) ** m
    return complex(pre * np.exp(-2.0 * s * math.log(math.cosh(t))) * hyp2f1(HypergeometricArgs(s, s + m, m + 1, x)))


def phi_closed_form(lam, t):
    return eisenstein_closed_form(lam, 0, t)


# ---------------------------------------------------------------------------
# spectral side


def q_poly(n, lam):
    """``Q_n(lambda) = ((1 + i lam)/2)_{|n|}`` (rising factorial), vectorized in ``lam``.

    ``Phi_{lambda,n} / Q_n(lambda)`` is even in ``lambda``.
    """
    m = abs(_n(n))
    s = 0.5 * (1.0 + 1j * np.asarray(_lam(lam), dtype=complex))
    out = np.ones_like(s)
    for j in range(m):
        out = out * (s + j)
    return out[()] if out.ndim == 0 else out


def q_delta(n, lam):
    """``Q_n(-lambda) = ((1 - i lam)/2)_{|n|}``: the factor of the forward transform.

    The transform uses the kernel ``Phi_{-lambda,n}``, so ``f~ / q_delta`` is even.
    """
    return q_poly(n, -np.asarray(_lam(lam), dtype=complex))


def q_zeros(n):
    """Zeros of ``q_poly(n, .)``: ``lambda = i (1 + 2 j)``, ``0 <= j < |n|``."""
    return np.array([1j * (1 + 2 * j) for j in range(abs(_n(n)))], dtype=complex)


def c_function(lam):
    """Harish-Chandra ``c(lambda) = Gamma(i lam/2) / (sqrt(pi) Gamma((1 + i lam)/2))``."""
    lam = complex(_lam(lam))
    return gamma_complex(0.5j * lam) / (math.sqrt(math.pi) * gamma_complex(0.5 * (1.0 + 1j * lam)))


def plancherel_density(lam):
    """``nu_P(lambda) = (|lam|/4) tanh(pi |lam| / 2)``, equal to ``|c(lambda)|^{-2} / (2 pi)``.

    Vectorized over real ``lam``.
    """
    lam = np.asarray(lam)
    if np.iscomplexobj(lam):
        if np.any(lam.imag != 0):
            raise DomainError("plancherel_density takes real lambda")
        lam = lam.real
    a = np.abs(lam.astype(float))
    out = 0.25 * a * np.tanh(0.5 * np.pi * a)
    return out[()] if out.ndim == 0 else out


def plancherel_density_from_c(lam):
    """``|c(lambda)|^{-2} / (2 pi)`` through :func:`gamma_complex` (reference path)."""
    lam = float(lam)
    if lam == 0.0:
        return 0.0
    return 1.0 / (2.0 * math.pi * abs(c_function(lam)) ** 2)
