"""Complex Gamma, Pochhammer symbols and the Gauss series 2F1 on [0, 0.9]."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

# Lanczos coefficients, g = 7, n = 9 (Godfrey's set)
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

HYP2F1_MAX_X = 0.9
HYP2F1_MAX_TERMS = 10**6


def _is_pole(s: complex) -> bool:
    return s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real)


def _lanczos_log_gamma(s: complex) -> complex:
    """log Gamma(s) for Re s >= 1/2 (principal branch not guaranteed)."""
    z = s - 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.log(_SQRT_2PI) + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma_complex(s) -> complex:
    """Gamma function of a complex argument.

    Lanczos approximation for ``Re s >= 1/2`` and the reflection formula
    ``Gamma(s) Gamma(1-s) = pi / sin(pi s)`` elsewhere.  Raises
    :class:`DomainError` at the poles ``0, -1, -2, ...``.
    """
    s = complex(s)
    if _is_pole(s):
        raise DomainError(f"Gamma has a pole at {s.real:g}")
    if s.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * s) * gamma_complex(1.0 - s))
    return cmath.exp(_lanczos_log_gamma(s))


def pochhammer(s, k: int) -> complex:
    """Rising factorial ``s (s+1) ... (s+k-1)``; ``k = 0`` gives 1."""
    if k < 0:
        raise DomainError("pochhammer needs k >= 0")
    out = complex(1.0)
    s = complex(s)
    for j in range(k):
        out *= s + j
    return out


@dataclass(frozen=True)
class HypergeometricArgs:
    a: complex
    b: complex
    c: complex
    x: float

    def __post_init__(self):
        c = complex(self.c)
        if _is_pole(c):
            raise DomainError("2F1 parameter c must not be a non-positive integer")
        if not 0.0 <= self.x < 1.0:
            raise DomainError(f"2F1 argument must lie in [0, 1), got {self.x}")


def hyp2f1(args: HypergeometricArgs) -> complex:
    """Gauss hypergeometric series ``2F1(a, b; c; x)`` summed directly.

    Validated only for ``0 <= x <= 0.9``; larger arguments raise
    :class:`DomainError` (use quadrature there).  Summation stops after three
    consecutive terms below ``1e-16`` times the partial sum.
    """
    a, b, c, x = complex(args.a), complex(args.b), complex(args.c), float(args.x)
    if x > HYP2F1_MAX_X:
        raise DomainError(f"2F1 series path validated only for x <= {HYP2F1_MAX_X}, got {x}")
    total = complex(1.0)
    term = complex(1.0)
    small = 0
    for k in range(HYP2F1_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        if term == 0:
            return total
        if abs(term) < 1e-16 * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise ConvergenceError("2F1 series did not converge")
