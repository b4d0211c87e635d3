"""Delta-spherical and Helgason Fourier transforms on the hyperbolic disk.

The disk has curvature -4 (so rho = 1) and measure
``dx = 2 sinh(2t) dt dpsi / 2pi``.  Subpackages:

``quadrature``  Gauss-Legendre, circle averages, half-line integration
``specfun``     complex gamma, Pochhammer symbols, Gauss 2F1
``disk``        points, Poisson kernel, Busemann function, charts
``kernels``     Eisenstein integrals, Q polynomials, Plancherel density
``transforms``  forward/inverse transforms, Helgason transform, projections
``schwartz``    seminorms, strip analyticity, Paley-Wiener type
``suite``       the acceptance checks; ``cli`` the command line
"""
from ._backend import NAME as BACKEND
from .disk import BoundaryPoint, DiskPoint, busemann, integrate_X, poisson_kernel
from .errors import (
    ConvergenceError,
    DomainError,
    EvaluationError,
    HoroFourierError,
    InvariantError,
    ParameterError,
    StripError,
    TruncationError,
)
from .kernels import (
    KTypeIndex,
    SpectralParameter,
    eisenstein,
    eisenstein_adjoint,
    phi_lambda,
    phi_zero,
    plancherel_density,
    q_delta,
    q_poly,
)
from .transforms import (
    RadialProfile,
    SpectralProfile,
    delta_spherical_forward,
    delta_spherical_inverse,
    forward_profile,
    hft_forward,
    hft_inverse,
    inverse_profile,
    standard_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundaryPoint",
    "ConvergenceError",
    "DiskPoint",
    "DomainError",
    "EvaluationError",
    "HoroFourierError",
    "InvariantError",
    "KTypeIndex",
    "ParameterError",
    "RadialProfile",
    "SpectralParameter",
    "SpectralProfile",
    "StripError",
    "TruncationError",
    "busemann",
    "delta_spherical_forward",
    "delta_spherical_inverse",
    "eisenstein",
    "eisenstein_adjoint",
    "forward_profile",
    "hft_forward",
    "hft_inverse",
    "integrate_X",
    "inverse_profile",
    "phi_lambda",
    "phi_zero",
    "plancherel_density",
    "poisson_kernel",
    "q_delta",
    "q_poly",
    "standard_profile",
]
