import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horofourier.disk import DiskPoint
from horofourier.errors import DomainError, InvariantError, ParameterError, StripError, TruncationError
from horofourier.kernels import SpectralParameter, SumGrid, q_delta
from horofourier.quadrature import composite_gauss_legendre
from horofourier.schwartz import inverse_gaussian_profile
from horofourier.suite import mixed_test_function
from horofourier.transforms import (
    BoundaryFunction2D,
    PolarSamples,
    RadialProfile,
    SpectralProfile,
    apply_Ddelta_spectral,
    default_lambda_rule,
    default_t_rule,
    delta_project_spatial,
    delta_project_spectral,
    delta_spherical_forward,
    delta_spherical_inverse,
    forward_profile,
    hft_forward,
    hft_forward_2d,
    hft_inverse,
    inverse_profile,
    plancherel_check,
    profile_from_function,
    round_trip_error,
    spectral_from_function,
    standard_profile,
)

LAM = np.linspace(-6, 6, 13)


def mp_forward_sech(a, lam):
    """int sech^{2a} t phi_{-lam}(t) 2 sinh 2t dt with phi from mpmath's 2F1."""
    with mpmath.workdps(25):
        s = (1 - 1j * mpmath.mpf(lam)) / 2

        def g(t):
            x = mpmath.tanh(t) ** 2
            phi = mpmath.sech(t) ** (2 * s) * mpmath.hyp2f1(s, s, 1, x)
            return mpmath.sech(t) ** (2 * a) * phi * 2 * mpmath.sinh(2 * t)

        return complex(mpmath.quad(g, [0, 0.5, 1, 2, 4, 8, 16]))


@pytest.mark.parametrize("lam", [0.0, 0.7, 2.5])
def test_forward_against_mpmath(lam):
    f = standard_profile(0, 3)
    ref = mp_forward_sech(3, lam)
    assert abs(delta_spherical_forward(f, lam) - ref) < 1e-11 * abs(ref)


def test_forward_closed_form_gaussian_source():
    phi = inverse_gaussian_profile(0)
    lam = np.linspace(-5, 5, 11)
    assert np.max(np.abs(delta_spherical_forward(phi, lam) - np.exp(-lam**2))) < 1e-7


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("a", [2, 3])
def test_round_trip_family(n, a):
    assert round_trip_error(standard_profile(n, a)) < 1e-6


@pytest.mark.parametrize("n", [0, 2])
def test_plancherel_family(n):
    lhs, rhs, d = plancherel_check(standard_profile(n, 2))
    assert lhs > 0 and d < 1e-6


def test_plancherel_zero_and_scaling():
    f = standard_profile(1, 3)
    z = RadialProfile(0, f.rule, np.zeros(len(f.rule)), 4.0)
    assert plancherel_check(z) == (0.0, 0.0, 0.0)
    l1, r1, d1 = plancherel_check(f)
    l2, r2, d2 = plancherel_check(f.scaled(3.0))
    assert l2 == pytest.approx(9 * l1, rel=1e-13) and r2 == pytest.approx(9 * r1, rel=1e-13)
    assert abs(d1 - d2) < 1e-12


@settings(max_examples=10)
@given(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_linearity(alpha, beta):
    f, h = standard_profile(2, 2), standard_profile(2, 3)
    comb = RadialProfile(2, f.rule, alpha * f.values + beta * h.values, 4.0)
    lhs = delta_spherical_forward(comb, LAM)
    rhs = alpha * delta_spherical_forward(f, LAM) + beta * delta_spherical_forward(h, LAM)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs)))


@pytest.mark.parametrize("n", [0, 1, 3])
def test_evenness_of_quotient(n):
    f = standard_profile(n, 3)
    lam = np.linspace(0.3, 6, 12) + 0.5j
    a = delta_spherical_forward(f, lam) / q_delta(n, lam)
    b = delta_spherical_forward(f, -lam) / q_delta(n, -lam)
    assert np.max(np.abs(a - b)) < 1e-9


def test_forward_input_forms():
    f = standard_profile(1, 3)
    v = delta_spherical_forward(f, 1.0 + 0.2j)
    assert np.ndim(v) == 0
    assert delta_spherical_forward(f, SpectralParameter(1.0 + 0.2j, 1.0)) == v
    grid = SumGrid([0.0, 1.0], [0.0, 0.2j])
    G = delta_spherical_forward(f, grid)
    assert G.shape == (2, 2) and abs(G[1, 1] - v) < 1e-14
    rule = composite_gauss_legendre(8, -2, 2, 2)
    assert delta_spherical_forward(f, rule).shape == (16,)


def test_strip_guards():
    f = standard_profile(0, 2)  # kappa = 4
    with pytest.raises(StripError):
        delta_spherical_forward(f, 1 + 3j)
    with pytest.raises(StripError):
        delta_spherical_forward(f, 0.5j, p=2)
    with pytest.raises(StripError):
        delta_spherical_forward(f, SpectralParameter(0.3j, 0.1))
    assert f.strip_bound() == pytest.approx(3 - 0.05)
    assert f.strip_bound(1.0) == 1.0


def test_tail_guard():
    slow = profile_from_function(0, lambda t: np.cosh(t) ** -2.2, 4.4)
    short = RadialProfile(0, composite_gauss_legendre(32, 0, 3, 2), np.cosh(composite_gauss_legendre(32, 0, 3, 2).nodes) ** -2.2, 4.4)
    delta_spherical_forward(slow, 0.0)
    with pytest.raises(TruncationError):
        delta_spherical_forward(short, 0.0)


def test_profile_invariants():
    rule = default_t_rule()
    with pytest.raises(InvariantError):
        RadialProfile(0, rule, np.ones(3), 4.0)
    with pytest.raises(InvariantError):
        RadialProfile(0, rule, np.full(len(rule), np.nan), 4.0)
    with pytest.raises(InvariantError):
        RadialProfile(0, rule, np.ones(len(rule)), 0.0)
    with pytest.raises(InvariantError):
        RadialProfile(2, rule, np.cosh(rule.nodes) ** -4, 4.0)
    with pytest.raises(DomainError):
        RadialProfile(0, rule, np.ones(len(rule)), 1.0)(0.5)
    with pytest.raises(ParameterError):
        standard_profile(0, 2).require_p(3.0)
    with pytest.raises(InvariantError):
        standard_profile(0, 0.5).require_p(1.0)
    lr = default_lambda_rule()
    with pytest.raises(InvariantError):
        SpectralProfile(0, composite_gauss_legendre(8, 0, 2, 1), np.ones(8))
    with pytest.raises(InvariantError):
        SpectralProfile(0, lr, np.ones(len(lr)), 0.1, np.array([0.5j]), np.array([1.0]))
    with pytest.raises(DomainError):
        SpectralProfile(0, lr, np.ones(len(lr)))(0.0)


def test_inverse_edge_guard():
    h = spectral_from_function(0, lambda lam: 1.0 / (1.0 + np.asarray(lam) ** 2))
    with pytest.raises(TruncationError):
        delta_spherical_inverse(h, [0.5])


def test_inverse_of_gaussian_mpmath():
    h = spectral_from_function(0, lambda lam: np.exp(-np.asarray(lam) ** 2))
    t = 0.8
    with mpmath.workdps(20):
        def integrand(lam):
            s = (1 + 1j * lam) / 2
            x = mpmath.tanh(t) ** 2
            phi = mpmath.sech(t) ** (2 * s) * mpmath.hyp2f1(s, s, 1, x)
            nu = abs(lam) / 4 * mpmath.tanh(mpmath.pi * abs(lam) / 2)
            return mpmath.re(phi) * mpmath.e ** (-lam * lam) * nu

        ref = float(mpmath.quad(integrand, [-8, 0, 8])) / 2
    assert abs(delta_spherical_inverse(h, t) - ref) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
def test_apply_Ddelta_spectral(n):
    phi = inverse_gaussian_profile(0)
    f = apply_Ddelta_spectral(phi, n)
    assert f.n == n
    lam = np.linspace(-5, 5, 11)
    assert np.max(np.abs(delta_spherical_forward(f, lam) - q_delta(n, lam) * np.exp(-lam**2))) < 1e-7
    ratio = np.abs(f.values[:4]) / f.t[:4] ** n
    assert np.ptp(ratio) < 0.01 * ratio[0]


def test_apply_Ddelta_identity_and_guard():
    phi = standard_profile(0, 3)
    assert apply_Ddelta_spectral(phi, 0) is phi
    with pytest.raises(InvariantError):
        apply_Ddelta_spectral(standard_profile(1, 3), 1)
    f = apply_Ddelta_spectral(phi, 1)
    assert np.max(np.abs(delta_spherical_forward(f, LAM) - q_delta(1, LAM) * delta_spherical_forward(phi, LAM))) < 1e-7


def test_projections_trivial():
    lr = composite_gauss_legendre(8, -2, 2, 2)
    th = 2 * np.pi * np.arange(8) / 8
    F = BoundaryFunction2D(lr, np.ones((16, 8)))
    assert np.max(np.abs(delta_project_spectral(F, 2).values)) < 1e-15
    h = np.exp(-lr.nodes**2)
    G = BoundaryFunction2D(lr, h[:, None] * np.exp(3j * th)[None, :])
    assert np.max(np.abs(delta_project_spectral(G, 3).values - h)) < 1e-15
    with pytest.raises(ParameterError):
        delta_project_spectral(G, 4)


def test_spatial_projection_and_modes():
    f = PolarSamples.from_function(lambda t, psi: np.cosh(t) ** -4 * (1 + np.tanh(t) ** 2 * np.exp(2j * psi)), n_psi=8)
    g2 = delta_project_spatial(f, 2)
    assert np.max(np.abs(g2.values - np.tanh(f.rule.nodes) ** 2 * np.cosh(f.rule.nodes) ** -4)) < 1e-15
    assert set(f.modes()) == set(range(-3, 4))
    with pytest.raises(InvariantError):
        PolarSamples(default_t_rule(), np.ones(4))


def test_hft_of_radial_is_spherical_transform():
    lam = np.array([0.0, 1.0, 2.5])
    f = standard_profile(0, 3)
    F = hft_forward(lambda t, psi: np.cosh(t) ** -6 + 0 * psi, lam, [0.0, 1.0])
    ref = delta_spherical_forward(f, lam)
    assert np.max(np.abs(F - ref[:, None])) < 1e-10


def test_hft_commuting_square_and_inverse():
    f = mixed_test_function
    lr = composite_gauss_legendre(32, -16, 16, 4)
    F = hft_forward_2d(f, lr, n_theta=8)
    P = PolarSamples.from_function(f, n_psi=8)
    for n in (-1, 0, 1, 2):
        a = delta_project_spectral(F, n).values
        b = delta_spherical_forward(delta_project_spatial(P, n, kappa=8.0), lr)
        assert np.max(np.abs(a - b)) < 1e-9
    z = [DiskPoint(0.3, 1.0), DiskPoint(1.1, 4.0)]
    v = hft_inverse(F, z, edge_tol=1e-6)
    ref = np.array([f(p.t, p.psi) for p in z])
    assert np.max(np.abs(v - ref)) < 1e-5


def test_hft_strip_guard():
    with pytest.raises(StripError):
        hft_forward(lambda t, psi: np.cosh(t) ** -4 + 0 * psi, [5j], [0.0])


def test_forward_inverse_profiles_metadata():
    f = standard_profile(2, 3)
    h = forward_profile(f)
    assert h.n == 2 and h.epsilon == f.strip_bound()
    assert abs(h(1.0 + 0.5j) - delta_spherical_forward(f, 1.0 + 0.5j)) == 0
    g = inverse_profile(h, kappa=6.0)
    assert g.source is h
    assert abs(g(0.7) - f(0.7)) < 1e-8
