import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from horofourier.errors import DomainError, EvaluationError, ParameterError
from horofourier.kernels import eisenstein, phi_lambda, q_delta
from horofourier.quadrature import composite_gauss_legendre
from horofourier.schwartz import (
    SchwartzConfig,
    analyticity_check,
    bump_log_transform,
    bump_profile,
    cauchy_derivative,
    central_derivatives,
    contour_radius,
    dilate,
    lemma42_bound_check,
    nu_seminorm,
    pw_type_estimate,
    radial_laplacian,
    spectral_decay_check,
    strip_table,
    tau_seminorm,
)
from horofourier.transforms import (
    RadialProfile,
    forward_profile,
    profile_from_function,
    spectral_from_function,
    standard_profile,
)

TS = np.linspace(0.3, 3.0, 10)


def test_config():
    cfg = SchwartzConfig(1.0)
    assert cfg.epsilon == 1.0
    assert cfg.strip_grid.shape == (9, 40)
    assert SchwartzConfig(2.0).strip_im.tolist() == [0.0]
    assert cfg.refined().n_t == 2 * cfg.n_t
    with pytest.raises(ParameterError):
        SchwartzConfig(0.0)
    with pytest.raises(ParameterError):
        SchwartzConfig(1.0, n_re=0)


def test_contour_radius():
    assert contour_radius(0j, 1.0) == pytest.approx(0.3)
    assert contour_radius(0.9j, 1.0) == pytest.approx(0.04)


def test_central_derivatives_exact_on_quartic():
    g = lambda t: t**4 - 2 * t**2  # noqa: E731
    g0, d1, d2 = central_derivatives(g, 1.3, 1e-2)
    assert abs(d1 - (4 * 1.3**3 - 4 * 1.3)) < 1e-10
    assert abs(d2 - (12 * 1.3**2 - 4)) < 1e-9


def test_laplacian_constant():
    f = profile_from_function(0, lambda t: np.ones_like(np.asarray(t, dtype=float)), 1.0)
    assert np.max(np.abs(radial_laplacian(f, TS, method="fd"))) < 1e-7


def test_laplacian_eigenfunction():
    g = lambda t: np.real(phi_lambda(1.0, np.asarray(t, dtype=float)))  # noqa: E731
    f = profile_from_function(0, g, 1.0)
    v = radial_laplacian(f, TS, method="fd")
    assert np.max(np.abs(v + 2 * g(TS))) < 1e-6


def test_laplacian_type_one():
    g = lambda t: np.real(eisenstein(0.0, 1, np.asarray(t, dtype=float)))  # noqa: E731
    f = profile_from_function(1, g, 1.0)
    v = radial_laplacian(f, TS, method="fd")
    assert np.max(np.abs(v + g(TS))) < 1e-6


def test_laplacian_cauchy_matches_fd():
    f = standard_profile(2, 3)
    a = radial_laplacian(f, TS, method="cauchy")
    b = radial_laplacian(f, TS, method="fd")
    assert np.max(np.abs(a - b)) < 1e-6


def test_laplacian_spectral_matches_cauchy():
    h = forward_profile(standard_profile(1, 3))
    from horofourier.transforms import inverse_profile

    g = inverse_profile(h, kappa=6.0)
    a = radial_laplacian(g, TS, method="spectral")
    b = radial_laplacian(standard_profile(1, 3), TS, method="cauchy")
    assert np.max(np.abs(a - b)) < 1e-6
    with pytest.raises(DomainError):
        radial_laplacian(standard_profile(1, 3), TS, method="spectral")


def test_nu_zero():
    rule = standard_profile(0, 2).rule
    z = RadialProfile(0, rule, np.zeros(len(rule)), 4.0)
    assert nu_seminorm(z, 0, 2, 2.0).value == 0.0


def test_nu_refinement_stable():
    rep = nu_seminorm(standard_profile(0, 2), 0, 2, 2.0)
    assert math.isfinite(rep.value) and not rep.divergent
    assert rep.refinement_delta < 0.01
    assert 0 < rep.arg_max < 12


def test_nu_divergent_for_slow_decay():
    f = profile_from_function(0, lambda t: np.cosh(np.asarray(t)) ** -0.5, 0.5)
    rep = nu_seminorm(f, 0, 0, 2.0)
    assert rep.divergent and rep.value == math.inf


def test_tau_zero_and_monotone():
    zero = lambda lam: np.zeros(np.shape(lam), complex)  # noqa: E731
    cfg = SchwartzConfig(1.0, n_re=20)
    assert tau_seminorm(zero, 1, 1, cfg).value == 0.0
    h = forward_profile(standard_profile(1, 2))
    tab = strip_table(h, cfg)
    vals = [tau_seminorm(h, r, 0, cfg, tab).value for r in range(4)]
    assert all(np.isfinite(vals))
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert abs(h.values[0]) < 1e-12 and abs(h.values[-1]) < 1e-12


def test_cauchy_derivative_examples():
    assert abs(cauchy_derivative(lambda z: z**2, 0.0, 2, 0.3) - 2) < 1e-10
    assert abs(cauchy_derivative(lambda z: np.exp(-z**2), 0.0, 1, 0.3)) < 1e-10
    f = standard_profile(0, 2)
    h = forward_profile(f, p=1.0)
    v = cauchy_derivative(h, 0.3j, 0, 0.2, strip_bound=1.0)
    assert abs(v - h(0.3j)) < 1e-8 * abs(h(0.3j))
    with pytest.raises(DomainError):
        cauchy_derivative(h, 0.9j, 0, 0.2, strip_bound=1.0)
    with pytest.raises(ParameterError):
        cauchy_derivative(h, 0.0, -1, 0.2)
    with pytest.raises(DomainError):
        cauchy_derivative(h, 0.0, 0, 0.0)


@given(st.integers(0, 5), st.floats(-2, 2))
def test_cauchy_derivative_polynomial(k, x0):
    d = cauchy_derivative(lambda z: z**5, x0, k, 0.5)
    ref = math.factorial(5) / math.factorial(5 - k) * x0 ** (5 - k)
    assert abs(d - ref) < 1e-10 * max(1.0, abs(ref))


def test_analyticity_pass_and_fail():
    cfg = SchwartzConfig(1.0)
    h = forward_profile(standard_profile(2, 3), p=1.0)
    assert analyticity_check(h, cfg).passed
    entire = lambda lam: q_delta(2, lam) * np.exp(-np.asarray(lam) ** 2)  # noqa: E731
    assert analyticity_check(entire, SchwartzConfig(0.5)).passed
    rep = analyticity_check(lambda lam: np.abs(np.asarray(lam)), cfg)
    assert not rep.passed
    failed = [c for c in rep.checks if not c.passed]
    assert any("+0.00" in c.check_id for c in failed)


def test_spectral_profile_needs_evaluator():
    from horofourier.transforms import SpectralProfile, default_lambda_rule

    lr = default_lambda_rule()
    with pytest.raises(DomainError):
        strip_table(SpectralProfile(0, lr, np.zeros(len(lr))), SchwartzConfig(1.0))


def test_pw_examples():
    est = pw_type_estimate(lambda lam: np.cos(lam), sigma_max=40)
    assert 0.95 <= est.R_hat <= 1.05 and est.outcome == "finite"
    est = pw_type_estimate(lambda lam: 1.0 / (1.0 + np.asarray(lam) ** 2), sigma_max=40)
    assert est.R_hat == 0.0 and est.outcome == "zero"
    est = pw_type_estimate(log_abs=lambda s: np.asarray(s) ** 2, sigma_max=40)
    assert est.R_hat == math.inf and est.outcome == "super-exponential"
    with pytest.raises(ParameterError):
        pw_type_estimate()
    with pytest.raises(EvaluationError):
        pw_type_estimate(lambda lam: np.zeros(np.shape(lam)))


def test_pw_bump_support_radius():
    f = bump_profile(1.0)
    est = pw_type_estimate(log_abs=lambda s: bump_log_transform(f, s), sigma_max=1000)
    assert abs(est.R_hat - 1.0) < 0.05


def test_bump_profile_support():
    f = bump_profile(2.0, n=1)
    assert np.all(f(np.array([2.0, 2.5, 3.0])) == 0)
    assert f(1.0) > 0
    assert f.rule.nodes.max() < 2.0


def test_spectral_decay_interior_max():
    f = bump_profile(1.0, c=4.0, order=64)
    rule = composite_gauss_legendre(32, 0.0, 100.0, 10)
    val, at, interior = spectral_decay_check(f, rule, N=2)
    assert interior and math.isfinite(val) and 0 < at < 100


def test_dilate():
    f = standard_profile(0, 2)
    g = dilate(f, 2.0)
    assert g.kappa == 2 * f.kappa
    assert abs(g(0.5) - f(1.0)) < 1e-15
    with pytest.raises(DomainError):
        dilate(RadialProfile(0, f.rule, f.values, 4.0), 2.0)


def test_lemma42_zero_and_inadmissible():
    rule = standard_profile(0, 2).rule
    z = profile_from_function(0, lambda t: np.zeros(np.shape(t)), 8.0, rule)
    rep = lemma42_bound_check(z, SchwartzConfig(2.0))
    assert rep.passed and rep.extra["c_fit"] == 0.0
    slow = profile_from_function(0, lambda t: np.cosh(np.asarray(t)) ** -0.5, 0.5, rule)
    rep = lemma42_bound_check(slow, SchwartzConfig(1.0))
    assert not rep.passed


def test_spectral_from_function_evaluator():
    h = spectral_from_function(0, lambda lam: np.exp(-np.asarray(lam) ** 2), epsilon=np.inf)
    assert h(1j) == pytest.approx(math.e)
