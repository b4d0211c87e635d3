import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from horofourier.disk import (
    MEASURE,
    BoundaryPoint,
    DiskPoint,
    busemann,
    distance_from_origin,
    horocyclic_to_polar,
    integrate_X,
    poisson_kernel,
)
from horofourier.errors import DomainError, ParameterError, TruncationError
from horofourier.quadrature import TailPolicy, circle_average
from horofourier.suite import random_test_functions

radii = st.floats(0, 8)
angles = st.floats(-10, 10)


def test_points_canonical():
    assert DiskPoint(0.0, 2.0).psi == 0.0
    assert DiskPoint(1.0, -1.0).psi == pytest.approx(2 * math.pi - 1)
    assert BoundaryPoint(7.0).theta == pytest.approx(7 - 2 * math.pi)
    with pytest.raises(DomainError):
        DiskPoint(-1.0)
    z = DiskPoint.from_complex(0.3 - 0.4j)
    assert abs(z.z - (0.3 - 0.4j)) < 1e-15


def test_poisson_examples():
    assert poisson_kernel(DiskPoint(0.0), BoundaryPoint(1.3)) == 1.0
    assert poisson_kernel(DiskPoint(math.atanh(0.5)), BoundaryPoint(0.0)) == pytest.approx(3.0, rel=1e-14)


@given(st.floats(0, 2), angles)
def test_poisson_mean_value(t, psi):
    z = DiskPoint(t, psi)
    v = circle_average(lambda th: np.array([poisson_kernel(z, BoundaryPoint(x)) for x in th]), 4096)
    assert abs(v - 1) < 1e-12


@given(radii, angles, angles)
def test_poisson_positive_and_closed_form(t, psi, theta):
    z, b = DiskPoint(t, psi), BoundaryPoint(theta)
    p = poisson_kernel(z, b)
    assert p > 0
    with mpmath.workdps(30):
        zz = mpmath.tanh(t) * mpmath.expj(psi)
        ref = (1 - abs(zz) ** 2) / abs(zz - mpmath.expj(theta)) ** 2
    assert abs(p - float(ref)) <= 1e-12 * float(ref)


@given(radii, angles, angles)
def test_busemann_bound(t, psi, theta):
    assert abs(busemann(DiskPoint(t, psi), BoundaryPoint(theta))) <= t + 1e-13


@given(st.floats(0.01, 15), angles)
def test_busemann_equality_cases(t, theta):
    assert busemann(DiskPoint(t, theta), BoundaryPoint(theta)) == pytest.approx(t, rel=1e-13)
    assert busemann(DiskPoint(t, theta + math.pi), BoundaryPoint(theta)) == pytest.approx(-t, rel=1e-13)
    assert busemann(DiskPoint(0.0), BoundaryPoint(theta)) == 0.0


def test_distance_examples():
    assert distance_from_origin(0.0) == 0.0
    assert distance_from_origin(0.5) == pytest.approx(0.5 * math.log(3), rel=1e-15)
    assert abs(distance_from_origin(math.tanh(2.0)) - 2.0) < 1e-14
    for r in (1.0, 1.5, -0.1):
        with pytest.raises(DomainError):
            distance_from_origin(r)


def test_measure_asymptotics():
    for t in (10.0, 12.0, 20.0):
        assert abs(MEASURE.radial_weight(t) * math.exp(-2 * t) - 1) < 1e-8
    assert MEASURE.weyl_order == 2 and MEASURE.rho == 1.0
    assert MEASURE.angular_weight() == pytest.approx(1 / (2 * math.pi))


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_horocyclic_map_is_upper_half_plane_chart(s, v):
    t, psi = horocyclic_to_polar(s, v)
    w = math.exp(s) * math.sinh(v) + 1j * math.exp(2 * s)
    z = (w - 1j) / (w + 1j)
    assert abs(math.tanh(t) * complex(math.cos(psi), math.sin(psi)) - z) < 1e-12


def test_integrate_zero():
    assert integrate_X(lambda t, psi: 0 * t * psi) == 0


def test_integrate_radial_gaussian_oracle():
    ref = float(mpmath.quad(lambda t: mpmath.e ** (-4 * t * t) * 2 * mpmath.sinh(2 * t), [0, 1, 3, 8]))
    val = integrate_X(lambda t, psi: np.exp(-4 * t**2) + 0 * psi)
    assert abs(val - ref) < 1e-10 * ref


def test_small_bump_both_charts():
    bump = lambda t, psi: np.where(t < 0.1, np.exp(-1 / np.maximum(1e-300, 1 - (t / 0.1) ** 2)), 0.0) + 0 * psi  # noqa: E731
    a = integrate_X(bump, "polar")
    b = integrate_X(bump, "horocyclic")
    assert a.real > 0
    assert abs(a - b) < 1e-8 * abs(a)


def test_chart_consistency_random():
    for f in random_test_functions(5, 7):
        a = integrate_X(f, "polar")
        b = integrate_X(f, "horocyclic")
        assert abs(a - b) < 1e-7 * abs(a)


def test_integrate_errors():
    with pytest.raises(ParameterError):
        integrate_X(lambda t, psi: t, "cartesian")
    with pytest.raises(TruncationError):
        integrate_X(lambda t, psi: np.exp(-t) + 0 * psi, policy=TailPolicy(1e-14, 5.0, -1.0))
