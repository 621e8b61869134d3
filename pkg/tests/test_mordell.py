"""Mordell integral tests.

The frozen value of h(0; i) comes from node-doubled quadrature converged at
two different node caps during development; it also survives every shift and
contour identity below, which are computed through independent code paths.
"""

import pytest

from mockchar.domain import QuadratureSpec
from mockchar.errors import InvalidParameter, QuadratureNoConvergence
from mockchar.mordell import (
    h_window,
    mordell_h,
    mordell_h_contour,
    mordell_h_quad,
    mordell_h_s,
    verify_contour_identity,
    verify_h1_reflection,
    verify_mordell_shift,
)

H_AT_0_I = 0.669063339135868


def test_h_at_origin_frozen_value():
    assert abs(mordell_h(0.0, 1j) - H_AT_0_I) < 1e-12


def test_h_quad_reports_its_error():
    res = mordell_h_quad(0.1 + 0.05j, 1.3j)
    assert res.error < 1e-10
    assert abs(mordell_h(0.1 + 0.05j, 1.3j) - res.value) == 0.0


def test_h_is_even_in_u():
    for u, tau in ((0.21, 1.1j), (0.13 - 0.08j, 0.2 + 0.9j)):
        assert abs(mordell_h(u, tau) - mordell_h(-u, tau)) < 1e-12


@pytest.mark.parametrize("s", [-0.5, -0.3, 0.0, 0.25, 0.49])
def test_shift_identity(s):
    for u, tau in ((0.11, 1.2j), (-0.2 + 0.07j, 0.15 + 1.0j)):
        rep = verify_mordell_shift(s, u, tau)
        assert rep["rel_err"] < 1e-9, (s, rep)


def test_h1_is_minus_h():
    for u, tau in ((0.17, 1.1j), (0.05 - 0.1j, 0.3 + 1.3j)):
        rep = verify_h1_reflection(u, tau)
        assert rep["rel_err"] < 1e-10, rep


@pytest.mark.parametrize("s", [0.5, -0.5])
def test_half_shift_epsilon_independence(s):
    u, tau = 0.12 + 0.03j, 1.15j
    v1 = mordell_h_s(s, u, tau, eps=1e-3)
    v2 = mordell_h_s(s, u, tau, eps=2e-3)
    v3 = mordell_h_s(s, u, tau, eps=5e-4)
    assert abs(v1 - v2) < 1e-10
    assert abs(v1 - v3) < 1e-10


@pytest.mark.parametrize("s", [-0.4, -0.15, 0.0, 0.2, 0.45])
def test_contour_identity(s):
    rep = verify_contour_identity(s, 0.1 + 0.04j, 1.25j)
    assert rep["rel_err"] < 1e-9, (s, rep)


def test_contour_function_agrees_with_shift_form():
    import cmath
    import math

    s, u, tau = 0.3, 0.14, 1.2j
    lhs = mordell_h_contour(s, u, tau)
    q_fac = cmath.exp(-2j * math.pi * tau * s * s / 2.0)
    z_fac = cmath.exp(-2j * math.pi * u * s)
    rhs = q_fac * z_fac * mordell_h(u + s * tau, tau)
    assert abs(lhs - rhs) < 1e-9


def test_shift_parameter_domain():
    with pytest.raises(InvalidParameter):
        mordell_h_s(1.2, 0.1, 1j)
    with pytest.raises(InvalidParameter):
        mordell_h_s(-1.01, 0.1, 1j)


def test_window_grows_with_argument():
    assert h_window(2.0 + 0.0j, 1j) > h_window(0.0j, 1j)


def test_capped_quadrature_raises():
    with pytest.raises(QuadratureNoConvergence):
        mordell_h(0.1, 1j, QuadratureSpec(half_width=6.0, nodes=4, max_nodes=8))
