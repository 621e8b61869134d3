"""Kernel tests: theta/eta evaluation against independent closed forms,
transformation laws, truncation errors, and the compiled backend."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mockchar import backend
from mockchar.domain import QuadratureSpec, TruncationSpec
from mockchar.errors import PoleProximity, QuadratureNoConvergence, TailBoundExceeded
from mockchar.kernel import (
    eta,
    eta_cubed,
    eta_pentagonal,
    gauss_identity_check,
    integrate_line,
    require_pole_clearance,
    sqrt_principal,
    theta1,
    theta1_rescaling_check,
    theta3,
)

PI_I = 1j * math.pi
TWO_PI_I = 2j * math.pi


# closed forms at tau = i, independent of every series in the package
ETA_AT_I = math.gamma(0.25) / (2.0 * math.pi ** 0.75)
THETA3_AT_I = math.pi ** 0.25 / math.gamma(0.75)


def test_eta_at_i_closed_form():
    assert abs(eta(1j) - ETA_AT_I) < 1e-14


def test_theta3_at_i_closed_form():
    assert abs(theta3(0.0, 1j) - THETA3_AT_I) < 1e-14


def test_eta_product_vs_pentagonal():
    for tau in (1j, 0.3 + 0.8j, -0.4 + 1.7j):
        assert abs(eta(tau) - eta_pentagonal(tau)) < 1e-14


def test_eta_cubed_jacobi_vs_power():
    for tau in (1.1j, 0.2 + 0.9j):
        assert abs(eta_cubed(tau) - eta(tau) ** 3) < 1e-14


def test_theta1_odd():
    u, tau = 0.21 + 0.07j, 0.1 + 1.3j
    assert abs(theta1(-u, tau) + theta1(u, tau)) < 1e-14
    assert abs(theta1(0.0, tau)) < 1e-14


def test_theta1_derivative_at_zero_is_2pi_eta_cubed():
    # theta1'(0) = 2 pi eta^3, via a symmetric difference quotient
    tau = 0.13 + 1.1j
    h = 1e-5
    deriv = (theta1(h, tau) - theta1(-h, tau)) / (2.0 * h)
    assert abs(deriv - 2.0 * math.pi * eta_cubed(tau)) < 1e-8


@settings(max_examples=25, deadline=None)
@given(
    ur=st.floats(-0.45, 0.45),
    ui=st.floats(-0.3, 0.3),
    tr=st.floats(-0.5, 0.5),
    ti=st.floats(0.8, 2.0),
)
def test_theta1_lattice_laws(ur, ui, tr, ti):
    u = complex(ur, ui)
    tau = complex(tr, ti)
    base = theta1(u, tau)
    assert abs(theta1(u + 1.0, tau) + base) <= 1e-12 * max(abs(base), 1.0)
    shifted = theta1(u + tau, tau)
    expected = -cmath.exp(-PI_I * tau - TWO_PI_I * u) * base
    assert abs(shifted - expected) <= 1e-12 * max(abs(expected), 1.0)


def test_theta1_s_law():
    for u, tau in ((0.2, 1.2j), (0.31 - 0.11j, 0.4 + 0.9j)):
        lhs = theta1(u / tau, -1.0 / tau)
        rhs = -1j * sqrt_principal(-1j * tau) * cmath.exp(PI_I * u * u / tau) * theta1(u, tau)
        assert abs(lhs - rhs) < 1e-13 * max(abs(rhs), 1.0)


def test_theta1_tau_plus_one():
    u, tau = 0.17 + 0.05j, 0.2 + 1.1j
    assert abs(theta1(u, tau + 1.0) - cmath.exp(PI_I / 4.0) * theta1(u, tau)) < 1e-14


def test_theta3_half_period_reduces_to_theta1():
    w, tau = 0.11 - 0.04j, 0.15 + 1.05j
    lhs = theta3(w + 0.5 + tau / 2.0, tau)
    rhs = 1j * cmath.exp(-PI_I * tau / 4.0 - PI_I * w) * theta1(w, tau)
    assert abs(lhs - rhs) < 1e-13


def test_eta_s_and_t_laws():
    for tau in (1.3j, 0.25 + 0.95j):
        assert abs(eta(-1.0 / tau) - sqrt_principal(-1j * tau) * eta(tau)) < 1e-13
        assert abs(eta(tau + 1.0) - cmath.exp(PI_I / 12.0) * eta(tau)) < 1e-14


def test_theta_rescaling_levels():
    for level in (1, 2, 3, 5):
        rep = theta1_rescaling_check(level, 0.13 + 0.02j, 0.21 + 1.15j)
        assert rep["rel_err"] < 1e-12, (level, rep)


def test_gauss_identity_quadrature():
    for alpha, beta in ((1.0, 0.0), (0.7 + 1.3j, -0.4 + 0.2j), (2.5 - 0.8j, 1.1j)):
        rep = gauss_identity_check(alpha, beta)
        assert rep["rel_err"] < 1e-12, rep


def test_sqrt_principal_branch():
    assert abs(sqrt_principal(4.0) - 2.0) < 1e-15
    assert abs(sqrt_principal(-1.0 + 0j) - 1j) < 1e-15
    z = sqrt_principal(-1j * (0.3 + 1.2j))
    assert z.real > 0.0  # principal branch keeps Re >= 0


def test_integrate_line_refines_to_tolerance():
    spec = QuadratureSpec(half_width=8.0, nodes=32, tail_tol=1e-12)
    res = integrate_line(lambda x: cmath.exp(-x * x), spec)
    assert abs(res.value - math.sqrt(math.pi)) < 1e-12
    assert res.error < 1e-10
    assert res.nodes > 32


def test_quadrature_no_convergence_when_capped():
    spec = QuadratureSpec(half_width=6.0, nodes=4, max_nodes=8)
    with pytest.raises(QuadratureNoConvergence):
        integrate_line(lambda x: cmath.exp(-x * x), spec)


def test_tail_bound_exceeded_for_tiny_truncation():
    with pytest.raises(TailBoundExceeded):
        theta1(0.2, 0.9j, TruncationSpec(max_terms=2))


def test_pole_clearance_guard():
    with pytest.raises(PoleProximity):
        require_pole_clearance(0.0, 1j)
    with pytest.raises(PoleProximity):
        require_pole_clearance(1.0 + 1.2j, 1.2j)
    require_pole_clearance(0.2 + 0.1j, 1.2j)


def test_compiled_backend_matches_python_fallback():
    from mockchar import _series_py

    if backend.backend_name() == "python":
        pytest.skip("compiled backend not built")
    u, v, tau = 0.17 + 0.05j, 0.23 - 0.08j, 0.31 + 1.07j
    assert abs(backend.theta1_raw(u, tau, 48) - _series_py.theta1_raw(u, tau, 48)) < 1e-15
    assert abs(backend.theta3_raw(u, tau, 48) - _series_py.theta3_raw(u, tau, 48)) < 1e-15
    assert abs(backend.eta_prod_raw(tau, 128) - _series_py.eta_prod_raw(tau, 128)) < 1e-15
    assert abs(backend.eta_pent_raw(tau, 64) - _series_py.eta_pent_raw(tau, 64)) < 1e-15
    for level in (1, 3, 7):
        got = backend.appell_raw(level, u, v, tau, 48)
        want = _series_py.appell_raw(level, u, v, tau, 48)
        assert abs(got - want) < 1e-14
