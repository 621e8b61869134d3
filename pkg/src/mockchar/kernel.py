"""Theta and eta kernels with certified truncation, plus line quadrature.

Series are summed over a symmetric window whose width is chosen so that the
Gaussian tail bound falls below the requested tolerance.  Quadrature is the
trapezoid rule on a finite window with node doubling until two successive
refinements agree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import backend
from .domain import (
    DEFAULT_QUAD,
    DEFAULT_TRUNC,
    POLE_CLEARANCE,
    ModularPoint,
    QuadratureSpec,
    TruncationSpec,
    as_complex,
    as_modular,
    lattice_distance,
)
from .errors import PoleProximity, QuadratureNoConvergence, TailBoundExceeded


def tail_bound_gaussian(decay: float, growth: float, start: int) -> float:
    """Bound sum_{n >= start} e^{-decay*n^2 + growth*n} by geometric domination.

    Requires decay*(2*start + 1) > growth so the ratio test applies.
    """
    ratio_log = -decay * (2 * start + 1) + growth
    if ratio_log >= 0.0:
        return math.inf
    lead_log = -decay * start * start + growth * start
    if lead_log > 700.0:
        return math.inf
    return math.exp(lead_log) / (1.0 - math.exp(ratio_log))


def gaussian_cutoff(decay: float, growth: float, tol: float, max_terms: int) -> int:
    if decay <= 0.0:
        raise TailBoundExceeded("series has no Gaussian decay (decay=%g)" % decay)
    n = 4
    while n <= max_terms:
        if tail_bound_gaussian(decay, growth, n) <= tol:
            return n
        n = n + 4 if n < 32 else n + max(4, n // 4)
    raise TailBoundExceeded(
        "needed more than %d terms for tail tolerance %g (decay=%g growth=%g)"
        % (max_terms, tol, decay, growth)
    )


@lru_cache(maxsize=1 << 16)
def _theta1_cached(u: complex, tau: complex, n_max: int) -> complex:
    return backend.theta1_raw(u, tau, n_max)


@lru_cache(maxsize=1 << 16)
def _theta3_cached(u: complex, tau: complex, n_max: int) -> complex:
    return backend.theta3_raw(u, tau, n_max)


@lru_cache(maxsize=1 << 12)
def _eta_cached(tau: complex, n_max: int) -> complex:
    return backend.eta_prod_raw(tau, n_max)


def theta_cutoff(u: complex, tau: complex, trunc: TruncationSpec) -> int:
    decay = math.pi * tau.imag
    growth = 2.0 * math.pi * abs(u.imag)
    return gaussian_cutoff(decay, growth, trunc.tail_tol, trunc.max_terms)


def theta1(u, tau, trunc: TruncationSpec = DEFAULT_TRUNC) -> complex:
    uu = as_complex(u)
    mp = as_modular(tau)
    return _theta1_cached(uu, mp.tau, theta_cutoff(uu, mp.tau, trunc))


def theta3(u, tau, trunc: TruncationSpec = DEFAULT_TRUNC) -> complex:
    uu = as_complex(u)
    mp = as_modular(tau)
    return _theta3_cached(uu, mp.tau, theta_cutoff(uu, mp.tau, trunc))


def eta(tau, trunc: TruncationSpec = DEFAULT_TRUNC) -> complex:
    mp = as_modular(tau)
    absq = abs(mp.q)
    # product tail: |log prod_{n>N}(1-q^n)| <= |q|^{N+1} / ((1-|q|)^2)
    n = max(8, int(math.ceil(math.log(trunc.tail_tol * (1.0 - absq) ** 2) / math.log(absq))))
    if n > max(trunc.max_terms, 4096):
        raise TailBoundExceeded("eta product needs %d factors" % n)
    return _eta_cached(mp.tau, n)


def eta_pentagonal(tau, trunc: TruncationSpec = DEFAULT_TRUNC) -> complex:
    """Independent eta evaluation via the pentagonal-number series."""
    mp = as_modular(tau)
    decay = 3.0 * math.pi * mp.tau.imag
    growth = math.pi * mp.tau.imag
    k_max = gaussian_cutoff(decay, growth, trunc.tail_tol, trunc.max_terms)
    return backend.eta_pent_raw(mp.tau, k_max)


def eta_cubed(tau, trunc: TruncationSpec = DEFAULT_TRUNC) -> complex:
    return eta(tau, trunc) ** 3


def require_pole_clearance(u, tau, clearance: float = POLE_CLEARANCE, what: str = "u") -> None:
    """Poles sit on u in Z + tau*Z; reject arguments too close to that lattice."""
    d = lattice_distance(as_complex(u), as_modular(tau).tau)
    if d < clearance:
        raise PoleProximity("%s is %.3g from the pole lattice (clearance %g)" % (what, d, clearance))


def sqrt_principal(w) -> complex:
    """Principal branch square root (cut along the negative real axis)."""
    return cmath.sqrt(as_complex(w))


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    nodes: int

    def __complex__(self) -> complex:
        return self.value


def _eval_line(f, pts: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        out = np.asarray(f(pts), dtype=complex)
        if out.shape != pts.shape:
            raise ValueError("vectorized integrand returned shape %s" % (out.shape,))
        return out
    return np.array([f(complex(p)) for p in pts], dtype=complex)


def integrate_line(f, spec: QuadratureSpec = DEFAULT_QUAD, vectorized: bool = False) -> QuadratureResult:
    """Trapezoid quadrature of f over [-L, L] + i*contour_shift with node doubling.

    Stops once two successive refinements agree to spec.tail_tol (at least two
    doublings are always performed).
    """
    half = spec.half_width
    shift = 1j * spec.contour_shift
    n = spec.nodes
    xs = np.linspace(-half, half, n + 1)
    vals = _eval_line(f, xs + shift, vectorized)
    h = 2.0 * half / n
    current = h * (vals.sum() - 0.5 * (vals[0] + vals[-1]))
    refinements = 0
    while True:
        mids = np.linspace(-half + h / 2.0, half - h / 2.0, n)
        mid_vals = _eval_line(f, mids + shift, vectorized)
        refined = current / 2.0 + (h / 2.0) * mid_vals.sum()
        err = abs(refined - current)
        n *= 2
        h /= 2.0
        current = refined
        refinements += 1
        if refinements >= 2 and err <= spec.tail_tol:
            return QuadratureResult(complex(current), float(err), n + 1)
        if n >= spec.max_nodes:
            raise QuadratureNoConvergence(
                "no convergence with %d nodes (last delta %.3g, tol %g)" % (n, err, spec.tail_tol)
            )


def theta1_rescaling_check(
    level: int, u, tau, trunc: TruncationSpec = DEFAULT_TRUNC
) -> dict:
    """theta1 at tau/K as a K-term combination of theta1 at K*tau."""
    if level < 1:
        raise ValueError("level must be >= 1")
    uu = as_complex(u)
    tt = as_modular(tau).tau
    kk = float(level)
    lhs = theta1(uu, tt / kk, trunc)
    rhs = 0.0 + 0.0j
    for n in range(level):
        shift = n - (level - 1) / 2.0
        pref = cmath.exp(2j * math.pi * (tt * shift * shift / (2.0 * kk) + shift * (uu + 0.5)))
        rhs += pref * theta1(kk * uu + tt * shift + (level - 1) / 2.0, kk * tt, trunc)
    abs_err = abs(lhs - rhs)
    return {
        "check": "theta1_rescaling",
        "level": level,
        "lhs": lhs,
        "rhs": rhs,
        "abs_err": abs_err,
        "rel_err": abs_err / max(abs(lhs), abs(rhs), 1.0),
    }


def gauss_identity_check(alpha, beta, quad: QuadratureSpec = DEFAULT_QUAD) -> dict:
    """Quadrature of e^{-alpha x^2 + beta x} against sqrt(pi/alpha) e^{beta^2/4 alpha}."""
    al = as_complex(alpha)
    be = as_complex(beta)
    if not al.real > 0.0:
        raise ValueError("need Re alpha > 0 for a convergent Gaussian")
    # window: |integrand| <= e^{-Re(al) x^2 + |be| |x|} < tol outside
    half = (abs(be) + math.sqrt(abs(be) ** 2 + 4.0 * al.real * math.log(1e16))) / (2.0 * al.real)
    spec = QuadratureSpec(
        half_width=max(half, 4.0 / math.sqrt(al.real)),
        nodes=quad.nodes,
        contour_shift=0.0,
        tail_tol=quad.tail_tol,
        max_nodes=quad.max_nodes,
    )
    res = integrate_line(lambda xs: np.exp(-al * xs * xs + be * xs), spec, vectorized=True)
    lhs = res.value
    rhs = sqrt_principal(math.pi / al) * cmath.exp(be * be / (4.0 * al))
    abs_err = abs(lhs - rhs)
    return {
        "check": "gauss_identity",
        "lhs": lhs,
        "rhs": rhs,
        "abs_err": abs_err,
        "rel_err": abs_err / max(abs(lhs), abs(rhs), 1.0),
        "nodes": res.nodes,
    }


def clear_caches() -> None:
    _theta1_cached.cache_clear()
    _theta3_cached.cache_clear()
    _eta_cached.cache_clear()
