"""Core value types: modular/elliptic arguments, truncation and quadrature specs,
algebra parameters and module labels.

All values are immutable and validated at construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameter

TWO_PI_I = 2j * math.pi
PI_I = 1j * math.pi


def as_complex(x) -> complex:
    c = complex(x)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise InvalidParameter("non-finite complex value %r" % (x,))
    return c


def floor_re(e) -> int:
    """Largest integer smaller or equal to the real part of e."""
    return math.floor(complex(e).real)


def minus_one_pow(x) -> complex:
    """(-1)^x for possibly non-integer x, with the branch e^{i pi x}."""
    xc = complex(x)
    if xc.imag == 0.0 and xc.real == int(xc.real):
        return complex(1.0 if int(xc.real) % 2 == 0 else -1.0)
    return cmath.exp(PI_I * xc)


@dataclass(frozen=True)
class ModularPoint:
    """tau in the upper half-plane with derived nome q = e^{2 pi i tau}."""

    tau: complex

    def __post_init__(self):
        tau = as_complex(self.tau)
        if not tau.imag > 0.0:
            raise InvalidParameter("tau %s not in upper half-plane" % (tau,))
        object.__setattr__(self, "tau", tau)
        q = cmath.exp(TWO_PI_I * tau)
        assert abs(q) < 1.0
        object.__setattr__(self, "_q", q)

    @property
    def q(self) -> complex:
        return self._q

    def q_pow(self, expo) -> complex:
        """q^expo defined through tau: e^{2 pi i tau expo}."""
        return cmath.exp(TWO_PI_I * self.tau * complex(expo))


def as_modular(tau) -> ModularPoint:
    return tau if isinstance(tau, ModularPoint) else ModularPoint(as_complex(tau))


@dataclass(frozen=True)
class EllipticArgs:
    """Pair (u, v) of elliptic arguments with derived z = e^{2 pi i u}, y = e^{2 pi i v}.

    Fractional powers of z and y are always defined through u and v.
    """

    u: complex
    v: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "u", as_complex(self.u))
        object.__setattr__(self, "v", as_complex(self.v))

    @property
    def z(self) -> complex:
        return cmath.exp(TWO_PI_I * self.u)

    @property
    def y(self) -> complex:
        return cmath.exp(TWO_PI_I * self.v)

    def z_pow(self, expo) -> complex:
        return cmath.exp(TWO_PI_I * self.u * complex(expo))

    def y_pow(self, expo) -> complex:
        return cmath.exp(TWO_PI_I * self.v * complex(expo))

    def shifted(self, du=0.0, dv=0.0) -> "EllipticArgs":
        return EllipticArgs(self.u + as_complex(du), self.v + as_complex(dv))


@dataclass(frozen=True)
class TruncationSpec:
    """Symmetric series window n in [-N, N] with an a posteriori tail bound."""

    max_terms: int = 128
    tail_tol: float = 1e-13

    def __post_init__(self):
        if self.max_terms <= 0:
            raise InvalidParameter("max_terms must be positive")
        if not self.tail_tol > 0.0:
            raise InvalidParameter("tail_tol must be positive")

    def scaled(self, factor: float) -> "TruncationSpec":
        return TruncationSpec(max(8, int(math.ceil(self.max_terms * factor))), self.tail_tol)


DEFAULT_TRUNC = TruncationSpec()


@dataclass(frozen=True)
class QuadratureSpec:
    """Trapezoid window [-L, L] + i*contour_shift with 2^k node refinement."""

    half_width: float = 8.0
    nodes: int = 64
    contour_shift: float = 0.0
    tail_tol: float = 1e-11
    max_nodes: int = 1 << 19

    def __post_init__(self):
        if not self.half_width > 0.0:
            raise InvalidParameter("half_width must be positive")
        if self.nodes < 4:
            raise InvalidParameter("nodes must be at least 4")


DEFAULT_QUAD = QuadratureSpec()

POLE_CLEARANCE = 1e-6


def lattice_distance(w: complex, tau: complex) -> float:
    """Distance of w from the lattice Z + tau*Z (metric used for pole clearance)."""
    w = complex(w)
    tau = complex(tau)
    beta = w.imag / tau.imag
    alpha = w.real - beta * tau.real
    best = math.inf
    for db in (math.floor(beta), math.floor(beta) + 1):
        for da in (math.floor(alpha), math.floor(alpha) + 1):
            best = min(best, abs(w - (da + db * tau)))
    return best


@dataclass(frozen=True)
class AlgebraParams:
    """W-algebra data: ell > 0, n = a*ell with integer a >= 0, K = 2a + 1."""

    n: int
    ell: int

    def __post_init__(self):
        if not isinstance(self.ell, int) or not isinstance(self.n, int):
            raise InvalidParameter("n and ell must be integers")
        if self.ell <= 0:
            raise InvalidParameter("ell must be positive")
        if self.n % self.ell != 0:
            raise InvalidParameter("n must be divisible by ell")
        if self.n * self.ell + self.ell**2 <= 0:
            raise InvalidParameter("n*ell + ell^2 must be positive")

    @property
    def a(self) -> int:
        return self.n // self.ell

    @property
    def K(self) -> int:
        return 2 * self.a + 1

    @property
    def xi(self) -> complex:
        return cmath.exp(TWO_PI_I / self.ell)


@dataclass(frozen=True)
class AtypicalWLabel:
    """Label (n', l') of an atypical W-module; n' may be complex, l' is an integer."""

    n_prime: complex
    ell_prime: int

    def __post_init__(self):
        object.__setattr__(self, "n_prime", as_complex(self.n_prime))
        if not isinstance(self.ell_prime, int):
            raise InvalidParameter("ell_prime must be an integer")


@dataclass(frozen=True)
class TypicalWLabel:
    """Label (n', e') of a typical W-module; integer e' marks an indecomposable."""

    n_prime: complex
    e_prime: complex

    def __post_init__(self):
        object.__setattr__(self, "n_prime", as_complex(self.n_prime))
        object.__setattr__(self, "e_prime", as_complex(self.e_prime))

    @property
    def parity(self) -> int:
        return floor_re(self.e_prime)

    @property
    def indecomposable(self) -> bool:
        e = complex(self.e_prime)
        return e.imag == 0.0 and e.real == int(e.real)


@dataclass(frozen=True)
class RegulatorSpec:
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise InvalidParameter("epsilon must be positive")


def frac(x) -> Fraction:
    """Exact Fraction from int/Fraction/str; floats are rejected."""
    if isinstance(x, float):
        raise InvalidParameter("exact context requires int/Fraction, got float %r" % x)
    return Fraction(x)
