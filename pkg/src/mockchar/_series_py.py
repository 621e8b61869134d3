"""Pure-Python hot loops for the theta/eta/Appell series.

These are the reference kernels; `_series_cy` provides compiled twins with the
same signatures.  Keep the bodies branch-light so the two stay in lockstep.
"""

from __future__ import annotations

import cmath
import math

BACKEND = "python"

_PI_I = 1j * math.pi
_TWO_PI_I = 2j * math.pi


def theta1_raw(u: complex, tau: complex, n_max: int) -> complex:
    acc = 0.0 + 0.0j
    for n in range(-n_max, n_max + 1):
        half = n + 0.5
        term = cmath.exp(_PI_I * half * half * tau + _TWO_PI_I * u * half)
        acc += -term if n & 1 else term
    return -1j * acc


def theta3_raw(u: complex, tau: complex, n_max: int) -> complex:
    acc = 1.0 + 0.0j
    for n in range(1, n_max + 1):
        core = _PI_I * n * n * tau
        cross = _TWO_PI_I * u * n
        acc += cmath.exp(core + cross) + cmath.exp(core - cross)
    return acc


def eta_prod_raw(tau: complex, n_max: int) -> complex:
    q = cmath.exp(_TWO_PI_I * tau)
    acc = cmath.exp(_TWO_PI_I * tau / 24.0)
    qn = 1.0 + 0.0j
    for _ in range(n_max):
        qn *= q
        acc *= 1.0 - qn
    return acc


def eta_pent_raw(tau: complex, k_max: int) -> complex:
    acc = 0.0 + 0.0j
    for k in range(-k_max, k_max + 1):
        term = cmath.exp(_TWO_PI_I * tau * (k * (3 * k - 1) / 2.0 + 1.0 / 24.0))
        acc += -term if k & 1 else term
    return acc


def appell_raw(level: int, u: complex, v: complex, tau: complex, n_max: int) -> complex:
    z = cmath.exp(_TWO_PI_I * u)
    acc = 0.0 + 0.0j
    for n in range(-n_max, n_max + 1):
        expo = _TWO_PI_I * (tau * (level * n * (n + 1) / 2.0) + v * n)
        term = cmath.exp(expo) / (1.0 - z * cmath.exp(_TWO_PI_I * tau * n))
        acc += -term if (level * n) & 1 else term
    return cmath.exp(_PI_I * level * u) * acc
