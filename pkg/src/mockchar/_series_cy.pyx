# cython: language_level=3
"""Compiled twins of the `_series_py` kernels."""

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)

BACKEND = "cython"

cdef double PI = 3.141592653589793238462643383279502884


def theta1_raw(double complex u, double complex tau, int n_max):
    cdef double complex acc = 0
    cdef double complex term
    cdef double half
    cdef int n
    for n in range(-n_max, n_max + 1):
        half = n + 0.5
        term = cexp(1j * PI * half * half * tau + 2j * PI * u * half)
        if n & 1:
            acc -= term
        else:
            acc += term
    return -1j * acc


def theta3_raw(double complex u, double complex tau, int n_max):
    cdef double complex acc = 1
    cdef double complex core, cross
    cdef int n
    for n in range(1, n_max + 1):
        core = 1j * PI * (<double> n) * n * tau
        cross = 2j * PI * u * n
        acc += cexp(core + cross) + cexp(core - cross)
    return acc


def eta_prod_raw(double complex tau, int n_max):
    cdef double complex q = cexp(2j * PI * tau)
    cdef double complex acc = cexp(2j * PI * tau / 24.0)
    cdef double complex qn = 1
    cdef int n
    for n in range(n_max):
        qn *= q
        acc *= 1 - qn
    return acc


def eta_pent_raw(double complex tau, int k_max):
    cdef double complex acc = 0
    cdef double complex term
    cdef int k
    for k in range(-k_max, k_max + 1):
        term = cexp(2j * PI * tau * (k * (3 * k - 1) / 2.0 + 1.0 / 24.0))
        if k & 1:
            acc -= term
        else:
            acc += term
    return acc


def appell_raw(int level, double complex u, double complex v, double complex tau, int n_max):
    cdef double complex z = cexp(2j * PI * u)
    cdef double complex acc = 0
    cdef double complex term
    cdef int n
    for n in range(-n_max, n_max + 1):
        term = cexp(2j * PI * (tau * (level * n * (n + 1) / 2.0) + v * n))
        term = term / (1.0 - z * cexp(2j * PI * tau * n))
        if (level * n) & 1:
            acc -= term
        else:
            acc += term
    return cexp(1j * PI * level * u) * acc
