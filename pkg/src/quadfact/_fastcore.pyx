# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner-loop kernels.

Semantics must match ``_purecore`` exactly; the backend module selects one
of the two at import time.
"""

import numpy as np

from .errors import NonConvergenceError

from libc.math cimport fabs, isfinite

cdef extern from "complex.h":
    double complex cexp(double complex) nogil


def expoly_eval(double complex[::1] lam, int[::1] jexp,
                double complex[::1] coef, double t):
    """Evaluate sum_i coef[i] * t**jexp[i] * exp(lam[i]*t) at scalar t."""
    cdef Py_ssize_t i, m, n = lam.shape[0]
    cdef double complex acc = 0
    cdef double tp
    for i in range(n):
        tp = 1.0
        for m in range(jexp[i]):
            tp *= t
        acc = acc + coef[i] * tp * cexp(lam[i] * t)
    return complex(acc)


def expoly_eval_many(double complex[::1] lam, int[::1] jexp,
                     double complex[::1] coef, double[::1] ts):
    """Vectorized ``expoly_eval`` over an array of abscissae."""
    cdef Py_ssize_t i, m, k
    cdef Py_ssize_t n = lam.shape[0], npts = ts.shape[0]
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double complex acc
    cdef double tp, t
    for k in range(npts):
        t = ts[k]
        acc = 0
        for i in range(n):
            tp = 1.0
            for m in range(jexp[i]):
                tp *= t
            acc = acc + coef[i] * tp * cexp(lam[i] * t)
        ov[k] = acc
    return out


def zeta_series(long start, long gap, double gamma, double t,
                double rtol=1e-16, long cap=500):
    """Sum the series  sum_{i>=0} gamma^i t^(i*gap+start) / (i*gap+start)!.

    Ratio-recurrence form of the summation; see ``_purecore.zeta_series``
    for the full contract.
    """
    cdef double term = 1.0, total, ratio
    cdef long m, exponent, it
    for m in range(1, start + 1):
        term *= t / m
    total = term
    exponent = start
    for it in range(cap):
        ratio = gamma
        for m in range(exponent + 1, exponent + gap + 1):
            ratio *= t / m
        term *= ratio
        exponent += gap
        total += term
        if not isfinite(total):
            raise NonConvergenceError(
                f"series overflow: start={start} gap={gap} gamma={gamma} t={t}"
            )
        if fabs(term) <= rtol * (1.0 + fabs(total)) and fabs(ratio) < 1.0:
            return total
    raise NonConvergenceError(
        f"series did not converge in {cap} terms: "
        f"start={start} gap={gap} gamma={gamma} t={t}"
    )
