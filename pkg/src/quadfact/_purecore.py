"""Pure-Python implementation of the inner-loop kernels.

Mirror of the compiled extension ``_fastcore``; the backend module picks
whichever is available.  Keep the two in sync: same names, same signatures,
same semantics.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import NonConvergenceError


def expoly_eval(lam, jexp, coef, t):
    """Evaluate sum_i coef[i] * t**jexp[i] * exp(lam[i]*t) at scalar t."""
    acc = 0.0 + 0.0j
    for i in range(len(lam)):
        j = int(jexp[i])
        tp = 1.0
        for _ in range(j):
            tp *= t
        acc += coef[i] * tp * cmath.exp(lam[i] * t)
    return acc


def expoly_eval_many(lam, jexp, coef, ts):
    """Vectorized ``expoly_eval`` over an array of abscissae."""
    ts = np.asarray(ts, dtype=float)
    lam = np.asarray(lam)
    jexp = np.asarray(jexp)
    coef = np.asarray(coef)
    powers = ts[:, None] ** jexp[None, :]
    return (coef[None, :] * powers * np.exp(lam[None, :] * ts[:, None])).sum(axis=1)


def zeta_series(start, gap, gamma, t, rtol=1e-16, cap=500):
    """Sum the series  sum_{i>=0} gamma^i t^(i*gap+start) / (i*gap+start)!.

    Terms are generated by a ratio recurrence so that neither t^m nor m!
    is ever formed on its own; this keeps the evaluation overflow-safe for
    orders up to ~20 and |t| up to ~50.  Summation stops once the next
    term is below rtol relative to the running sum *and* the term ratio
    has dropped under one (so the tail is geometrically dominated).
    """
    start = int(start)
    gap = int(gap)
    term = 1.0
    for m in range(1, start + 1):
        term *= t / m
    total = term
    exponent = start
    for _ in range(cap):
        ratio = gamma
        for m in range(exponent + 1, exponent + gap + 1):
            ratio *= t / m
        term *= ratio
        exponent += gap
        total += term
        if not math.isfinite(total):
            raise NonConvergenceError(
                f"series overflow: start={start} gap={gap} gamma={gamma} t={t}"
            )
        if abs(term) <= rtol * (1.0 + abs(total)) and abs(ratio) < 1.0:
            return total
    raise NonConvergenceError(
        f"series did not converge in {cap} terms: "
        f"start={start} gap={gap} gamma={gamma} t={t}"
    )
