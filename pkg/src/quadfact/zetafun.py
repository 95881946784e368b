"""The generalized-monomial series family and its Taylor-type expansion.

``zeta(n, k, gamma)`` generalizes t**n / n!: it solves the delay-free ODE
relating the (n+1)-st and (k+1)-st derivatives with Kronecker initial data,
and its derivatives shift the parameters down.  All evaluations run through
the overflow-safe ratio-recurrence series in the backend core.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _backend
from .errors import InputDomainError, OrderError

__all__ = ["ZetaParams", "zeta", "zeta_derivative", "zeta_taylor_expansion"]


@dataclass(frozen=True)
class ZetaParams:
    n: int
    k: int
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "gamma", float(self.gamma))
        if self.n < 1:
            raise InputDomainError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k < self.n:
            raise InputDomainError(f"need 0 <= k < n, got k={self.k}, n={self.n}")

    @property
    def gap(self):
        return self.n - self.k


def zeta(params: ZetaParams, t: float) -> float:
    """Series value: sum_i gamma^i t^(i(n-k)+n) / (i(n-k)+n)!."""
    return _backend.zeta_series(params.n, params.gap, params.gamma, float(t))


def zeta_derivative(params: ZetaParams, j: int, t: float) -> float:
    """j-th derivative, 0 <= j <= n.

    For j <= k this equals the series with parameters (n-j, k-j, gamma);
    for k < j <= n the series is differentiated term-wise.  Both cases
    reduce to the same shifted summation (start exponent n-j, gap n-k).
    """
    j = int(j)
    if j < 0:
        raise InputDomainError(f"negative derivative order {j}")
    if j > params.n:
        raise OrderError(f"derivative order {j} exceeds n = {params.n}")
    return _backend.zeta_series(params.n - j, params.gap, params.gamma, float(t))


def zeta_taylor_expansion(params: ZetaParams, f, a, x, tol=1e-12):
    """Return (polynomial_part, remainder_integral) of the two-parameter
    Taylor expansion; the sum reconstructs f(x)."""
    from .oracle import integrate_adaptive

    n, k, gamma = params.n, params.k, params.gamma
    if f.max_order < n:
        raise OrderError(f"function exposes order {f.max_order} < n = {n}")
    a = float(a)
    x = float(x)
    dx = x - a
    poly = 0.0
    fact = 1.0
    for j in range(k):
        if j > 0:
            fact *= j
        poly += f.derivative(j, a) * dx**j / fact
    for j in range(k, n):
        poly += f.derivative(j, a) * zeta_derivative(params, n - j, dx)
    if x == a:
        return poly, 0.0

    def integrand(t):
        return (f.derivative(n, t) - gamma * f.derivative(k, t)) * zeta_derivative(
            params, 1, x - t
        )

    lo, hi, sign = (a, x, 1.0) if x > a else (x, a, -1.0)
    res = integrate_adaptive(integrand, lo, hi, tol=tol)
    return poly, sign * res.value
