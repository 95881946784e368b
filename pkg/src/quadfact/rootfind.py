"""Transcendental root finding: tangent fixed points, first-root windows,
and mean-value points of the generalized Taylor expansion."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .charode import (
    apply_Dc,
    characteristic_solution,
    taylor_polynomial_part,
    _solution_antiderivative,
)
from .errors import (
    DegenerateMeanValueError,
    InputDomainError,
    NonConvergenceError,
)

__all__ = [
    "BracketedRootQuery",
    "tan_fixed_point",
    "rho_plus",
    "rho_minus",
    "find_mean_value_point",
    "hyperbolic_ratio_inequalities",
    "trigonometric_ratio_inequalities",
]


@dataclass
class BracketedRootQuery:
    """A continuous function with a sign change on [lo, hi]."""

    fn: object
    lo: float
    hi: float
    tol: float = 1e-14

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InputDomainError("need lo < hi")
        if self.tol <= 0:
            raise InputDomainError("tolerance must be positive")

    def solve(self) -> float:
        """Bisection until the bracket width reaches the argument tolerance."""
        f = self.fn
        lo, hi = self.lo, self.hi
        flo = f(lo)
        if flo == 0.0:
            return lo
        fhi = f(hi)
        if fhi == 0.0:
            return hi
        if flo * fhi > 0.0:
            raise InputDomainError("no sign change on bracket")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            fm = f(mid)
            if fm == 0.0:
                return mid
            if flo * fm < 0.0:
                hi = mid
            else:
                lo, flo = mid, fm
            if hi - lo <= self.tol * (1.0 + abs(mid)):
                break
        return 0.5 * (lo + hi)


@lru_cache(maxsize=256)
def tan_fixed_point(n: int) -> float:
    """The unique solution of tan(x) = x in ((n - 1/2) pi, (n + 1/2) pi).

    Bisection runs on sin(x) - x*cos(x), which shares the root but has no
    pole on the bracket; a couple of guarded Newton steps on tan(x) - x
    then polish to machine accuracy.
    """
    if n < 0:
        raise InputDomainError("n must be >= 0")
    if n == 0:
        return 0.0
    lo = n * math.pi
    hi = (n + 0.5) * math.pi

    def smooth(x):
        return math.sin(x) - x * math.cos(x)

    root = BracketedRootQuery(smooth, lo, hi, tol=1e-15).solve()
    for _ in range(3):
        t = math.tan(root)
        step = (t - root) / (t * t) if t != 0.0 else 0.0
        cand = root - step
        if lo < cand < hi:
            root = cand
    return root


def _bisect_down(h, lo, hi, flo, fhi, tol):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = h(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if hi - lo <= tol * (1.0 + abs(mid)):
            break
    return 0.5 * (lo + hi)


def rho_plus(h, scan_step=None, scan_limit=50.0, tol=1e-13):
    """First positive root of ``h`` (scan then bisect); +inf if none found
    within ``scan_limit``.

    A scan value below ``tol`` counts as a root only while |h| is falling,
    so functions rising from h(0) = 0 are not mistaken for a root at 0+.
    """
    if scan_limit <= 0:
        raise InputDomainError("scan_limit must be positive")
    if scan_step is None:
        scan_step = scan_limit / 1024.0
    if scan_step <= 0:
        raise InputDomainError("scan_step must be positive")
    prev_t = scan_step
    prev_v = h(prev_t)
    if prev_v == 0.0:
        return prev_t
    t = prev_t
    while t < scan_limit:
        t = t + scan_step
        v = h(t)
        if v == 0.0:
            return t
        if prev_v * v < 0.0:
            return _bisect_down(h, prev_t, t, prev_v, v, 1e-15)
        if abs(v) < tol and abs(v) < abs(prev_v):
            return t
        prev_t, prev_v = t, v
    return math.inf


def rho_minus(h, scan_step=None, scan_limit=50.0, tol=1e-13):
    """Last negative root of ``h``; -inf if none found within -scan_limit."""
    r = rho_plus(lambda s: h(-s), scan_step=scan_step, scan_limit=scan_limit, tol=tol)
    return -r


def find_mean_value_point(spec, f, a, x, residual_tol=1e-10):
    """A point xi between a and x where the operator image of f, weighted by
    the integral of the characteristic solution, reproduces the exact Taylor
    remainder.  Returns the leftmost such point.
    """
    a = float(a)
    x = float(x)
    if x == a:
        return a
    omega = characteristic_solution(spec)
    dx = x - a
    # validity window: the characteristic solution may not vanish strictly
    # between 0 and x - a
    span = abs(dx)
    first = rho_plus(
        (lambda s: omega.evaluate_real(s))
        if dx > 0
        else (lambda s: omega.evaluate_real(-s)),
        scan_step=span / 1024.0,
        scan_limit=span,
        tol=1e-13,
    )
    if first < span * (1.0 - 1e-12):
        raise InputDomainError(
            f"x - a = {dx:g} lies beyond the first root {first:g} of the "
            "characteristic solution"
        )
    fx = f(x)
    remainder = fx - taylor_polynomial_part(spec, f, a, x)
    if abs(remainder) <= 1e-12 * (1.0 + abs(fx)):
        return 0.5 * (a + x)
    weight = _solution_antiderivative(spec).evaluate_real(dx)
    if abs(weight) < 1e-300:
        raise DegenerateMeanValueError(
            "integral of the characteristic solution vanishes but the "
            "remainder does not"
        )
    target = remainder / weight

    def gap(xi):
        return apply_Dc(spec, f, xi) - target

    lo, hi = (a, x) if x > a else (x, a)
    grid_n = 1024
    step = (hi - lo) / grid_n
    prev_xi = lo
    prev_g = gap(lo)
    best_xi, best_abs = prev_xi, abs(prev_g)
    for i in range(1, grid_n + 1):
        xi = lo + i * step
        g = gap(xi)
        if abs(g) < best_abs:
            best_xi, best_abs = xi, abs(g)
        if prev_g == 0.0:
            xi_root = prev_xi
        elif prev_g * g < 0.0 or g == 0.0:
            xi_root = _bisect_down(gap, prev_xi, xi, prev_g, g, 1e-16)
        else:
            prev_xi, prev_g = xi, g
            continue
        if abs(apply_Dc(spec, f, xi_root) * weight - remainder) <= residual_tol * (
            1.0 + abs(remainder)
        ):
            return xi_root
        prev_xi, prev_g = xi, g
    # no sign change: fall back to a local |gap| minimum around the best point
    left = max(lo, best_xi - step)
    right = min(hi, best_xi + step)
    xi_root = _golden_min(lambda s: abs(gap(s)), left, right, 1e-14)
    if abs(apply_Dc(spec, f, xi_root) * weight - remainder) <= residual_tol * (
        1.0 + abs(remainder)
    ):
        return xi_root
    raise NonConvergenceError("no mean-value point met the residual tolerance")


def _golden_min(h, lo, hi, xtol):
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv * (hi - lo)
    x2 = lo + inv * (hi - lo)
    f1, f2 = h(x1), h(x2)
    while hi - lo > xtol * (1.0 + abs(lo) + abs(hi)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = h(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = h(x2)
    return 0.5 * (lo + hi)


def hyperbolic_ratio_inequalities(t: float) -> bool:
    """t/sinh(t) < 1 < t*coth(t) for t > 0."""
    if t <= 0:
        raise InputDomainError("t must be positive")
    return t / math.sinh(t) < 1.0 < t / math.tanh(t)


def trigonometric_ratio_inequalities(t: float) -> bool:
    """t*cot(t) < 1 < t/sin(t) for t in (0, pi)."""
    if not 0 < t < math.pi:
        raise InputDomainError("t must lie in (0, pi)")
    s = math.sin(t)
    return t * math.cos(t) / s < 1.0 < t / s
