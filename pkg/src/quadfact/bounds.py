"""Kernel norms, Hölder-type error bounds, and the sharp rule constants."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .charode import CharacteristicSpec, apply_Dc
from .errors import InputDomainError, OrderError
from .kernels import (
    _as_param,
    _sinh_cross_difference,
    _validate_spectral,
    _validate_zeta_conditions,
    kernel_general,
    kernel_zeta,
    simpson_limit_deviation,
)
from .measure import Measure, apply_functional
from .oracle import integrate_adaptive
from .rootfind import tan_fixed_point
from .zetafun import ZetaParams

__all__ = [
    "BoundReport",
    "SignCheck",
    "norm_on_interval",
    "sup_norm_argmax",
    "holder_bound",
    "holder_bound_zeta",
    "sign_inequality_check",
    "trapezoid_bound_constants",
    "simpson_bound_constants",
    "classical_simpson_report",
    "conjugate_exponent",
    "format_float",
    "exponent_label",
]

CSV_HEADER = "rule,p,q,value,deriv_norm,kernel_norm,bound,holds"


def format_float(x: float) -> str:
    """17 significant digits: enough for exact float round-trips."""
    return f"{float(x):.17g}"


def exponent_label(p) -> str:
    return "inf" if math.isinf(p) else f"{int(p)}"


def conjugate_exponent(p):
    p = _parse_exponent(p)
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return 2.0


def _parse_exponent(p):
    if isinstance(p, str):
        p = math.inf if p.strip().lower() in ("inf", "infinity") else float(p)
    p = float(p)
    if p not in (1.0, 2.0) and not math.isinf(p):
        raise InputDomainError(f"exponent must be 1, 2 or inf, got {p}")
    return p


@dataclass(frozen=True)
class BoundReport:
    rule: str
    p: float
    q: float
    functional_value: float
    derivative_norm: float
    kernel_norm: float
    bound: float
    holds: bool

    def __post_init__(self):
        inv = lambda e: 0.0 if math.isinf(e) else 1.0 / e
        if abs(inv(self.p) + inv(self.q) - 1.0) > 1e-12:
            raise InputDomainError(f"exponents {self.p}, {self.q} are not conjugate")

    def to_json(self) -> str:
        return json.dumps(
            {
                "rule": self.rule,
                "p": exponent_label(self.p),
                "q": exponent_label(self.q),
                "value": self.functional_value,
                "deriv_norm": self.derivative_norm,
                "kernel_norm": self.kernel_norm,
                "bound": self.bound,
                "holds": self.holds,
            }
        )

    def to_csv_row(self) -> str:
        return ",".join(
            [
                self.rule,
                exponent_label(self.p),
                exponent_label(self.q),
                format_float(self.functional_value),
                format_float(self.derivative_norm),
                format_float(self.kernel_norm),
                format_float(self.bound),
                "true" if self.holds else "false",
            ]
        )


def _make_report(rule, p, value, dnorm, knorm) -> BoundReport:
    q = conjugate_exponent(p)
    bound = dnorm * knorm
    return BoundReport(
        rule=rule,
        p=_parse_exponent(p),
        q=q,
        functional_value=float(value),
        derivative_norm=float(dnorm),
        kernel_norm=float(knorm),
        bound=float(bound),
        holds=bool(abs(value) <= bound * (1.0 + 1e-10)),
    )


# -- norms ---------------------------------------------------------------------


def _pieces(a, b, breakpoints):
    cuts = sorted({float(t) for t in breakpoints if a < float(t) < b})
    edges = [a] + cuts + [b]
    return list(zip(edges, edges[1:]))


def _golden_max(h, lo, hi, xtol):
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv * (hi - lo)
    x2 = lo + inv * (hi - lo)
    f1, f2 = h(x1), h(x2)
    while hi - lo > xtol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = h(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = h(x2)
    return 0.5 * (lo + hi)


def _polish_max(h, x, a, b, delta, xtol):
    """Sharpen an interior max location by bisecting the sign change of a
    central-difference slope; golden-section alone stalls at sqrt(eps)."""
    lo = max(a, x - 2.0 * delta)
    hi = min(b, x + 2.0 * delta)
    if lo + delta >= hi - delta:
        return x

    def slope(s):
        return h(s + delta) - h(s - delta)

    lo_s, hi_s = lo + delta, hi - delta
    slo, shi = slope(lo_s), slope(hi_s)
    if not (slo > 0.0 > shi):
        return x
    for _ in range(200):
        mid = 0.5 * (lo_s + hi_s)
        if mid <= lo_s or mid >= hi_s:
            break
        sm = slope(mid)
        if sm == 0.0:
            return mid
        if sm > 0.0:
            lo_s = mid
        else:
            hi_s = mid
        if hi_s - lo_s <= xtol:
            break
    return 0.5 * (lo_s + hi_s)


def sup_norm_argmax(h, a, b, breakpoints=(), seeds=()):
    """(max |h|, argmax) over [a, b]: 2049-point scan per smooth piece, then
    golden-section refinement and a derivative polish around each local max."""
    a = float(a)
    b = float(b)
    absh = lambda x: abs(h(x))
    best_val = -1.0
    best_x = a
    for s in seeds:
        s = min(max(float(s), a), b)
        v = absh(s)
        if v > best_val:
            best_val, best_x = v, s
    xtol = 1e-12 * (b - a)
    for lo, hi in _pieces(a, b, breakpoints):
        xs = np.linspace(lo, hi, 2049)
        vals = [absh(x) for x in xs]
        for i, v in enumerate(vals):
            left = vals[i - 1] if i > 0 else -math.inf
            right = vals[i + 1] if i + 1 < len(vals) else -math.inf
            if v < left or v < right:
                continue
            blo = xs[max(i - 1, 0)]
            bhi = xs[min(i + 1, len(xs) - 1)]
            x_star = _golden_max(absh, blo, bhi, xtol) if bhi > blo else xs[i]
            if a < x_star < b:
                x_star = _polish_max(
                    absh, x_star, a, b, delta=1e-4 * (b - a), xtol=xtol
                )
            for cand in (xs[i], x_star):
                cv = absh(cand)
                if cv > best_val:
                    best_val, best_x = cv, cand
    return float(best_val), float(best_x)


def norm_on_interval(h, a, b, q, breakpoints=(), seeds=()):
    """L^q norm of ``h`` on [a, b] for q in {1, 2, inf}.

    ``breakpoints`` mark kink locations: integration panels never straddle
    them and the sup scan restarts there.
    """
    q = _parse_exponent(q)
    a = float(a)
    b = float(b)
    if math.isinf(q):
        return sup_norm_argmax(h, a, b, breakpoints, seeds)[0]
    total = 0.0
    for lo, hi in _pieces(a, b, breakpoints):
        if q == 1.0:
            res = integrate_adaptive(lambda x: abs(h(x)), lo, hi, tol=1e-11)
        else:
            res = integrate_adaptive(lambda x: abs(h(x)) ** 2, lo, hi, tol=1e-11)
        total += res.value
    return total if q == 1.0 else math.sqrt(total)


# -- reports -------------------------------------------------------------------


def holder_bound(mu: Measure, spec: CharacteristicSpec, f, p, rule="general",
                 validate=True, kernel_seeds=()) -> BoundReport:
    """|functional(f)| <= ||operator image of f||_p * ||kernel||_q.

    ``kernel_seeds`` are candidate extremum locations for the sup-norm
    search (rules with analytically known critical points pass them in).
    """
    p = _parse_exponent(p)
    if f.max_order < spec.n:
        raise OrderError(
            f"function exposes order {f.max_order} < operator order {spec.n}"
        )
    if validate:
        _validate_spectral(mu, spec)
    q = conjugate_exponent(p)
    dnorm = norm_on_interval(lambda t: apply_Dc(spec, f, t), mu.a, mu.b, p)
    knorm = norm_on_interval(
        lambda t: kernel_general(mu, spec, t, validate=False),
        mu.a,
        mu.b,
        q,
        breakpoints=mu.atom_locations(),
        seeds=kernel_seeds,
    )
    value = apply_functional(mu, f)
    return _make_report(rule, p, value, dnorm, knorm)


def holder_bound_zeta(mu: Measure, params: ZetaParams, f, p,
                      rule=None, validate=True) -> BoundReport:
    """Series-kernel variant: the operator image is f^(n) - gamma f^(k)."""
    p = _parse_exponent(p)
    n, k, gamma = params.n, params.k, params.gamma
    if f.max_order < n:
        raise OrderError(f"function exposes order {f.max_order} < n = {n}")
    if validate:
        _validate_zeta_conditions(mu, n, k, gamma)
    q = conjugate_exponent(p)
    dnorm = norm_on_interval(
        lambda t: f.derivative(n, t) - gamma * f.derivative(k, t), mu.a, mu.b, p
    )
    knorm = norm_on_interval(
        lambda t: kernel_zeta(mu, n, k, gamma, t, validate=False),
        mu.a,
        mu.b,
        q,
        breakpoints=mu.atom_locations(),
    )
    value = apply_functional(mu, f)
    return _make_report(rule or f"zeta:{n},{k},{gamma:g}", p, value, dnorm, knorm)


@dataclass(frozen=True)
class SignCheck:
    verdict: str  # "nonnegative" | "nonpositive" | "inconclusive"
    functional_value: float
    consistent: bool


def _sign_class(values, tol):
    lo = min(values)
    hi = max(values)
    if lo >= -tol:
        return 1
    if hi <= tol:
        return -1
    return 0


def sign_inequality_check(mu: Measure, spec: CharacteristicSpec, f,
                          validate=True) -> SignCheck:
    """Sample the kernel and the operator image on a 513-point grid; when
    both are one-signed the functional value must carry the product sign."""
    if validate:
        _validate_spectral(mu, spec)
    xs = np.linspace(mu.a, mu.b, 513)
    gvals = [kernel_general(mu, spec, t, validate=False) for t in xs]
    dvals = [apply_Dc(spec, f, t) for t in xs]
    g_tol = 1e-12 * max(1.0, max(abs(v) for v in gvals))
    d_tol = 1e-12 * max(1.0, max(abs(v) for v in dvals))
    sg = _sign_class(gvals, g_tol)
    sd = _sign_class(dvals, d_tol)
    value = apply_functional(mu, f)
    if sg == 0 or sd == 0:
        return SignCheck("inconclusive", value, True)
    if sg * sd > 0:
        return SignCheck("nonnegative", value, value >= -1e-12)
    return SignCheck("nonpositive", value, value <= 1e-12)


# -- closed-form constants -------------------------------------------------------


def trapezoid_bound_constants(a: float, b: float, n: int):
    """(L1 kernel norm, sup kernel norm) of the trapezoid-family kernel."""
    if n < 0:
        raise InputDomainError("n must be >= 0")
    width = float(b) - float(a)
    if width <= 0:
        raise InputDomainError("need a < b")
    if n == 0:
        return width**2 / 12.0, width / 8.0
    tau = tan_fixed_point(n)
    l1 = (n + 1) * n * math.pi / (2.0 * tau**3) * width**2
    linf = (1.0 + abs(math.cos(tau))) / (4.0 * tau * abs(math.sin(tau))) * width
    return l1, linf


def simpson_bound_constants(a: float, b: float, u):
    """(sup kernel norm, L1 kernel norm) of the extended Simpson kernel.

    The sup norm pairs with the L1 norm of the operator image and vice
    versa.  Both forms are series-stabilized so the classical u -> 0 limit
    is observable well below sqrt(machine epsilon).
    """
    param = _as_param(u)
    w, v = param.w, param.v
    width = float(b) - float(a)
    if width <= 0:
        raise InputDomainError("need a < b")
    mag2 = w * w + v * v
    cross = _sinh_cross_difference(w, v)
    sup_c = width**3 * cross**2 / (
        32.0 * mag2**2 * w * v * math.sinh(w) * math.sin(v)
    )
    dalpha, dbeta = simpson_limit_deviation(param)
    one_c = width**4 * (2.0 * dalpha + dbeta) / (16.0 * mag2**2)
    return sup_c, one_c


def classical_simpson_report(a: float, b: float, f, p) -> BoundReport:
    """Classical Simpson remainder with the sharp 1/1152 and 1/2880 constants."""
    p = _parse_exponent(p)
    if p == 2.0:
        raise InputDomainError("classical Simpson bounds use p = 1 or p = inf")
    if f.max_order < 4:
        raise OrderError("classical Simpson needs four derivatives")
    a = float(a)
    b = float(b)
    if not a < b:
        raise InputDomainError("need a < b")
    mid = 0.5 * (a + b)
    exact = f.integral(a, b)
    if exact is None:
        exact = integrate_adaptive(f, a, b, tol=1e-12).value
    value = f(a) / 6.0 + 2.0 * f(mid) / 3.0 + f(b) / 6.0 - exact / (b - a)
    dnorm = norm_on_interval(lambda t: f.derivative(4, t), a, b, p)
    knorm = (b - a) ** 3 / 1152.0 if p == 1.0 else (b - a) ** 4 / 2880.0
    return _make_report("simpson-classical", p, value, dnorm, knorm)
