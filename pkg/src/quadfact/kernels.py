"""Factorization kernels.

The kernel of a rule is the weight g with
    functional(f) = integral of (operator image of f) * g,
obtained by integrating the shifted characteristic solution against the
measure's tail.  General measures go through the exponential-polynomial
machinery; the trapezoid and Simpson-type families also have closed forms,
kept as independent cross-checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .charode import (
    CharacteristicSpec,
    characteristic_solution,
    demote_real,
    _solution_antiderivative,
)
from .errors import InputDomainError, KernelConditionError, MultiplicityUndeterminedError
from .measure import Measure, root_multiplicity, spectral, spectral_derivative
from .rootfind import tan_fixed_point
from .zetafun import ZetaParams, zeta, zeta_derivative

__all__ = [
    "SimpsonParam",
    "kernel_general",
    "kernel_zeta",
    "trapezoid_kernel_multi",
    "simpson_alpha_beta",
    "simpson_limit_deviation",
    "simpson_kernel",
    "simpson_h",
    "cotangent_chain_holds",
]


@dataclass(frozen=True)
class SimpsonParam:
    """Parameter u = w + iv of the extended Simpson rule.

    The constraints w > 0 and 0 < v < pi keep cosh(u) != cosh(conj(u)),
    so the endpoint/midpoint weights below are well-defined.
    """

    w: float
    v: float

    def __post_init__(self):
        object.__setattr__(self, "w", float(self.w))
        object.__setattr__(self, "v", float(self.v))
        if not self.w > 0:
            raise InputDomainError(f"need w > 0, got {self.w}")
        if not 0 < self.v < math.pi:
            raise InputDomainError(f"need 0 < v < pi, got {self.v}")

    @property
    def u(self) -> complex:
        return complex(self.w, self.v)

    def lam(self, a: float, b: float) -> complex:
        return 2.0 * self.u / (b - a)


def _alpha_beta_direct(w: float, v: float):
    """Weights straight from the defining quotients; the denominator uses
    the identity cosh(u) - cosh(conj u) = 2i sinh(w) sin(v)."""
    u = complex(w, v)
    ub = u.conjugate()
    denom = 2j * math.sinh(w) * math.sin(v)  # cosh(u) - cosh(ub)
    mag2 = w * w + v * v
    a_num = ub * cmath.sinh(u) - u * cmath.sinh(ub)
    alpha = a_num / (2.0 * mag2 * denom)
    b_num = u * cmath.cosh(u) * cmath.sinh(ub) - ub * cmath.cosh(ub) * cmath.sinh(u)
    beta = b_num / (mag2 * denom)
    scale = 1.0 + abs(alpha) + abs(beta)
    return (
        demote_real(alpha, tol=1e-12, scale=scale),
        demote_real(beta, tol=1e-12, scale=scale),
    )


def simpson_limit_deviation(param) -> tuple[float, float]:
    """(alpha - 1/6, beta - 2/3), computed without cancellation.

    For small |u| the naive subtraction loses every significant digit of
    the deviation; this series form keeps full relative accuracy, which is
    what makes the classical-limit convergence rate observable in floats.
    """
    param = _as_param(param)
    w, v = param.w, param.v
    u = param.u
    if abs(u) >= 1.0:
        alpha, beta = _alpha_beta_direct(w, v)
        return alpha - 1.0 / 6.0, beta - 2.0 / 3.0
    u2 = u * u
    upow = u2 * u2
    s2 = 0.0 + 0.0j
    n = 2
    while n <= 80:
        c_n = 1.0 / math.factorial(2 * n + 1) - 1.0 / (3.0 * math.factorial(2 * n))
        term = upow * c_n
        s2 += term
        if n > 3 and abs(term) <= 1e-22 * max(abs(s2), abs(u) ** 4):
            break
        upow *= u2
        n += 1
    den = math.sinh(w) * math.sin(v)  # Im cosh(u), exactly
    dalpha = s2.imag / (2.0 * den)
    dbeta = s2.real - 2.0 * dalpha * math.cosh(w) * math.cos(v)
    return dalpha, dbeta


def _as_param(u) -> SimpsonParam:
    if isinstance(u, SimpsonParam):
        return u
    z = complex(u)
    return SimpsonParam(z.real, z.imag)


def simpson_alpha_beta(u) -> tuple[float, float]:
    """Endpoint and midpoint weights (alpha_u, beta_u) of the extended rule."""
    param = _as_param(u)
    if abs(param.u) < 1.0:
        da, db = simpson_limit_deviation(param)
        return 1.0 / 6.0 + da, 2.0 / 3.0 + db
    return _alpha_beta_direct(param.w, param.v)


def _sinh_cross_difference(w: float, v: float) -> float:
    """v*sinh(w) - w*sin(v), series-stabilized for small arguments."""
    if w * w + v * v >= 1.0:
        return v * math.sinh(w) - w * math.sin(v)
    total = 0.0
    w2 = w * w
    v2 = v * v
    wp = w2  # w^(2n)
    vp = -v2  # (-1)^n v^(2n)
    vmag = v2
    n = 1
    while n <= 40:
        total += w * v * (wp - vp) / math.factorial(2 * n + 1)
        tail = w * v * (wp * w2 + vmag * v2) / math.factorial(2 * n + 3)
        if tail <= 1e-22 * abs(total):
            break
        wp *= w2
        vp *= -v2
        vmag *= v2
        n += 1
    return total


def simpson_kernel(a: float, b: float, u, t: float) -> float:
    """Closed two-branch form of the extended Simpson kernel at ``t``."""
    param = _as_param(u)
    a = float(a)
    b = float(b)
    t = float(t)
    if not a <= t <= b:
        raise InputDomainError(f"t = {t} outside [{a}, {b}]")
    alpha, beta = simpson_alpha_beta(param)
    lam = param.lam(a, b)
    lamb = lam.conjugate()
    d2 = lam * lam - lamb * lamb

    def omega(s):
        return (cmath.sinh(lam * s) / lam - cmath.sinh(lamb * s) / lamb) / d2

    def omega_int(s):
        return (
            (cmath.cosh(lam * s) - 1.0) / (lam * lam)
            - (cmath.cosh(lamb * s) - 1.0) / (lamb * lamb)
        ) / d2

    mid = 0.5 * (a + b)
    parts = [alpha * omega(b - t), -omega_int(b - t) / (b - a)]
    if t <= mid:
        parts.append(beta * omega(mid - t))
    total = sum(parts)
    scale = 1.0 + sum(abs(p) for p in parts)
    return demote_real(total, tol=1e-11, scale=scale)


def simpson_h(u, s: float) -> float:
    """Real profile of the kernel along the upper half interval; h is 0 at
    s = 0, strictly increasing, and the kernel at
    s*(a+b)/2 + (1-s)*b equals (b-a)^3 h(s) / (128 (w^2+v^2)^2 w v sinh(w) sin(v))."""
    param = _as_param(u)
    w, v = param.w, param.v
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise InputDomainError(f"s = {s} outside [0, 1]")
    return (
        4.0 * w * w * math.cosh((1.0 - s) * w) * math.sin(v) * math.sin(s * v)
        + 4.0 * v * v * math.cos((1.0 - s) * v) * math.sinh(s * w) * math.sinh(w)
        + 4.0 * w * v * math.sin(v) * math.cos(s * v) * math.sinh((1.0 - s) * w)
        + 4.0 * w * v * math.sinh(w) * math.cosh(s * w) * math.sin((1.0 - s) * v)
        - 8.0 * w * v * math.sinh(w) * math.sin(v)
    )


# -- general kernels ------------------------------------------------------------


_validated: set[tuple[Measure, CharacteristicSpec]] = set()


def _validate_spectral(mu: Measure, spec: CharacteristicSpec, tol=1e-8):
    key = (mu, spec)
    if key in _validated:
        return
    for lam, mult in spec.roots:
        try:
            observed = root_multiplicity(mu, lam, tol=tol, j_max=mult + 2)
        except MultiplicityUndeterminedError:
            continue  # even deeper root than required
        if observed < mult:
            raise KernelConditionError(
                f"root {lam} has spectral multiplicity {observed} < {mult}; "
                "the measure does not annihilate the operator's null space"
            )
    _validated.add(key)


def kernel_general(mu: Measure, spec: CharacteristicSpec, t: float,
                   validate: bool = True) -> float:
    """Kernel value at ``t`` for an arbitrary atoms+density measure.

    The spectral precondition (every root of the operator is a root of the
    measure's spectral function with at least the requested multiplicity)
    is checked once per (measure, spec) pair; pass ``validate=False`` to
    skip it for rules whose roots are known analytically.
    """
    if validate:
        _validate_spectral(mu, spec)
    omega = characteristic_solution(spec)
    anti = _solution_antiderivative(spec)
    t = float(t)
    total = 0.0 + 0.0j
    scale = 1.0
    for x, w in mu.atoms:
        if x >= t and w != 0.0:
            total += w * omega.evaluate(x - t)
            scale += abs(w) * omega.magnitude_at(x - t)
    if mu.density != 0.0:
        total += mu.density * anti.evaluate(mu.b - t)
        scale += abs(mu.density) * anti.magnitude_at(mu.b - t)
    return demote_real(total, tol=1e-11, scale=scale)


def _zeta_condition_scale(mu: Measure, lam: complex, j: int) -> float:
    xmax = max(abs(mu.a), abs(mu.b), 1.0)
    emax = max(math.exp(lam.real * mu.a), math.exp(lam.real * mu.b))
    mass = sum(abs(w) for _, w in mu.atoms) + abs(mu.density) * (mu.b - mu.a)
    return mass * xmax**j * emax


_zeta_validated: set[tuple[Measure, int, int, float]] = set()


def _validate_zeta_conditions(mu: Measure, n: int, k: int, gamma: float, tol=1e-8):
    key = (mu, n, k, gamma)
    if key in _zeta_validated:
        return
    # vanishing moments below k
    moment_orders = range(n if gamma == 0.0 else k)
    for i in moment_orders:
        moment = spectral_derivative(mu, 0.0, i)
        if abs(moment) > tol * _zeta_condition_scale(mu, 0.0, i):
            raise KernelConditionError(
                f"moment of order {i} does not vanish: {moment:.3e}"
            )
    if gamma != 0.0:
        p = n - k
        phase = cmath.phase(complex(gamma))
        if phase < 0.0:
            phase += 2.0 * math.pi
        base = abs(gamma) ** (1.0 / p) * cmath.exp(1j * phase / p)
        for j in range(p):
            root = base * cmath.exp(2j * math.pi * j / p)
            val = spectral(mu, root)
            if abs(val) > tol * _zeta_condition_scale(mu, root, 0):
                raise KernelConditionError(
                    f"spectral function does not vanish at {root}: {val:.3e}"
                )
    _zeta_validated.add(key)


def kernel_zeta(mu: Measure, n: int, k: int, gamma: float, t: float,
                validate: bool = True) -> float:
    """Kernel of the series-family rule: tail integral of the shifted
    derivative of the series solution against the measure."""
    params = ZetaParams(n, k, gamma)
    if validate:
        _validate_zeta_conditions(mu, params.n, params.k, params.gamma)
    t = float(t)
    total = 0.0
    for x, w in mu.atoms:
        if x >= t and w != 0.0:
            total += w * zeta_derivative(params, 1, x - t)
    if mu.density != 0.0:
        total += mu.density * zeta(params, mu.b - t)
    return total


def trapezoid_kernel_multi(a: float, b: float, indices, t: float) -> float:
    """Closed form of the multi-root trapezoid kernel at ``t``.

    ``indices`` selects tangent fixed points (strictly increasing, >= 0);
    index 0 contributes the parabolic branch, the rest contribute sine
    products.
    """
    idx = [int(i) for i in indices]
    if not idx:
        raise InputDomainError("need at least one index")
    if any(i < 0 for i in idx) or any(x >= y for x, y in zip(idx, idx[1:])):
        raise InputDomainError("indices must be strictly increasing and >= 0")
    a = float(a)
    b = float(b)
    t = float(t)
    taus = [tan_fixed_point(i) for i in idx]
    lams = [2.0 * tau / (b - a) for tau in taus]

    def q_at(j):
        prod = 1.0
        for ell, lam_ell in enumerate(lams):
            if ell != j:
                prod *= lam_ell**2 - lams[j] ** 2
        return prod

    total = 0.0
    start = 0
    if idx[0] == 0:
        total += (b - t) * (t - a) / (2.0 * q_at(0) * (b - a))
        start = 1
    for j in range(start, len(lams)):
        lam = lams[j]
        total += (
            math.sin(lam * (b - t) / 2.0)
            * math.sin(lam * (t - a) / 2.0)
            / (lam * q_at(j) * math.sin(taus[j]))
        )
    return total


def cotangent_chain_holds(w: float, v: float, s: float) -> bool:
    """v(cot(sv) - cot(v)) > (1-s)/s > w(coth(sw) - coth(w))
    for w > 0, v in (0, pi), s in (0, 1)."""
    if not (w > 0 and 0 < v < math.pi and 0 < s < 1):
        raise InputDomainError("need w > 0, v in (0, pi), s in (0, 1)")
    left = v * (math.cos(s * v) / math.sin(s * v) - math.cos(v) / math.sin(v))
    middle = (1.0 - s) / s
    right = w * (math.cosh(s * w) / math.sinh(s * w) - math.cosh(w) / math.sinh(w))
    return left > middle > right
