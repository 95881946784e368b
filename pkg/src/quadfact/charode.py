"""Exponential polynomials, constant-coefficient operators, and their
characteristic solutions.

An exponential polynomial is a finite sum of terms ``c * t**j * exp(lam*t)``
with complex ``lam`` and ``c``.  The family is closed under differentiation,
antidifferentiation and argument shifts, which is what makes every kernel in
this package available in closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend
from .errors import (
    CoincidentRootsError,
    ComplexResidueError,
    InputDomainError,
    OrderError,
)

__all__ = [
    "ExpPolynomial",
    "CharacteristicSpec",
    "coeffs_from_roots",
    "characteristic_solution",
    "apply_Dc",
    "taylor_polynomial_part",
    "taylor_expansion",
    "demote_real",
]


def demote_real(z, tol=1e-10, scale=None):
    """Return the real part of ``z`` if its imaginary part is negligible.

    ``scale`` defaults to ``1 + |Re z|``; a larger imaginary residue raises
    instead of silently truncating.
    """
    z = complex(z)
    if scale is None:
        scale = 1.0 + abs(z.real)
    if abs(z.imag) > tol * scale:
        raise ComplexResidueError(
            f"imaginary residue {z.imag:.3e} exceeds {tol:.1e} * {scale:.3e}"
        )
    return z.real


class ExpPolynomial:
    """Canonical merged form of  sum_i c_i * t**j_i * exp(lam_i * t).

    Instances are immutable; all operations return new objects.
    """

    __slots__ = ("terms", "_arrays")

    def __init__(self, terms=()):
        merged: dict[tuple[complex, int], complex] = {}
        for lam, j, c in terms:
            lam = complex(lam)
            j = int(j)
            if j < 0:
                raise InputDomainError(f"negative power {j}")
            key = (lam, j)
            merged[key] = merged.get(key, 0.0 + 0.0j) + complex(c)
        cleaned = [
            (lam, j, c) for (lam, j), c in merged.items() if c != 0.0
        ]
        cleaned.sort(key=lambda t: (t[0].real, t[0].imag, t[1]))
        object.__setattr__(self, "terms", tuple(cleaned))
        object.__setattr__(self, "_arrays", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExpPolynomial is immutable")

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, ExpPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "ExpPolynomial(0)"
        bits = [f"({c:.6g})*t^{j}*e^({lam:.6g}t)" for lam, j, c in self.terms]
        return "ExpPolynomial(" + " + ".join(bits) + ")"

    def __add__(self, other):
        return ExpPolynomial(self.terms + other.terms)

    def __neg__(self):
        return ExpPolynomial([(lam, j, -c) for lam, j, c in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = complex(scalar)
        return ExpPolynomial([(lam, j, c * s) for lam, j, c in self.terms])

    __rmul__ = __mul__

    # -- evaluation ----------------------------------------------------------

    def _backend_arrays(self):
        arrs = self._arrays
        if arrs is None:
            lam = np.array([t[0] for t in self.terms], dtype=np.complex128)
            jexp = np.array([t[1] for t in self.terms], dtype=np.intc)
            coef = np.array([t[2] for t in self.terms], dtype=np.complex128)
            arrs = (lam, jexp, coef)
            object.__setattr__(self, "_arrays", arrs)
        return arrs

    def evaluate(self, t):
        """Value at scalar ``t`` as a complex number."""
        if not self.terms:
            return 0.0 + 0.0j
        lam, jexp, coef = self._backend_arrays()
        return _backend.expoly_eval(lam, jexp, coef, float(t))

    def evaluate_many(self, ts):
        """Values over an array of abscissae (complex ndarray)."""
        ts = np.asarray(ts, dtype=float)
        if not self.terms:
            return np.zeros(ts.shape, dtype=np.complex128)
        lam, jexp, coef = self._backend_arrays()
        return np.asarray(_backend.expoly_eval_many(lam, jexp, coef, ts))

    def evaluate_real(self, t, tol=1e-10, scale=None):
        """Real value at ``t``; raises if the imaginary residue is large."""
        if scale is None:
            scale = 1.0 + self.magnitude_at(t)
        return demote_real(self.evaluate(t), tol=tol, scale=scale)

    def magnitude_at(self, t):
        """Sum of absolute term values at ``t`` (a cancellation-free scale)."""
        t = float(t)
        total = 0.0
        for lam, j, c in self.terms:
            total += abs(c) * abs(t) ** j * math.exp(lam.real * t)
        return total

    # -- calculus ------------------------------------------------------------

    def derivative(self):
        out = []
        for lam, j, c in self.terms:
            out.append((lam, j, c * lam))
            if j >= 1:
                out.append((lam, j - 1, c * j))
        return ExpPolynomial(out)

    def antiderivative(self):
        """Antiderivative normalized to vanish at t = 0."""
        out = []
        for lam, j, c in self.terms:
            if lam == 0:
                out.append((lam, j + 1, c / (j + 1)))
                continue
            fall = 1.0
            sign = 1.0
            for i in range(j + 1):
                out.append((lam, j - i, c * sign * fall / lam ** (i + 1)))
                sign = -sign
                fall *= j - i
            # cancel the value at 0 contributed by the i = j term
            out.append((0.0, 0, -c * (-1.0) ** j * math.factorial(j) / lam ** (j + 1)))
        return ExpPolynomial(out)

    def shift(self, s):
        """The function t -> self(t - s) as an ExpPolynomial."""
        s = float(s)
        out = []
        for lam, j, c in self.terms:
            base = c * cmath.exp(-lam * s)
            for i in range(j + 1):
                out.append((lam, i, base * math.comb(j, i) * (-s) ** (j - i)))
        return ExpPolynomial(out)

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        return [
            {
                "re_lambda": lam.real,
                "im_lambda": lam.imag,
                "j": j,
                "re_c": c.real,
                "im_c": c.imag,
            }
            for lam, j, c in self.terms
        ]

    @classmethod
    def from_json(cls, data):
        return cls(
            (
                complex(d["re_lambda"], d["im_lambda"]),
                int(d["j"]),
                complex(d["re_c"], d["im_c"]),
            )
            for d in data
        )


# -- characteristic polynomials -----------------------------------------------


def _poly_mul(p, q):
    out = [0.0 + 0.0j] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for k, b in enumerate(q):
            out[i + k] += a * b
    return out


def _poly_from_roots(roots):
    """Monic polynomial coefficients (lowest power first) from (root, mult)."""
    poly = [1.0 + 0.0j]
    for lam, mult in roots:
        for _ in range(mult):
            poly = _poly_mul(poly, [-lam, 1.0 + 0.0j])
    return poly


def _poly_derivative(p):
    return [p[i] * i for i in range(1, len(p))]


def _poly_eval(p, z):
    acc = 0.0 + 0.0j
    for c in reversed(p):
        acc = acc * z + c
    return acc


def _check_roots_distinct(roots):
    lams = [complex(lam) for lam, _ in roots]
    scale = 1.0 + max((abs(l) for l in lams), default=0.0)
    for i in range(len(lams)):
        for k in range(i + 1, len(lams)):
            if abs(lams[i] - lams[k]) < 1e-9 * scale:
                raise CoincidentRootsError(
                    f"roots {lams[i]} and {lams[k]} nearly coincide; "
                    "merge them into a single higher multiplicity"
                )


@dataclass(frozen=True)
class CharacteristicSpec:
    """Root list with multiplicities plus the expanded monic coefficients.

    ``coeffs`` is ordered lowest power first, ``coeffs[-1] == 1``.
    """

    roots: tuple[tuple[complex, int], ...]
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        roots = tuple((complex(l), int(m)) for l, m in self.roots)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if any(m < 1 for _, m in roots):
            raise InputDomainError("multiplicities must be positive")
        _check_roots_distinct(roots)
        n = sum(m for _, m in roots)
        if len(self.coeffs) != n + 1:
            raise InputDomainError("coefficient count does not match total degree")
        if self.coeffs[-1] != 1:
            raise InputDomainError("leading coefficient must be exactly 1")
        expanded = _poly_from_roots(roots)
        scale = max(abs(c) for c in expanded)
        for c_set, c_exp in zip(self.coeffs, expanded):
            if abs(c_set - c_exp) > 1e-12 * max(scale, 1.0):
                raise InputDomainError(
                    "coefficients do not match the expanded root product"
                )

    @property
    def n(self):
        return len(self.coeffs) - 1

    def real_coeffs(self, tol=1e-10):
        """Coefficients demoted to floats (valid for conjugate-closed roots)."""
        scale = max(abs(c) for c in self.coeffs)
        return tuple(demote_real(c, tol=tol, scale=scale) for c in self.coeffs)

    def describe(self):
        bits = [f"({lam:.12g})^{m}" for lam, m in self.roots]
        return "roots " + ", ".join(bits)


def coeffs_from_roots(roots):
    """Build a CharacteristicSpec by expanding the given (root, multiplicity)
    factors; duplicate root values are rejected rather than merged."""
    roots = tuple((complex(l), int(m)) for l, m in roots)
    if not roots:
        raise InputDomainError("at least one root is required")
    _check_roots_distinct(roots)
    return CharacteristicSpec(roots=roots, coeffs=tuple(_poly_from_roots(roots)))


@lru_cache(maxsize=512)
def characteristic_solution(spec: CharacteristicSpec) -> ExpPolynomial:
    """The solution of the operator's homogeneous ODE whose derivatives at 0
    are (0, ..., 0, 1), constructed in closed form from the root data.

    Derivatives of the reciprocal cofactor polynomial are obtained from the
    Leibniz recurrence for (h * P)^(m) = 0, m >= 1, which costs O(m^2)
    arithmetic and avoids symbolic expression swell.
    """
    terms = []
    roots = spec.roots
    for i, (lam_i, m_i) in enumerate(roots):
        others = [r for k, r in enumerate(roots) if k != i]
        p = _poly_from_roots(others)
        # derivatives of P_i at lam_i up to order m_i - 1
        pders = []
        q = p
        for _ in range(m_i):
            pders.append(_poly_eval(q, lam_i))
            q = _poly_derivative(q)
        p0 = pders[0]
        if abs(p0) < 1e-300:
            raise CoincidentRootsError(
                f"cofactor polynomial vanishes at root {lam_i}"
            )
        h = [1.0 / p0]
        for m in range(1, m_i):
            acc = 0.0 + 0.0j
            for r in range(m):
                acc += math.comb(m, r) * h[r] * pders[m - r]
            h.append(-acc / p0)
        for j in range(m_i):
            c = h[m_i - 1 - j] / (
                math.factorial(m_i - 1 - j) * math.factorial(j)
            )
            terms.append((lam_i, j, c))
    return ExpPolynomial(terms)


@lru_cache(maxsize=512)
def _solution_derivatives(spec: CharacteristicSpec):
    """Derivative chain (orders 0..n-1) of the characteristic solution."""
    chain = [characteristic_solution(spec)]
    for _ in range(spec.n - 1):
        chain.append(chain[-1].derivative())
    return tuple(chain)


@lru_cache(maxsize=512)
def _solution_antiderivative(spec: CharacteristicSpec) -> ExpPolynomial:
    return characteristic_solution(spec).antiderivative()


def apply_Dc(spec: CharacteristicSpec, f, t):
    """Apply the constant-coefficient operator sum_i c_i f^(i) at ``t``."""
    n = spec.n
    if f.max_order < n:
        raise OrderError(
            f"function exposes order {f.max_order} < operator order {n}"
        )
    c = spec.real_coeffs()
    t = float(t)
    acc = 0.0
    for i, ci in enumerate(c):
        if ci != 0.0:
            acc += ci * f.derivative(i, t)
    return acc


def taylor_polynomial_part(spec: CharacteristicSpec, f, a, x):
    """Polynomial (non-integral) part of the generalized Taylor expansion."""
    n = spec.n
    if f.max_order < n:
        raise OrderError(
            f"function exposes order {f.max_order} < operator order {n}"
        )
    c = spec.real_coeffs()
    chain = _solution_derivatives(spec)
    dx = float(x) - float(a)
    omega_vals = [chain[i].evaluate_real(dx) for i in range(n)]
    total = 0.0
    for j in range(n):
        inner = 0.0
        for i in range(n - j):
            inner += c[i + j + 1] * omega_vals[i]
        total += f.derivative(j, float(a)) * inner
    return total


def taylor_expansion(spec: CharacteristicSpec, f, a, x, tol=1e-12):
    """Return (polynomial_part, remainder_integral) with
    f(x) = polynomial_part + remainder_integral."""
    from .oracle import integrate_adaptive

    poly = taylor_polynomial_part(spec, f, a, x)
    a = float(a)
    x = float(x)
    if x == a:
        return poly, 0.0
    omega = characteristic_solution(spec)

    def integrand(t):
        return apply_Dc(spec, f, t) * omega.evaluate_real(x - t)

    lo, hi, sign = (a, x, 1.0) if x > a else (x, a, -1.0)
    res = integrate_adaptive(integrand, lo, hi, tol=tol)
    return poly, sign * res.value
