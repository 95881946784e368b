"""Test functions with exact derivatives of every required order.

Each family evaluates f^(j)(x) in closed form (no numerical differentiation)
and, where possible, exposes an exact antiderivative-based interval integral
so that remainder functionals of built-in functions are computed exactly.
"""

from __future__ import annotations

import math

from .charode import ExpPolynomial
from .errors import InputDomainError, OrderError

__all__ = [
    "SmoothFunction",
    "Polynomial",
    "monomial",
    "Exponential",
    "Sine",
    "Cosine",
    "ExpPolyFunction",
    "Combination",
]

# entire functions expose "any" derivative order
UNBOUNDED_ORDER = 2**31


class SmoothFunction:
    """Base class: a function on the line with exact derivatives.

    Subclasses set ``max_order`` and ``name`` and implement
    ``derivative(j, x)``; ``integral(a, b)`` returns an exact value or
    None when no closed form is available.
    """

    max_order: int = 0
    name: str = "f"
    domain: tuple[float, float] | None = None

    def derivative(self, j: int, x: float) -> float:
        raise NotImplementedError

    def __call__(self, x: float) -> float:
        return self.derivative(0, x)

    def integral(self, a: float, b: float):
        return None

    def _check_order(self, j):
        if j < 0:
            raise InputDomainError(f"negative derivative order {j}")
        if j > self.max_order:
            raise OrderError(f"{self.name} exposes derivatives up to {self.max_order}")

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class Polynomial(SmoothFunction):
    """sum_m coeffs[m] * x**m  (coefficients lowest power first)."""

    max_order = UNBOUNDED_ORDER

    def __init__(self, coeffs, name=None):
        self.coeffs = tuple(float(c) for c in coeffs)
        if not self.coeffs:
            self.coeffs = (0.0,)
        self.name = name or "poly:" + ",".join(f"{c:g}" for c in self.coeffs)

    def derivative(self, j, x):
        self._check_order(j)
        if j >= len(self.coeffs):
            return 0.0
        acc = 0.0
        for m in range(len(self.coeffs) - 1, j - 1, -1):
            fall = 1.0
            for i in range(j):
                fall *= m - i
            acc = acc * x + self.coeffs[m] * fall
        return acc

    def integral(self, a, b):
        acc = 0.0
        for m, c in enumerate(self.coeffs):
            acc += c * (b ** (m + 1) - a ** (m + 1)) / (m + 1)
        return acc


def monomial(m: int) -> Polynomial:
    """The power function x**m."""
    return Polynomial([0.0] * m + [1.0], name=f"x^{m}")


class Exponential(SmoothFunction):
    """amplitude * exp(beta * x)."""

    max_order = UNBOUNDED_ORDER

    def __init__(self, beta, amplitude=1.0, name=None):
        self.beta = float(beta)
        self.amplitude = float(amplitude)
        self.name = name or f"exp:{self.beta:g}"

    def derivative(self, j, x):
        self._check_order(j)
        return self.amplitude * self.beta**j * math.exp(self.beta * x)

    def integral(self, a, b):
        if self.beta == 0.0:
            return self.amplitude * (b - a)
        return self.amplitude * (math.exp(self.beta * b) - math.exp(self.beta * a)) / self.beta


class Sine(SmoothFunction):
    """sin(beta * x); the derivative cycle stays exact for all orders."""

    max_order = UNBOUNDED_ORDER

    def __init__(self, beta=1.0, name=None):
        self.beta = float(beta)
        self.name = name or f"sin:{self.beta:g}"

    def derivative(self, j, x):
        self._check_order(j)
        u = self.beta * x
        cycle = (math.sin, math.cos, lambda v: -math.sin(v), lambda v: -math.cos(v))
        return self.beta**j * cycle[j % 4](u)

    def integral(self, a, b):
        if self.beta == 0.0:
            return 0.0
        return (math.cos(self.beta * a) - math.cos(self.beta * b)) / self.beta


class Cosine(SmoothFunction):
    """cos(beta * x)."""

    max_order = UNBOUNDED_ORDER

    def __init__(self, beta=1.0, name=None):
        self.beta = float(beta)
        self.name = name or f"cos:{self.beta:g}"

    def derivative(self, j, x):
        self._check_order(j)
        u = self.beta * x
        cycle = (math.cos, lambda v: -math.sin(v), lambda v: -math.cos(v), math.sin)
        return self.beta**j * cycle[j % 4](u)

    def integral(self, a, b):
        if self.beta == 0.0:
            return b - a
        return (math.sin(self.beta * b) - math.sin(self.beta * a)) / self.beta


class ExpPolyFunction(SmoothFunction):
    """Real-valued wrapper around an ExpPolynomial (conjugate-closed terms)."""

    max_order = UNBOUNDED_ORDER

    def __init__(self, expoly: ExpPolynomial, name="exppoly"):
        self.expoly = expoly
        self.name = name
        self._chain = [expoly]

    def _nth(self, j):
        while len(self._chain) <= j:
            self._chain.append(self._chain[-1].derivative())
        return self._chain[j]

    def derivative(self, j, x):
        self._check_order(j)
        return self._nth(j).evaluate_real(x)

    def integral(self, a, b):
        anti = self.expoly.antiderivative()
        return anti.evaluate_real(b) - anti.evaluate_real(a)


class Combination(SmoothFunction):
    """Finite linear combination  sum_i weight_i * f_i."""

    def __init__(self, parts, name=None):
        self.parts = tuple((float(w), f) for w, f in parts)
        if not self.parts:
            raise InputDomainError("empty combination")
        self.max_order = min(f.max_order for _, f in self.parts)
        self.name = name or "+".join(
            f"{w:g}*{f.name}" for w, f in self.parts
        )

    def derivative(self, j, x):
        self._check_order(j)
        return sum(w * f.derivative(j, x) for w, f in self.parts)

    def integral(self, a, b):
        total = 0.0
        for w, f in self.parts:
            part = f.integral(a, b)
            if part is None:
                return None
            total += w * part
        return total
