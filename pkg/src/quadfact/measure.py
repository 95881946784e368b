"""Remainder measures: point atoms plus a constant density on [a, b].

A measure here encodes a quadrature remainder functional: the signed sum of
point evaluations together with a constant-density integral.  Its spectral
function (the integral of exp(lam*x) against the measure) is entire; the
roots of the spectral function index the exponential polynomials the
functional annihilates, which is what the kernel construction consumes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InputDomainError, MultiplicityUndeterminedError

__all__ = [
    "Measure",
    "apply_functional",
    "spectral",
    "spectral_derivative",
    "root_multiplicity",
]


@dataclass(frozen=True)
class Measure:
    a: float
    b: float
    atoms: tuple[tuple[float, float], ...] = ()
    density: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(
            self, "atoms", tuple((float(x), float(w)) for x, w in self.atoms)
        )
        object.__setattr__(self, "density", float(self.density))
        if not self.a < self.b:
            raise InputDomainError(f"need a < b, got [{self.a}, {self.b}]")
        for x, _ in self.atoms:
            if not self.a <= x <= self.b:
                raise InputDomainError(f"atom location {x} outside [{self.a}, {self.b}]")
        if self.density == 0.0 and not any(w != 0.0 for _, w in self.atoms):
            raise InputDomainError("measure must be nonzero")

    def to_json(self):
        return {
            "a": self.a,
            "b": self.b,
            "atoms": [{"x": x, "w": w} for x, w in self.atoms],
            "density": self.density,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            a=data["a"],
            b=data["b"],
            atoms=tuple((d["x"], d["w"]) for d in data.get("atoms", [])),
            density=data.get("density", 0.0),
        )

    def atom_locations(self):
        return tuple(x for x, _ in self.atoms)


def apply_functional(mu: Measure, f) -> float:
    """Evaluate the remainder functional: atom sum plus density integral.

    The density integral uses the function's exact antiderivative when one
    is available and falls back to adaptive quadrature otherwise.
    """
    if f.domain is not None and not (f.domain[0] <= mu.a and mu.b <= f.domain[1]):
        raise InputDomainError(
            f"{f.name} not defined on all of [{mu.a}, {mu.b}]"
        )
    total = 0.0
    for x, w in mu.atoms:
        if w != 0.0:
            total += w * f(x)
    if mu.density != 0.0:
        exact = f.integral(mu.a, mu.b)
        if exact is None:
            from .oracle import integrate_adaptive

            exact = integrate_adaptive(f, mu.a, mu.b, tol=1e-12).value
        total += mu.density * exact
    return total


def _expm1_over(z: complex) -> complex:
    """(exp(z) - 1) / z, series-stabilized near z = 0."""
    if abs(z) < 0.25:
        term = 1.0 + 0.0j
        total = term
        m = 1
        while True:
            term *= z / (m + 1)
            total += term
            m += 1
            if abs(term) <= 1e-18 * (1.0 + abs(total)) or m > 40:
                return total
    return (cmath.exp(z) - 1.0) / z


def spectral(mu: Measure, lam) -> complex:
    """Integral of exp(lam * x) against the measure; entire in lam."""
    lam = complex(lam)
    total = 0.0 + 0.0j
    for x, w in mu.atoms:
        total += w * cmath.exp(lam * x)
    if mu.density != 0.0:
        width = mu.b - mu.a
        z = lam * width
        total += mu.density * width * cmath.exp(lam * mu.a) * _expm1_over(z)
    return total


def _exp_moment(j: int, lam: complex, a: float, b: float) -> complex:
    """Closed form of the integral of x**j * exp(lam*x) over [a, b].

    Small |lam|*scale uses the lam-power series (the integration-by-parts
    recurrence divides by lam and would amplify cancellation there).
    """
    if lam == 0:
        return complex((b ** (j + 1) - a ** (j + 1)) / (j + 1))
    scale = max(abs(a), abs(b), 1.0)
    if abs(lam) * scale < 1.0:
        total = 0.0 + 0.0j
        lam_pow = 1.0 + 0.0j
        fact = 1.0
        for m in range(0, 200):
            if m > 0:
                lam_pow *= lam
                fact *= m
            term = lam_pow * (b ** (j + m + 1) - a ** (j + m + 1)) / ((j + m + 1) * fact)
            total += term
            if m > 3 and abs(term) <= 1e-18 * (1.0 + abs(total)):
                return total
        return total
    ea, eb = cmath.exp(lam * a), cmath.exp(lam * b)
    val = (eb - ea) / lam
    xa, xb = a, b
    pa, pb = 1.0, 1.0
    for i in range(1, j + 1):
        pa *= xa
        pb *= xb
        val = (pb * eb - pa * ea) / lam - (i / lam) * val
    return val


def spectral_derivative(mu: Measure, lam, j: int) -> complex:
    """j-th derivative of the spectral function: the j-th moment of
    x -> x**j * exp(lam*x) against the measure."""
    if j < 0:
        raise InputDomainError(f"derivative order must be >= 0, got {j}")
    lam = complex(lam)
    total = 0.0 + 0.0j
    for x, w in mu.atoms:
        total += w * x**j * cmath.exp(lam * x)
    if mu.density != 0.0:
        total += mu.density * _exp_moment(j, lam, mu.a, mu.b)
    return total


def _derivative_scale(mu: Measure, lam: complex, j: int) -> float:
    """Cancellation-free magnitude of the j-th spectral derivative's terms."""
    xmax = max(abs(mu.a), abs(mu.b))
    emax = max(math.exp(lam.real * mu.a), math.exp(lam.real * mu.b))
    atom_mass = sum(abs(w) for _, w in mu.atoms)
    dens_mass = abs(mu.density) * (mu.b - mu.a)
    return (atom_mass + dens_mass) * xmax**j * emax


def root_multiplicity(mu: Measure, lam, tol: float = 1e-8, j_max: int = 8) -> int:
    """Smallest j with a non-negligible j-th spectral derivative at ``lam``.

    Returns 0 when lam is not a spectral root at the given tolerance.  The
    tolerance is relative to the largest cancellation-free term magnitude
    seen so far, making the answer invariant under rescaling of [a, b].
    """
    if tol <= 0:
        raise InputDomainError("tol must be positive")
    if j_max < 1:
        raise InputDomainError("j_max must be >= 1")
    lam = complex(lam)
    scale = 0.0
    for j in range(j_max + 1):
        scale = max(scale, _derivative_scale(mu, lam, j))
        if abs(spectral_derivative(mu, lam, j)) > tol * scale:
            return j
    raise MultiplicityUndeterminedError(
        f"all spectral derivatives up to order {j_max} vanish at {lam}"
    )
