"""Built-in quadrature-remainder rules and the verification matrix.

A rule couples a measure with the operator annihilating its spectral roots.
String selectors (``trap:1``, ``trap-multi:0,1``, ``simpson:0.8,1.2``,
``simpson-classical``, ``zeta:2,0,-80.76``) are shared by the CLI and the
test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import (
    BoundReport,
    classical_simpson_report,
    holder_bound,
    holder_bound_zeta,
)
from .charode import CharacteristicSpec, ExpPolynomial, coeffs_from_roots
from .errors import InputDomainError
from .functions import Cosine, ExpPolyFunction, Exponential, Sine, monomial
from .kernels import SimpsonParam, kernel_general, kernel_zeta, simpson_alpha_beta
from .measure import Measure
from .oracle import verify_factorization, verify_factorization_zeta
from .rootfind import tan_fixed_point
from .zetafun import ZetaParams

__all__ = [
    "Rule",
    "trapezoid_measure",
    "simpson_measure",
    "trapezoid_rule",
    "trapezoid_multi_rule",
    "simpson_rule",
    "simpson_classical_rule",
    "zeta_trapezoid_rule",
    "parse_rule",
    "builtin_test_functions",
    "verification_matrix",
]


def trapezoid_measure(a: float, b: float) -> Measure:
    """Remainder of the trapezoid value against the interval average."""
    return Measure(a, b, atoms=((a, 0.5), (b, 0.5)), density=-1.0 / (b - a))


def simpson_measure(a: float, b: float, param: SimpsonParam) -> Measure:
    """Remainder of the u-weighted endpoint/midpoint rule."""
    alpha, beta = simpson_alpha_beta(param)
    return Measure(
        a,
        b,
        atoms=((a, alpha), (0.5 * (a + b), beta), (b, alpha)),
        density=-1.0 / (b - a),
    )


def _trapezoid_roots(a: float, b: float, indices):
    roots = []
    for n in indices:
        if n == 0:
            roots.append((0.0 + 0.0j, 2))
        else:
            lam = 2.0 * tan_fixed_point(n) / (b - a)
            roots.append((1j * lam, 1))
            roots.append((-1j * lam, 1))
    return roots


@dataclass(frozen=True)
class Rule:
    """A named measure/operator pairing with uniform verify/bound entry points."""

    name: str
    kind: str  # "general" | "zeta" | "simpson-classical"
    mu: Measure | None
    spec: CharacteristicSpec | None = None
    zeta_params: ZetaParams | None = None
    a: float = 0.0
    b: float = 1.0
    kernel_seeds: tuple[float, ...] = ()  # analytic sup-norm candidates

    def kernel(self, t: float, validate: bool = True) -> float:
        if self.kind == "general":
            return kernel_general(self.mu, self.spec, t, validate=validate)
        if self.kind == "zeta":
            zp = self.zeta_params
            return kernel_zeta(self.mu, zp.n, zp.k, zp.gamma, t, validate=validate)
        raise InputDomainError(f"rule {self.name} has no pointwise kernel")

    def bound(self, f, p, validate: bool = True) -> BoundReport:
        if self.kind == "general":
            return holder_bound(self.mu, self.spec, f, p, rule=self.name,
                                validate=validate, kernel_seeds=self.kernel_seeds)
        if self.kind == "zeta":
            return holder_bound_zeta(self.mu, self.zeta_params, f, p,
                                     rule=self.name, validate=validate)
        return classical_simpson_report(self.a, self.b, f, p)

    def verify(self, f, tol: float = 1e-9, validate: bool = True):
        if self.kind == "general":
            return verify_factorization(self.mu, self.spec, f, tol=tol,
                                        rule_name=self.name, validate=validate)
        if self.kind == "zeta":
            return verify_factorization_zeta(self.mu, self.zeta_params, f,
                                             tol=tol, rule_name=self.name,
                                             validate=validate)
        raise InputDomainError(f"rule {self.name} has no factorization form")


def _trapezoid_seeds(a: float, b: float, indices):
    """Kernel extrema sit at mid - k*pi/lam for |k| <= n (largest index)."""
    mid = 0.5 * (a + b)
    seeds = {mid}
    for n in indices:
        if n == 0:
            continue
        lam = 2.0 * tan_fixed_point(n) / (b - a)
        for k in range(-n, n + 1):
            seeds.add(mid - k * math.pi / lam)
    return tuple(sorted(seeds))


def trapezoid_rule(a: float, b: float, n: int) -> Rule:
    if n < 0:
        raise InputDomainError("trapezoid index must be >= 0")
    spec = coeffs_from_roots(_trapezoid_roots(a, b, [n]))
    return Rule(name=f"trap:{n}", kind="general", mu=trapezoid_measure(a, b),
                spec=spec, a=a, b=b, kernel_seeds=_trapezoid_seeds(a, b, [n]))


def trapezoid_multi_rule(a: float, b: float, indices) -> Rule:
    idx = sorted(int(i) for i in indices)
    if len(set(idx)) != len(idx):
        raise InputDomainError("indices must be distinct")
    spec = coeffs_from_roots(_trapezoid_roots(a, b, idx))
    name = "trap-multi:" + ",".join(str(i) for i in idx)
    return Rule(name=name, kind="general", mu=trapezoid_measure(a, b),
                spec=spec, a=a, b=b, kernel_seeds=_trapezoid_seeds(a, b, idx))


def simpson_rule(a: float, b: float, param: SimpsonParam) -> Rule:
    lam = param.lam(a, b)
    roots = [(lam, 1), (-lam, 1), (lam.conjugate(), 1), (-lam.conjugate(), 1)]
    spec = coeffs_from_roots(roots)
    name = f"simpson:{param.w:g},{param.v:g}"
    return Rule(name=name, kind="general", mu=simpson_measure(a, b, param),
                spec=spec, a=a, b=b, kernel_seeds=(0.5 * (a + b),))


def simpson_classical_rule(a: float, b: float) -> Rule:
    return Rule(name="simpson-classical", kind="simpson-classical", mu=None,
                a=a, b=b)


def zeta_trapezoid_rule(a: float, b: float, n: int = 2, k: int = 0,
                        gamma: float | None = None) -> Rule:
    """Series-kernel rule over the trapezoid measure.  The default gamma
    makes the series kernel coincide with the first sharpened trapezoid
    kernel; gamma = 0 gives the classical one."""
    if gamma is None:
        lam = 2.0 * tan_fixed_point(1) / (b - a)
        gamma = -lam * lam
    params = ZetaParams(n, k, gamma)
    name = f"zeta:{params.n},{params.k},{params.gamma:g}"
    return Rule(name=name, kind="zeta", mu=trapezoid_measure(a, b),
                zeta_params=params, a=a, b=b)


def parse_rule(text: str, a: float, b: float) -> Rule:
    """Parse a rule selector string (see module docstring for the forms)."""
    text = text.strip()
    if text == "simpson-classical":
        return simpson_classical_rule(a, b)
    head, sep, args = text.partition(":")
    if not sep:
        raise InputDomainError(f"malformed rule selector {text!r}")
    try:
        if head == "trap":
            return trapezoid_rule(a, b, int(args))
        if head == "trap-multi":
            return trapezoid_multi_rule(a, b, [int(s) for s in args.split(",")])
        if head == "simpson":
            w, v = (float(s) for s in args.split(","))
            return simpson_rule(a, b, SimpsonParam(w, v))
        if head == "zeta":
            fields = args.split(",")
            if len(fields) == 2:  # default gamma: the sharpened trapezoid match
                return zeta_trapezoid_rule(a, b, int(fields[0]), int(fields[1]))
            n, k, gamma = fields
            return zeta_trapezoid_rule(a, b, int(n), int(k), float(gamma))
    except (ValueError, TypeError) as exc:
        raise InputDomainError(f"malformed rule selector {text!r}: {exc}") from exc
    raise InputDomainError(f"unknown rule selector {text!r}")


def random_exppoly_function(rng, max_terms: int = 3, name: str = "exppoly"):
    """Random real-valued exponential polynomial (conjugate-closed terms)."""
    terms = []
    for _ in range(rng.integers(1, max_terms + 1)):
        j = int(rng.integers(0, 3))
        coef = float(rng.uniform(-2.0, 2.0))
        kind = rng.integers(0, 3)
        if kind == 0:
            lam = float(rng.uniform(-2.0, 2.0))
            terms.append((lam, j, coef))
        else:
            om = float(rng.uniform(0.3, 3.0))
            sig = float(rng.uniform(-1.0, 1.0))
            lam = complex(sig, om)
            half = 0.5 * coef
            terms.append((lam, j, half))
            terms.append((lam.conjugate(), j, half))
    return ExpPolyFunction(ExpPolynomial(terms), name=name)


def builtin_test_functions(seed: int = 0, monomial_degree: int = 6,
                           n_random: int = 2):
    """The standard verification set: monomials, exponentials, the circular
    pair, and seeded random exponential polynomials."""
    funcs = [monomial(m) for m in range(monomial_degree + 1)]
    funcs += [Exponential(1.0), Exponential(-1.0), Sine(1.0), Cosine(1.0)]
    rng = np.random.default_rng(seed)
    funcs += [
        random_exppoly_function(rng, name=f"exppoly-{i}") for i in range(n_random)
    ]
    return funcs


def verification_matrix(a: float = 0.0, b: float = 1.0, seed: int = 0):
    """Rules exercised by the factorization identity suite."""
    rules = [
        trapezoid_rule(a, b, 0),
        trapezoid_rule(a, b, 1),
        trapezoid_rule(a, b, 2),
        trapezoid_multi_rule(a, b, [0, 1]),
    ]
    rng = np.random.default_rng(seed)
    for _ in range(5):
        w = float(rng.uniform(0.2, 2.0))
        v = float(rng.uniform(0.2, math.pi - 0.2))
        rules.append(simpson_rule(a, b, SimpsonParam(w, v)))
    rules.append(zeta_trapezoid_rule(a, b))
    rules.append(zeta_trapezoid_rule(a, b, 2, 0, 0.0))
    return rules
