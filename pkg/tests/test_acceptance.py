"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

import quadfact as qf
from quadfact.bounds import norm_on_interval, sup_norm_argmax, trapezoid_bound_constants
from quadfact.charode import taylor_polynomial_part, _solution_antiderivative
from quadfact.kernels import cotangent_chain_holds
from quadfact.rootfind import (
    hyperbolic_ratio_inequalities,
    trigonometric_ratio_inequalities,
)

A, B = 0.0, 1.0


@contextmanager
def criterion(num, text):
    try:
        yield
    except Exception:
        print(f"criterion {num:2d} FAIL: {text}")
        raise
    print(f"criterion {num:2d} PASS: {text}")


def test_criterion_1_factorization_identity():
    with criterion(1, "factorization identity over the full rule matrix"):
        start = time.perf_counter()
        rules = qf.verification_matrix(A, B, seed=0)
        funcs = qf.builtin_test_functions(seed=0)
        pairs = 0
        for rule in rules:
            for f in funcs:
                rec = rule.verify(f, tol=1e-9)
                assert rec.abs_err <= 1e-9 * (1.0 + abs(rec.lhs)), (
                    rule.name,
                    f.name,
                    rec.abs_err,
                )
                pairs += 1
        elapsed = time.perf_counter() - start
        assert pairs >= 60
        assert elapsed < 10.0, f"matrix took {elapsed:.1f}s"


def test_criterion_2_trapezoid_exact_constants():
    with criterion(2, "classical trapezoid kernel norms are 1/12 and 1/8"):
        rule = qf.trapezoid_rule(A, B, 0)
        kern = lambda t: rule.kernel(t, validate=False)
        l1 = norm_on_interval(kern, A, B, 1)
        linf = norm_on_interval(kern, A, B, "inf")
        assert abs(l1 - 1.0 / 12.0) <= 1e-12
        assert abs(linf - 1.0 / 8.0) <= 1e-12
        assert trapezoid_bound_constants(A, B, 0) == (1.0 / 12.0, 1.0 / 8.0)


def test_criterion_3_sharpened_trapezoid_constants():
    with criterion(3, "sharpened trapezoid constants for n = 1, 2, 3"):
        for n in (1, 2, 3):
            tau = qf.tan_fixed_point(n)
            l1_closed = (n + 1) * n * math.pi / (2.0 * tau**3)
            linf_closed = (1.0 + abs(math.cos(tau))) / (4.0 * tau * abs(math.sin(tau)))
            rule = qf.trapezoid_rule(A, B, n)
            kern = lambda t: rule.kernel(t, validate=False)
            zeros = [j * math.pi / tau for j in range(1, n + 1)]
            zeros += [1.0 - j * math.pi / tau for j in range(1, n + 1)]
            l1 = norm_on_interval(kern, A, B, 1, breakpoints=zeros)
            linf = norm_on_interval(kern, A, B, "inf")
            assert abs(l1 - l1_closed) <= 1e-9 * l1_closed, n
            assert abs(linf - linf_closed) <= 1e-9 * linf_closed, n


def test_criterion_4_tangent_fixed_points():
    with criterion(4, "tangent fixed points to 1e-12 residual, n <= 10"):
        for n in range(11):
            tau = qf.tan_fixed_point(n)
            assert abs(math.tan(tau) - tau) <= 1e-12 * (1.0 + tau)
        # independent bisection oracle for tau_1
        lo, hi = math.pi + 1e-9, 1.5 * math.pi - 1e-9
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if math.tan(mid) - mid > 0:
                hi = mid
            else:
                lo = mid
        oracle = 0.5 * (lo + hi)
        assert abs(qf.tan_fixed_point(1) - oracle) <= 1e-9
        assert abs(qf.tan_fixed_point(1) - 4.493409457909) <= 1e-9


def test_criterion_5_simpson_kernel_norms():
    with criterion(5, "extended Simpson kernel norms match the closed forms"):
        rng = np.random.default_rng(2024)
        for _ in range(5):
            u = qf.SimpsonParam(
                float(rng.uniform(0.3, 2.2)),
                float(rng.uniform(0.3, math.pi - 0.3)),
            )
            sup_c, one_c = qf.simpson_bound_constants(A, B, u)
            kern = lambda t: qf.simpson_kernel(A, B, u, t)
            l1 = norm_on_interval(kern, A, B, 1, breakpoints=[0.5 * (A + B)])
            assert abs(l1 - one_c) <= 1e-9 * one_c, (u.w, u.v)
            _, arg = sup_norm_argmax(kern, A, B)
            assert abs(arg - 0.5 * (A + B)) <= 1e-10, (u.w, u.v, arg)


def test_criterion_6_classical_simpson_limit():
    with criterion(6, "u -> 0 limit: weights and constants, quadratic in |u|^2"):
        us = [complex(10.0**-k, 10.0**-k) for k in range(1, 6)]
        mags2 = [abs(u) ** 2 for u in us]
        da = []
        db = []
        for u in us:
            d_alpha, d_beta = qf.simpson_limit_deviation(u)
            alpha, beta = qf.simpson_alpha_beta(u)
            # the stable deviation is consistent with the plain weights
            assert alpha == pytest.approx(1.0 / 6.0 + d_alpha, rel=1e-14)
            assert beta == pytest.approx(2.0 / 3.0 + d_beta, rel=1e-14)
            da.append(abs(d_alpha))
            db.append(abs(d_beta))
        for err, m2 in zip(da, mags2):
            assert err <= 1.0 * m2
        for err, m2 in zip(db, mags2):
            assert err <= 1.0 * m2
        # log-log slope against |u|^2 is 2 (the deviation is quadratic in the
        # convergence measure |u|^2; on the diagonal path the |u|^2 term of
        # the weights vanishes, so against |u| itself the slope would be 4)
        x = np.log(mags2)
        slope_a = np.polyfit(x, np.log(da), 1)[0]
        slope_b = np.polyfit(x, np.log(db), 1)[0]
        assert abs(slope_a - 2.0) <= 0.1, slope_a
        assert abs(slope_b - 2.0) <= 0.1, slope_b
        # bound constants converge to the classical Simpson values
        sup_errs = []
        one_errs = []
        for u, m2 in zip(us, mags2):
            sup_c, one_c = qf.simpson_bound_constants(A, B, u)
            sup_errs.append(abs(sup_c * 1152.0 - 1.0))
            one_errs.append(abs(one_c * 2880.0 - 1.0))
            assert sup_errs[-1] <= 0.5 * m2
            assert one_errs[-1] <= 0.5 * m2
        assert sup_errs[-1] <= 1e-8
        assert one_errs[-1] <= 1e-8


def test_criterion_7_simpson_sharpness():
    with criterion(7, "classical Simpson L-inf bound is attained by x^4"):
        rep = qf.classical_simpson_report(A, B, qf.monomial(4), "inf")
        assert abs(rep.functional_value - 1.0 / 120.0) <= 1e-12 / 120.0
        assert abs(rep.bound - 1.0 / 120.0) <= 1e-12 / 120.0
        assert abs(rep.functional_value / rep.bound - 1.0) <= 1e-12


def test_criterion_8_zeta_suite():
    with criterion(8, "series kernel: initial data, closed forms, scaling"):
        for n, k, gamma in ((2, 0, -1.0), (3, 1, 2.0), (5, 2, -4.0)):
            p = qf.ZetaParams(n, k, gamma)
            for i in range(n + 1):
                assert qf.zeta_derivative(p, i, 0.0) == (1.0 if i == n else 0.0)
        pm = qf.ZetaParams(2, 0, -1.0)
        pp = qf.ZetaParams(2, 0, 1.0)
        for t in np.linspace(0.0, 5.0, 51):
            t = float(t)
            want = 1.0 - math.cos(t)
            got = qf.zeta(pm, t)
            assert abs(got - want) <= 1e-12 * (1.0 + abs(want))
            want = math.cosh(t) - 1.0
            got = qf.zeta(pp, t)
            assert abs(got - want) <= 1e-12 * (1.0 + abs(want))
        rng = np.random.default_rng(6)
        for _ in range(30):
            n = int(rng.integers(1, 6))
            k = int(rng.integers(0, n))
            gamma = float(rng.uniform(0.2, 5.0)) * (1 if rng.random() < 0.5 else -1)
            t = float(rng.uniform(0.0, 2.0))
            root = abs(gamma) ** (1.0 / (n - k))
            ref = qf.ZetaParams(n, k, math.copysign(1.0, gamma))
            lhs = qf.zeta(qf.ZetaParams(n, k, gamma), t)
            rhs = root ** (-n) * qf.zeta(ref, root * t)
            assert abs(lhs - rhs) <= 1e-11 * (1.0 + abs(rhs))


def test_criterion_9_inequality_suite():
    with criterion(9, "hyperbolic/trigonometric ratio bounds, cotangent chain"):
        rng = np.random.default_rng(9)
        for t in rng.uniform(1e-9, 20.0, size=200):
            assert hyperbolic_ratio_inequalities(float(t))
        for t in rng.uniform(1e-9, math.pi - 1e-9, size=200):
            assert trigonometric_ratio_inequalities(float(t))
        for _ in range(200):
            w = float(rng.uniform(1e-6, 8.0))
            v = float(rng.uniform(1e-6, math.pi - 1e-6))
            s = float(rng.uniform(1e-6, 1.0 - 1e-6))
            assert cotangent_chain_holds(w, v, s)


def test_criterion_10_holder_validity():
    with criterion(10, "200 random bound reports hold; sign verdicts consistent"):
        rng = np.random.default_rng(10)
        rules = [
            qf.trapezoid_rule(A, B, 0),
            qf.trapezoid_rule(A, B, 1),
            qf.trapezoid_rule(A, B, 2),
            qf.trapezoid_multi_rule(A, B, [0, 1]),
            qf.simpson_rule(A, B, qf.SimpsonParam(0.8, 1.1)),
            qf.simpson_rule(A, B, qf.SimpsonParam(1.7, 2.4)),
            qf.zeta_trapezoid_rule(A, B),
            qf.zeta_trapezoid_rule(A, B, 2, 0, 0.0),
        ]
        funcs = qf.builtin_test_functions(seed=123, n_random=4)
        exponents = (1, 2, "inf")
        for _ in range(200):
            rule = rules[rng.integers(0, len(rules))]
            f = funcs[rng.integers(0, len(funcs))]
            p = exponents[rng.integers(0, 3)]
            rep = rule.bound(f, p)
            assert rep.holds, (rule.name, f.name, p)
        mu = qf.trapezoid_measure(A, B)
        spec0 = qf.coeffs_from_roots([(0.0, 2)])
        for f in funcs:
            check = qf.sign_inequality_check(mu, spec0, f)
            assert check.consistent, f.name


def test_criterion_11_mean_value_search():
    with criterion(11, "mean-value points: interior location, 1e-10 residual"):
        rng = np.random.default_rng(11)
        spec_pool = [
            qf.coeffs_from_roots([(0.0, 2)]),
            qf.coeffs_from_roots([(0.0, 3)]),
            qf.coeffs_from_roots([(0.0, 4)]),
            qf.coeffs_from_roots([(1.5j, 1), (-1.5j, 1)]),
            qf.coeffs_from_roots([(0.6, 1), (-0.9, 1)]),
            qf.coeffs_from_roots([(0.0, 2), (2j, 1), (-2j, 1)]),
        ]
        done = 0
        while done < 20:
            spec = spec_pool[rng.integers(0, len(spec_pool))]
            f = qf.Combination(
                [
                    (float(rng.uniform(0.5, 2.0)), qf.monomial(int(rng.integers(2, 6)))),
                    (float(rng.uniform(-1.0, 1.0)), qf.Exponential(0.5)),
                    (float(rng.uniform(-0.5, 0.5)), qf.Sine(1.0)),
                ]
            )
            a = float(rng.uniform(-0.3, 0.3))
            x = a + float(rng.uniform(0.4, 1.2))
            xi = qf.find_mean_value_point(spec, f, a, x)
            poly = taylor_polynomial_part(spec, f, a, x)
            remainder = f(x) - poly
            weight = _solution_antiderivative(spec).evaluate_real(x - a)
            residual = abs(qf.apply_Dc(spec, f, xi) * weight - remainder)
            assert a < xi < x
            assert residual <= 1e-10 * (1.0 + abs(remainder))
            done += 1
