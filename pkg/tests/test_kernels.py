import cmath
import math

import numpy as np
import pytest

import quadfact as qf
from quadfact.errors import InputDomainError, KernelConditionError
from quadfact.kernels import cotangent_chain_holds

A, B = 0.0, 1.0
TRAP = qf.trapezoid_measure(A, B)


def test_kernel_general_parabolic():
    spec = qf.coeffs_from_roots([(0.0, 2)])
    assert qf.kernel_general(TRAP, spec, 0.5) == pytest.approx(0.125, abs=1e-15)
    for t in np.linspace(A, B, 33):
        want = (B - t) * (t - A) / (2.0 * (B - A))
        assert qf.kernel_general(TRAP, spec, float(t)) == pytest.approx(
            want, abs=1e-14
        )


def test_kernel_vanishes_at_right_endpoint():
    spec = qf.coeffs_from_roots([(0.0, 2)])
    assert qf.kernel_general(TRAP, spec, B) == pytest.approx(0.0, abs=1e-15)
    lam = 2.0 * qf.tan_fixed_point(1) / (B - A)
    spec1 = qf.coeffs_from_roots([(1j * lam, 1), (-1j * lam, 1)])
    assert qf.kernel_general(TRAP, spec1, B) == pytest.approx(0.0, abs=1e-15)


def test_kernel_at_endpoint_picks_up_the_atom_for_first_order_operators():
    # measure annihilating exp(lam*x): atom at 0 and a balancing atom at 1
    lam = 0.7
    mu = qf.Measure(A, B, atoms=((A, 1.0), (B, -math.exp(-lam))), density=0.0)
    spec = qf.coeffs_from_roots([(lam, 1)])
    # omega(0) = 1 for a first-order operator, so g(b) is the atom weight at b
    assert qf.kernel_general(mu, spec, B) == pytest.approx(-math.exp(-lam), rel=1e-13)


def test_kernel_general_matches_closed_sine_form():
    lam = 2.0 * qf.tan_fixed_point(1) / (B - A)
    spec = qf.coeffs_from_roots([(1j * lam, 1), (-1j * lam, 1)])
    for t in np.arange(0.1, 0.95, 0.1):
        closed = (
            math.sin(lam * (B - t) / 2.0)
            * math.sin(lam * (t - A) / 2.0)
            / (lam * math.sin(lam * (B - A) / 2.0))
        )
        assert qf.kernel_general(TRAP, spec, float(t)) == pytest.approx(
            closed, abs=1e-11
        )


def test_kernel_validation_rejects_non_annihilated_operator():
    spec = qf.coeffs_from_roots([(1.0, 1)])
    with pytest.raises(KernelConditionError):
        qf.kernel_general(TRAP, spec, 0.5)


def test_kernel_zeta_matches_general_for_matching_gamma():
    lam = 2.0 * qf.tan_fixed_point(1) / (B - A)
    spec = qf.coeffs_from_roots([(1j * lam, 1), (-1j * lam, 1)])
    gamma = -lam * lam
    for t in np.arange(0.1, 0.95, 0.1):
        zk = qf.kernel_zeta(TRAP, 2, 0, gamma, float(t))
        gk = qf.kernel_general(TRAP, spec, float(t))
        assert zk == pytest.approx(gk, abs=1e-11)


def test_kernel_zeta_classical_peano():
    for t in np.arange(0.1, 0.95, 0.1):
        want = (B - t) * (t - A) / (2.0 * (B - A))
        assert qf.kernel_zeta(TRAP, 2, 0, 0.0, float(t)) == pytest.approx(
            want, abs=1e-14
        )
    assert qf.kernel_zeta(TRAP, 2, 0, 0.0, B) == pytest.approx(0.0, abs=1e-15)


def test_kernel_zeta_condition_failure():
    with pytest.raises(KernelConditionError):
        qf.kernel_zeta(TRAP, 2, 0, -4.0, 0.5)
    with pytest.raises(KernelConditionError):
        # trapezoid remainder kills moments 0 and 1 only; order 2 survives
        qf.kernel_zeta(TRAP, 4, 3, 0.0, 0.5)


def test_trapezoid_kernel_multi_single_zero_index():
    assert qf.trapezoid_kernel_multi(A, B, [0], 0.25) == pytest.approx(
        3.0 / 32.0, abs=1e-15
    )


def test_trapezoid_kernel_multi_vanishes_at_endpoints():
    assert qf.trapezoid_kernel_multi(A, B, [1], A) == pytest.approx(0.0, abs=1e-15)
    assert qf.trapezoid_kernel_multi(A, B, [1], B) == pytest.approx(0.0, abs=1e-15)


def test_trapezoid_kernel_multi_matches_general():
    rule = qf.trapezoid_multi_rule(A, B, [0, 1])
    for t in np.arange(0.1, 0.95, 0.1):
        closed = qf.trapezoid_kernel_multi(A, B, [0, 1], float(t))
        assert rule.kernel(float(t)) == pytest.approx(closed, abs=1e-10)


def test_trapezoid_kernel_multi_rejects_bad_indices():
    with pytest.raises(InputDomainError):
        qf.trapezoid_kernel_multi(A, B, [1, 1], 0.5)
    with pytest.raises(InputDomainError):
        qf.trapezoid_kernel_multi(A, B, [], 0.5)


def test_simpson_param_validation():
    with pytest.raises(InputDomainError):
        qf.SimpsonParam(-1.0, 1.0)
    with pytest.raises(InputDomainError):
        qf.SimpsonParam(1.0, math.pi)


def test_alpha_beta_classical_limit():
    alpha, beta = qf.simpson_alpha_beta(complex(1e-4, 1e-4))
    assert alpha == pytest.approx(1.0 / 6.0, abs=1e-7)
    assert beta == pytest.approx(2.0 / 3.0, abs=1e-7)


def test_alpha_beta_realness_and_weight_identity():
    rng = np.random.default_rng(59)
    for _ in range(50):
        w = float(rng.uniform(0.05, 3.0))
        v = float(rng.uniform(0.05, math.pi - 0.05))
        alpha, beta = qf.simpson_alpha_beta(qf.SimpsonParam(w, v))
        assert isinstance(alpha, float) and isinstance(beta, float)
        u = complex(w, v)
        resid = 2.0 * alpha * cmath.cosh(u) + beta - cmath.sinh(u) / u
        assert abs(resid) <= 1e-12 * (1.0 + abs(alpha) + abs(beta))


def test_alpha_beta_series_matches_direct_in_overlap():
    # the two evaluation regimes must agree near the switch radius
    for w, v in ((0.6, 0.7), (0.9, 0.3), (0.4, 0.9)):
        from quadfact.kernels import _alpha_beta_direct

        a_direct, b_direct = _alpha_beta_direct(w, v)
        a_series, b_series = qf.simpson_alpha_beta(qf.SimpsonParam(w, v))
        assert a_series == pytest.approx(a_direct, rel=1e-12)
        assert b_series == pytest.approx(b_direct, rel=1e-12)


def test_simpson_rule_operator_coefficients():
    # the rule's operator is f'''' + 8(v^2-w^2)/(b-a)^2 f'' + 16(w^2+v^2)^2/(b-a)^4 f
    w, v = 0.9, 1.7
    a, b = 0.0, 2.0
    rule = qf.simpson_rule(a, b, qf.SimpsonParam(w, v))
    c = rule.spec.real_coeffs()
    assert c[4] == 1.0
    assert c[3] == pytest.approx(0.0, abs=1e-13)
    assert c[1] == pytest.approx(0.0, abs=1e-13)
    assert c[2] == pytest.approx(8.0 * (v * v - w * w) / (b - a) ** 2, rel=1e-12)
    assert c[0] == pytest.approx(
        16.0 * (w * w + v * v) ** 2 / (b - a) ** 4, rel=1e-12
    )


def test_simpson_kernel_endpoint_and_symmetry():
    rng = np.random.default_rng(61)
    u = qf.SimpsonParam(0.8, 1.1)
    assert qf.simpson_kernel(A, B, u, A) == pytest.approx(0.0, abs=1e-13)
    assert qf.simpson_kernel(A, B, u, B) == pytest.approx(0.0, abs=1e-13)
    for t in rng.uniform(A, B, size=20):
        g1 = qf.simpson_kernel(A, B, u, float(t))
        g2 = qf.simpson_kernel(A, B, u, float(A + B - t))
        assert g1 == pytest.approx(g2, abs=1e-11)


def test_simpson_kernel_max_at_midpoint_closed_form():
    u = qf.SimpsonParam(1.3, 0.9)
    w, v = u.w, u.v
    want = (
        (B - A) ** 3
        * (v * math.sinh(w) - w * math.sin(v)) ** 2
        / (32.0 * (w * w + v * v) ** 2 * w * v * math.sinh(w) * math.sin(v))
    )
    assert qf.simpson_kernel(A, B, u, 0.5 * (A + B)) == pytest.approx(want, rel=1e-12)


def test_simpson_kernel_nonnegative_and_unimodal():
    u = qf.SimpsonParam(0.5, 2.0)
    ts = np.linspace(A, B, 201)
    vals = [qf.simpson_kernel(A, B, u, float(t)) for t in ts]
    assert min(vals) >= -1e-13
    mid = len(vals) // 2
    diffs_up = np.diff(vals[: mid + 1])
    diffs_down = np.diff(vals[mid:])
    assert (diffs_up >= -1e-13).all()
    assert (diffs_down <= 1e-13).all()


def test_simpson_kernel_matches_general_path():
    u = qf.SimpsonParam(1.0, 1.0)
    rule = qf.simpson_rule(A, B, u)
    for t in np.arange(0.05, 1.0, 0.1):
        closed = qf.simpson_kernel(A, B, u, float(t))
        assert rule.kernel(float(t)) == pytest.approx(closed, abs=1e-10)


def test_simpson_h_endpoints_and_growth():
    u = qf.SimpsonParam(0.9, 1.4)
    w, v = u.w, u.v
    assert qf.simpson_h(u, 0.0) == pytest.approx(0.0, abs=1e-13)
    assert qf.simpson_h(u, 1.0) == pytest.approx(
        4.0 * (v * math.sinh(w) - w * math.sin(v)) ** 2, rel=1e-13
    )
    ss = np.linspace(0.0, 1.0, 100)
    hv = [qf.simpson_h(u, float(s)) for s in ss]
    assert all(h2 > h1 for h1, h2 in zip(hv, hv[1:]))


def test_simpson_h_relates_to_kernel():
    u = qf.SimpsonParam(1.1, 0.7)
    w, v = u.w, u.v
    denom = 128.0 * (w * w + v * v) ** 2 * w * v * math.sinh(w) * math.sin(v)
    for s in np.linspace(0.0, 1.0, 21):
        t = float(s) * 0.5 * (A + B) + (1.0 - float(s)) * B
        lhs = qf.simpson_kernel(A, B, u, t)
        rhs = (B - A) ** 3 * qf.simpson_h(u, float(s)) / denom
        assert lhs == pytest.approx(rhs, abs=1e-11)


def test_cotangent_chain():
    rng = np.random.default_rng(67)
    for _ in range(200):
        w = float(rng.uniform(1e-6, 8.0))
        v = float(rng.uniform(1e-6, math.pi - 1e-6))
        s = float(rng.uniform(1e-6, 1.0 - 1e-6))
        assert cotangent_chain_holds(w, v, s)


def test_trapezoid_kernel_nonnegative_for_classical_case():
    spec = qf.coeffs_from_roots([(0.0, 2)])
    for t in np.linspace(A, B, 101):
        assert qf.kernel_general(TRAP, spec, float(t)) >= -1e-15
