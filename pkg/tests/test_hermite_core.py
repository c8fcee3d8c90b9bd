import math

import numpy as np
import pytest
from mpmath import mp
from scipy.integrate import quad

from hermite_mz.errors import DomainError
from hermite_mz.gauss_hermite import build_rule
from hermite_mz.hermite_core import (envelope_scale, hermite_pair,
                                     hermite_sequence, local_sup_abs, phi)

PI_QUARTER = math.pi ** -0.25


def mp_weighted_hermite(n: int, t: float) -> float:
    """Extended-precision recurrence oracle for the weighted functions."""
    with mp.workdps(50):
        x = mp.mpf(t)
        prev = mp.pi ** mp.mpf("-0.25") * mp.e ** (-x * x / 2)
        if n == 0:
            return float(prev)
        curr = mp.sqrt(2) * x * prev
        for k in range(1, n):
            prev, curr = curr, x * mp.sqrt(mp.mpf(2) / (k + 1)) * curr \
                - mp.sqrt(mp.mpf(k) / (k + 1)) * prev
        return float(curr)


class TestSequence:
    def test_order_zero_at_origin(self):
        assert hermite_sequence(0, 0.0)[0] == pytest.approx(PI_QUARTER, abs=1e-15)

    def test_first_three_at_origin(self):
        got = hermite_sequence(2, 0.0)
        assert got[0] == pytest.approx(0.7511255444649425, abs=1e-15)
        assert got[1] == 0.0
        assert got[2] == pytest.approx(-0.5311259660135984, abs=1e-15)

    @pytest.mark.parametrize("n,t", [(200, 1.0), (63, 7.5), (1001, 44.0), (40, -3.3)])
    def test_matches_extended_precision(self, n, t):
        assert hermite_sequence(n, t)[n] == pytest.approx(mp_weighted_hermite(n, t), abs=1e-12)

    def test_no_overflow_deep_range(self):
        value, deriv = hermite_pair(100_000, 1000.0)
        assert math.isfinite(value) and math.isfinite(deriv)
        assert abs(value) <= 1.09

    def test_underflow_region_is_zero(self):
        # far outside the oscillatory region of every order in the sequence
        vals = hermite_sequence(10, 40.0)
        assert np.all(vals == 0.0)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            hermite_sequence(3, math.nan)
        with pytest.raises(DomainError):
            hermite_sequence(-1, 0.5)

    def test_array_input_shape(self):
        ts = np.linspace(-2, 2, 7)
        out = hermite_sequence(4, ts)
        assert out.shape == (5, 7)
        assert out[3, 0] == hermite_sequence(3, float(ts[0]))[3]


class TestPair:
    def test_order_one_at_origin(self):
        value, deriv = hermite_pair(1, 0.0)
        assert value == 0.0
        assert deriv == pytest.approx(math.sqrt(2) * PI_QUARTER, abs=1e-15)

    def test_order_zero_derivative(self):
        value, deriv = hermite_pair(0, 1.0)
        expected = PI_QUARTER * math.exp(-0.5)
        assert value == pytest.approx(expected, abs=1e-15)
        assert deriv == pytest.approx(-expected, abs=1e-15)

    def test_consistent_with_sequence(self):
        rng = np.random.default_rng(5)
        for n in (1, 7, 64, 201):
            t = float(rng.uniform(-9, 9))
            seq = hermite_sequence(n, t)
            value, deriv = hermite_pair(n, t)
            assert value == seq[n]
            expected = math.sqrt(2 * n) * seq[n - 1] - t * seq[n]
            assert deriv == pytest.approx(expected, rel=1e-13, abs=1e-300)

    def test_ode_residual_by_finite_differences(self):
        n = 63
        freq = 2 * n + 1
        rng = np.random.default_rng(11)
        ts = rng.uniform(-12.0, 12.0, size=100)
        h = 1e-5
        _, d_plus = hermite_pair(n, ts + h)
        _, d_minus = hermite_pair(n, ts - h)
        value, _ = hermite_pair(n, ts)
        second = (d_plus - d_minus) / (2 * h)
        residual = np.abs(second + (freq - ts * ts) * value)
        assert np.max(residual) <= 1e-6 * freq

    def test_parity_exact(self):
        ts = np.linspace(0.1, 6.1, 13)
        for n in (0, 1, 4, 9, 30):
            vp, dp = hermite_pair(n, ts)
            vm, dm = hermite_pair(n, -ts)
            assert np.array_equal(vm, (-1.0) ** n * vp)
            assert np.array_equal(dm, -((-1.0) ** n) * dp)

    def test_uniform_bound(self):
        ts = np.linspace(-30, 30, 801)
        for n in (0, 3, 17, 101, 400):
            value, _ = hermite_pair(n, ts)
            assert np.max(np.abs(value)) <= 1.09


def test_recurrence_consistency():
    rng = np.random.default_rng(3)
    ts = rng.uniform(-8, 8, size=20)
    seq = hermite_sequence(60, ts)
    for k in range(1, 60):
        lhs = seq[k + 1]
        rhs = ts * math.sqrt(2.0 / (k + 1)) * seq[k] \
            - math.sqrt(k / (k + 1.0)) * seq[k - 1]
        scale = np.maximum.reduce([np.abs(seq[k + 1]), np.abs(seq[k]), np.abs(seq[k - 1])])
        assert np.all(np.abs(lhs - rhs) <= 1e-13 * np.maximum(scale, 1e-280))


def test_orthonormality_by_quadrature():
    rule = build_rule(40)
    seq = hermite_sequence(30, rule.nodes)
    for i in (0, 3, 11, 30):
        for j in (0, 3, 11, 30):
            inner = float(np.sum(rule.mu * seq[i] * seq[j]))
            assert inner == pytest.approx(1.0 if i == j else 0.0, abs=1e-10)


class TestPhi:
    def test_endpoint(self):
        assert phi(1.0) == 0.0

    def test_at_zero(self):
        assert phi(0.0) == pytest.approx((3 * math.pi / 8) ** (2 / 3), abs=1e-14)

    @pytest.mark.parametrize("x", [0.0, 0.17, 0.5, 0.83, 0.99])
    def test_matches_quadrature_oracle(self, x):
        # substitute s = sin(theta) so the integrand is smooth at the endpoint
        integral, err = quad(lambda u: math.cos(u) ** 2, math.asin(x), math.pi / 2,
                             epsabs=1e-14)
        assert err < 1e-12
        assert phi(x) == pytest.approx((1.5 * integral) ** (2 / 3), abs=1e-12)

    def test_decreasing_and_bounded(self):
        xs = np.linspace(0.0, 1.0, 501)
        vals = phi(xs)
        assert np.all(np.diff(vals) <= 0)
        ratio = vals[:-1] / (1.0 - xs[:-1] ** 2)
        assert np.all(ratio >= 2 ** (-2 / 3) - 1e-12)
        assert np.all(ratio <= 2 ** (2 / 3) + 1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            phi(-0.1)
        with pytest.raises(DomainError):
            phi(1.1)


class TestEnvelopeScale:
    def test_direct_arithmetic(self):
        # 13^(-1/8) * (sqrt(29) - 3)^(-1/4)
        assert envelope_scale(13, 3.0) == pytest.approx(0.5839524471677032, abs=1e-12)

    def test_at_origin(self):
        n = 21
        assert envelope_scale(n, 0.0) == pytest.approx(
            n ** -0.125 * (2 * n + 3) ** -0.125, abs=1e-14)

    def test_symmetry_and_domain(self):
        assert envelope_scale(9, 2.5) == envelope_scale(9, -2.5)
        with pytest.raises(DomainError):
            envelope_scale(9, math.sqrt(21) + 0.1)


class TestLocalSup:
    def test_monomial_times_weight(self):
        # |H_1| on [-1, 1] peaks at the endpoints
        expected = math.sqrt(2) * PI_QUARTER * math.exp(-0.5)
        assert local_sup_abs(0, -1.0, 1.0) == pytest.approx(expected, abs=1e-10)

    def test_interior_extremum_matches_derivative_zero(self):
        from scipy.optimize import brentq

        n = 12
        rule = build_rule(n)
        a, b = rule.nodes[4], rule.nodes[3]
        t_bar = brentq(lambda t: hermite_pair(n + 1, t)[1], a, b, xtol=1e-13)
        assert local_sup_abs(n, a, b) == pytest.approx(
            abs(hermite_pair(n + 1, t_bar)[0]), rel=1e-9)

    def test_degenerate_interval(self):
        with pytest.raises(DomainError):
            local_sup_abs(3, 1.0, 1.0)

    def test_envelope_comparability(self):
        n = 63
        rule = build_rule(n)
        peak = local_sup_abs(n, rule.nodes[1], rule.nodes[0])
        ratio = peak / envelope_scale(n, float(rule.nodes[0]))
        assert 0.3 <= ratio <= 3.0

    def test_refinement_contract(self):
        n = 25
        a, b = -1.3, 2.9
        sup = local_sup_abs(n, a, b)
        dense = np.max(np.abs(hermite_sequence(n + 1, np.linspace(a, b, 40013))[n + 1]))
        assert sup >= dense - 1e-10 * max(1.0, dense)
