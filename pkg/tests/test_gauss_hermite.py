import math

import numpy as np
import pytest

from hermite_mz.errors import CapacityError, DomainError, ShapeError, UsageError
from hermite_mz.gauss_hermite import (_tridiag_eigenvalues, build_rule,
                                      integrate_gaussian, zeros_interlace)
from hermite_mz.hermite_core import hermite_pair, hermite_sequence

ROOT_PI = math.sqrt(math.pi)


class TestAnalyticRules:
    def test_one_point(self):
        rule = build_rule(0)
        assert rule.nodes.tolist() == [0.0]
        assert rule.lam[0] == pytest.approx(ROOT_PI, abs=1e-14)
        assert rule.mu[0] == pytest.approx(ROOT_PI, abs=1e-14)

    def test_two_point(self):
        rule = build_rule(1)
        assert rule.nodes == pytest.approx([1 / math.sqrt(2), -1 / math.sqrt(2)], abs=1e-14)
        assert rule.lam == pytest.approx([ROOT_PI / 2] * 2, abs=1e-14)

    def test_three_point(self):
        rule = build_rule(2)
        assert rule.nodes == pytest.approx([math.sqrt(1.5), 0.0, -math.sqrt(1.5)], abs=1e-14)
        assert rule.lam == pytest.approx([ROOT_PI / 6, 2 * ROOT_PI / 3, ROOT_PI / 6], abs=1e-13)


@pytest.mark.parametrize("n", [3, 5, 16, 33, 64, 257])
class TestRuleInvariants:
    def test_ordering_and_antisymmetry(self, n):
        rule = build_rule(n)
        assert np.all(np.diff(rule.nodes) < 0)
        assert np.array_equal(rule.nodes, -rule.nodes[::-1])
        assert np.array_equal(rule.lam, rule.lam[::-1])
        assert np.array_equal(rule.mu, rule.mu[::-1])

    def test_node_range(self, n):
        rule = build_rule(n)
        cap = math.sqrt(2 * n + 3)
        assert np.all(np.abs(rule.nodes) < cap)
        assert rule.nodes[0] <= cap

    def test_weight_normalization(self, n):
        rule = build_rule(n)
        assert float(np.sum(rule.lam)) == pytest.approx(ROOT_PI, rel=1e-12)

    def test_weight_identity(self, n):
        rule = build_rule(n)
        _, deriv = hermite_pair(n + 1, rule.nodes)
        assert np.max(np.abs(rule.mu * deriv * deriv / 2.0 - 1.0)) <= 1e-10

    def test_newton_convergence_contract(self, n):
        rule = build_rule(n)
        value, deriv = hermite_pair(n + 1, rule.nodes)
        spacing = np.empty(rule.size)
        if rule.size > 1:
            gaps = -np.diff(rule.nodes)
            spacing[:-1] = gaps
            spacing[-1] = gaps[-1]
        else:
            spacing[:] = 1.0
        assert np.all(np.abs(value) <= 1e-13 * np.abs(deriv) * spacing)

    def test_mu_decreasing_toward_center(self, n):
        rule = build_rule(n)
        half = rule.mu[:(n + 2) // 2]
        assert np.all(np.diff(half) <= 0)

    def test_sturm_gap_bound(self, n):
        rule = build_rule(n)
        gaps = -np.diff(rule.nodes)
        left = rule.nodes[:-1]
        right = rule.nodes[1:]
        # the comparison interval [-t_j, t_j] is nonempty only for t_j > 0
        positive = left > 0
        assert np.all(gaps[positive] <= np.pi / np.sqrt(rule.cap - left[positive] ** 2))
        # with the larger endpoint magnitude the bound covers every gap
        widest = np.maximum(np.abs(left), np.abs(right))
        assert np.all(gaps <= np.pi / np.sqrt(rule.cap - widest ** 2))

    def test_lyapunov_envelope_decreasing(self, n):
        rule = build_rule(n)
        ts = np.linspace(0.0, math.sqrt(rule.cap) - 1e-6, 400)
        value, deriv = hermite_pair(n + 1, ts)
        g = deriv ** 2 + (rule.cap - ts * ts) * value ** 2
        assert np.all(np.diff(g) <= 1e-10 * g[:-1])


class TestQuadrature:
    def test_constant(self):
        rule = build_rule(6)
        assert integrate_gaussian(rule, np.ones(7)) == pytest.approx(ROOT_PI, rel=1e-14)

    def test_monomials(self):
        rule1 = build_rule(1)
        assert integrate_gaussian(rule1, rule1.nodes ** 2) == pytest.approx(ROOT_PI / 2, rel=1e-13)
        rule2 = build_rule(2)
        assert integrate_gaussian(rule2, rule2.nodes ** 4) == pytest.approx(3 * ROOT_PI / 4, rel=1e-13)

    def test_shape_error(self):
        rule = build_rule(4)
        with pytest.raises(ShapeError):
            integrate_gaussian(rule, np.ones(4))

    @pytest.mark.parametrize("n", [4, 16])
    def test_exactness_on_random_squares(self, n):
        # integral of (sum c_k h_k)^2 against exp(-t^2) equals sum c_k^2
        rule = build_rule(n)
        rng = np.random.default_rng(100 + n)
        basis = hermite_sequence(n, rule.nodes)
        boost = np.exp(rule.nodes ** 2)
        for _ in range(50):
            c = rng.standard_normal(n + 1)
            samples = (c @ basis) ** 2 * boost
            got = integrate_gaussian(rule, samples)
            assert got == pytest.approx(float(c @ c), rel=1e-10)


class TestInterlacing:
    def test_small_cases(self):
        assert zeros_interlace(build_rule(1), build_rule(0))
        assert zeros_interlace(build_rule(2), build_rule(1))
        assert zeros_interlace(build_rule(0), build_rule(1))

    def test_larger(self):
        assert zeros_interlace(build_rule(64), build_rule(63))

    def test_usage_error(self):
        with pytest.raises(UsageError):
            zeros_interlace(build_rule(3), build_rule(3))
        with pytest.raises(UsageError):
            zeros_interlace(build_rule(5), build_rule(3))


class TestLimits:
    def test_negative_degree(self):
        with pytest.raises(DomainError):
            build_rule(-1)

    def test_capacity_ceiling(self):
        with pytest.raises(CapacityError):
            build_rule(100_001)


def test_ql_matches_dense_eigensolver():
    n = 40
    off = [math.sqrt(k / 2.0) for k in range(1, n + 1)]
    got = np.array(_tridiag_eigenvalues([0.0] * (n + 1), off))
    dense = np.zeros((n + 1, n + 1))
    idx = np.arange(n)
    dense[idx, idx + 1] = off
    dense[idx + 1, idx] = off
    expected = np.linalg.eigvalsh(dense)
    assert got == pytest.approx(expected.tolist(), abs=1e-12)
