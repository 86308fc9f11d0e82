import numpy as np
import pytest

import quadpole as qp
from quadpole.legendre import legendre_poly_table
from quadpole.quadrature import sphere_monomial_integral


def test_rule_point_counts():
    assert len(qp.lebedev_rule(15)) == 86
    assert len(qp.lebedev_rule(59)) == 1202
    assert len(qp.lebedev_rule(3)) == 6


def test_order3_is_octahedron():
    rule = qp.lebedev_rule(3)
    assert np.allclose(np.sort(np.abs(rule.points).max(axis=1)), 1.0)
    assert np.allclose(rule.weights, 4 * np.pi / 6)
    assert qp.verify_exactness(rule, 3) < 1e-12


def test_rule_invariants():
    for order in qp.available_orders():
        rule = qp.lebedev_rule(order)
        assert np.allclose(np.linalg.norm(rule.points, axis=1), 1.0, atol=1e-12)
        assert abs(rule.weights.sum() - 4 * np.pi) < 1e-10
        assert rule.weights.min() > 0.0


def test_unsupported_order():
    with pytest.raises(qp.UnsupportedOrderError, match="59"):
        qp.lebedev_rule(60)


def test_rule_for_expansion():
    assert qp.rule_for_expansion(1).exactness_degree == 3
    assert qp.rule_for_expansion(8).exactness_degree == 15
    assert len(qp.rule_for_expansion(8)) == 86
    assert qp.rule_for_expansion(9).exactness_degree == 17
    with pytest.raises(qp.CapacityError):
        qp.rule_for_expansion(80)
    with pytest.raises(qp.DomainError):
        qp.rule_for_expansion(0)


def test_rule_for_expansion_min_order_override():
    assert qp.rule_for_expansion(3, min_order=15).exactness_degree == 15


def test_point_count_scaling():
    for p in range(1, 17):
        assert len(qp.rule_for_expansion(p)) <= 2 * p * p + 6


def test_monomial_integral_closed_form():
    assert sphere_monomial_integral(0, 0, 0) == pytest.approx(4 * np.pi)
    assert sphere_monomial_integral(1, 0, 0) == 0.0
    assert sphere_monomial_integral(2, 0, 0) == pytest.approx(4 * np.pi / 3)
    assert sphere_monomial_integral(2, 2, 2) == pytest.approx(4 * np.pi / 105)


def test_exactness_at_design_degree():
    assert qp.verify_exactness(qp.lebedev_rule(3), 0) <= 1e-12
    assert qp.verify_exactness(qp.lebedev_rule(15), 14) <= 1e-10


def test_exactness_fails_beyond_design_degree():
    assert qp.verify_exactness(qp.lebedev_rule(15), 16) > 1e-6


def test_orthogonality_identity():
    # quadrature form of the Legendre orthogonality relation on the sphere
    rng = np.random.default_rng(31)
    for p in (4, 8, 12):
        rule = qp.rule_for_expansion(p)
        for _ in range(20):
            xh, yh = rng.standard_normal((2, 3))
            xh /= np.linalg.norm(xh)
            yh /= np.linalg.norm(yh)
            px = legendre_poly_table(p, rule.points @ xh)
            py = legendre_poly_table(p, rule.points @ yh)
            gram = (px * rule.weights) @ py.T
            expect = np.zeros((p, p))
            for n in range(p):
                expect[n, n] = 4 * np.pi / (2 * n + 1) * qp.legendre_poly(n, xh @ yh)
            assert np.max(np.abs(gram - expect)) < 1e-9


def test_reproducing_property():
    # K acts as the identity on degree-<p polynomials sampled at the rule
    rng = np.random.default_rng(37)
    p = 8
    rule = qp.rule_for_expansion(p)
    for _ in range(20):
        dirs = rng.standard_normal((3, 3))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        coefs = rng.standard_normal(3)
        degs = rng.integers(0, p, 3)

        def sigma(rh):
            return sum(c * qp.legendre_poly(int(n), rh @ d)
                       for c, n, d in zip(coefs, degs, dirs))

        xh = rng.standard_normal(3)
        xh /= np.linalg.norm(xh)
        approx = np.sum(rule.weights * sigma(rule.points)
                        * qp.kernel_K(xh, rule.points, p))
        assert approx == pytest.approx(sigma(xh[None, :])[0], abs=1e-9)
