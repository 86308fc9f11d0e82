import numpy as np
import pytest

import quadpole as qp


def unit_charge_at(pos):
    return qp.PointCharges(np.array([pos]), np.array([1.0]))


def random_cloud(rng, n, scale=0.5, offset=(0.0, 0.0, 0.0)):
    pos = rng.uniform(-scale, scale, (n, 3)) + np.asarray(offset)
    return qp.PointCharges(pos, rng.uniform(-1, 1, n))


def test_fit_outer_monopole():
    e = qp.fit_outer(unit_charge_at([0.0, 0.0, 0.0]), np.zeros(3), 1.0, 4)
    sigma = e.surface_weights / e.rule.weights
    assert np.allclose(sigma, 1.0 / (4 * np.pi))


def test_fit_outer_total_charge():
    rng = np.random.default_rng(41)
    cloud = random_cloud(rng, 50)
    for p in (2, 5, 9):
        e = qp.fit_outer(cloud, np.zeros(3), 1.0, p)
        assert e.surface_weights.sum() == pytest.approx(cloud.charges.sum(), abs=1e-9)


def test_fit_outer_empty_and_errors():
    e = qp.fit_outer(qp.PointCharges.empty(), np.zeros(3), 1.0, 3)
    assert np.all(e.surface_weights == 0.0)
    with pytest.raises(qp.DomainError):
        qp.fit_outer(qp.PointCharges.empty(), np.zeros(3), -1.0, 3)


def test_fit_outer_diagnostics_flags_outside_sources():
    e = qp.fit_outer(unit_charge_at([2.0, 0.0, 0.0]), np.zeros(3), 1.0, 3)
    assert e.diagnostics["n_sources_outside"] == 1
    assert e.diagnostics["max_source_radius"] == pytest.approx(2.0)


def test_eval_outer_monopole_exact():
    e = qp.fit_outer(unit_charge_at([0.0, 0.0, 0.0]), np.zeros(3), 1.0, 1)
    x = np.array([3.0, 4.0, 0.0])
    assert qp.eval_outer_potential(e, x) == pytest.approx(0.2, abs=1e-12)


def test_eval_outer_vs_direct_sum():
    rng = np.random.default_rng(43)
    cloud = random_cloud(rng, 100)
    x = rng.standard_normal((30, 3))
    x *= (rng.uniform(4, 10, 30) / np.linalg.norm(x, axis=1))[:, None]
    for p in (4, 8):
        e = qp.fit_outer(cloud, np.zeros(3), 1.0, p)
        err = np.abs(qp.eval_outer_potential(e, x) - qp.direct_potential(cloud, x))
        assert np.max(err) < (1.0 / 4.0) ** p


def test_far_field_decay_slope():
    rng = np.random.default_rng(47)
    cloud = random_cloud(rng, 200)
    p = 5
    e = qp.fit_outer(cloud, np.zeros(3), 1.0, p)
    dirs = qp.lebedev_rule(15).points
    radii = np.geomspace(3, 30, 8)
    errs = [np.mean(np.abs(qp.eval_outer_potential(e, r * dirs)
                           - qp.direct_potential(cloud, r * dirs))) for r in radii]
    slope = np.polyfit(np.log(radii), np.log(errs), 1)[0]
    assert slope == pytest.approx(-(p + 1), abs=0.15)


def test_fit_inner_single_source_coulomb():
    d = 4.0
    src = unit_charge_at([0.0, 0.0, d])
    for p in (2, 4, 6):
        e = qp.fit_inner(src, np.zeros(3), 1.0, p)
        val = qp.eval_inner_potential(e, np.zeros(3))
        assert abs(val - 1.0 / d) <= (1.0 / d) ** p


def test_fit_inner_empty_and_singular():
    e = qp.fit_inner(qp.PointCharges.empty(), np.zeros(3), 1.0, 3)
    assert np.all(e.surface_weights == 0.0)
    assert qp.eval_inner_potential(e, np.zeros(3)) == 0.0
    with pytest.raises(qp.SingularityError):
        qp.fit_inner(unit_charge_at([1.0, 0.0, 0.0]), np.zeros(3), 1.0, 3)


def test_inner_decay_slope():
    rng = np.random.default_rng(53)
    inside = random_cloud(rng, 150, scale=0.55)
    r2 = np.sum(inside.positions ** 2, axis=1)
    outside = qp.PointCharges(inside.positions / r2[:, None], inside.charges)
    p = 5
    e = qp.fit_inner(outside, np.zeros(3), 1.0, p)
    dirs = qp.lebedev_rule(15).points
    radii = 1.0 / np.geomspace(3, 30, 8)
    errs = [np.mean(np.abs(qp.eval_inner_potential(e, r * dirs)
                           - qp.direct_potential(outside, r * dirs))) for r in radii]
    slope = np.polyfit(np.log(radii), np.log(errs), 1)[0]
    assert slope == pytest.approx(p, abs=0.15)


def test_point_charge_evaluation():
    e = qp.fit_outer(unit_charge_at([0.0, 0.0, 0.0]), np.zeros(3), 1.0, 6)
    x = np.array([10.0, 0.0, 0.0])
    assert qp.eval_point_charge_potential(e, x) == pytest.approx(0.1, rel=1e-6)
    zero = qp.fit_outer(qp.PointCharges.empty(), np.zeros(3), 1.0, 3)
    assert qp.eval_point_charge_potential(zero, x) == 0.0
    with pytest.raises(qp.SingularityError):
        qp.eval_point_charge_potential(e, e.surface_points[0])


def test_point_charge_tracks_series():
    rng = np.random.default_rng(59)
    cloud = random_cloud(rng, 100)
    e = qp.fit_outer(cloud, np.zeros(3), 1.0, 6)
    for r in (4.0, 10.0):
        x = r * qp.lebedev_rule(15).points
        series = qp.eval_outer_potential(e, x)
        points = qp.eval_point_charge_potential(e, x)
        exact = qp.direct_potential(cloud, x)
        assert np.mean(np.abs(series - points)) < np.mean(np.abs(series - exact))


def test_linearity_of_fit():
    rng = np.random.default_rng(61)
    a = random_cloud(rng, 20)
    b = random_cloud(rng, 20)
    both = qp.PointCharges(np.vstack([a.positions, b.positions]),
                           np.concatenate([a.charges, b.charges]))
    ea = qp.fit_outer(a, np.zeros(3), 1.0, 5)
    eb = qp.fit_outer(b, np.zeros(3), 1.0, 5)
    eab = qp.fit_outer(both, np.zeros(3), 1.0, 5)
    assert np.allclose((ea + eb).surface_weights, eab.surface_weights, atol=1e-13)


def test_interaction_energy_two_charges():
    d = 5.0
    outer = qp.fit_outer(unit_charge_at([0.0, 0.0, 0.0]), np.zeros(3), 1.0, 4)
    inner = qp.fit_inner(unit_charge_at([0.0, 0.0, d]), np.zeros(3), 1.0, 4,
                         rule=outer.rule)
    val = qp.interaction_energy(outer, inner)
    assert abs(val - 1.0 / d) <= (1.0 / d) ** 4


def test_interaction_energy_cloud_vs_double_sum():
    rng = np.random.default_rng(67)
    inside = random_cloud(rng, 40)
    outside = random_cloud(rng, 30, scale=0.4, offset=(6.0, 0.0, 0.0))
    p = 8
    outer = qp.fit_outer(inside, np.zeros(3), 1.0, p)
    inner = qp.fit_inner(outside, np.zeros(3), 1.0, p, rule=outer.rule)
    val = qp.interaction_energy(outer, inner)
    ref = qp.direct_energy(inside, outside)
    assert val == pytest.approx(ref, abs=5e-6)


def test_interaction_energy_contract_checks():
    outer = qp.fit_outer(unit_charge_at([0.0, 0.0, 0.0]), np.zeros(3), 1.0, 4)
    inner = qp.fit_inner(unit_charge_at([0.0, 0.0, 5.0]), np.zeros(3), 2.0, 4,
                         rule=outer.rule)
    with pytest.raises(qp.ContractViolation):
        qp.interaction_energy(outer, inner)
    zero = qp.fit_inner(qp.PointCharges.empty(), np.zeros(3), 1.0, 4, rule=outer.rule)
    assert qp.interaction_energy(outer, zero) == 0.0


def test_energy_between_outers():
    d = 7.0
    a = qp.fit_outer(unit_charge_at([0.0, 0.0, 0.0]), np.zeros(3), 1.0, 6)
    b = qp.fit_outer(unit_charge_at([d, 0.0, 0.0]), np.array([d, 0, 0]), 1.0, 6,
                     rule=a.rule)
    assert qp.energy_between_outers(a, b) == pytest.approx(1.0 / d, rel=1e-5)
    with pytest.raises(qp.GeometryError):
        qp.energy_between_outers(a, qp.fit_outer(
            unit_charge_at([1.5, 0.0, 0.0]), np.array([1.5, 0, 0]), 1.0, 6, rule=a.rule))


def test_energy_between_outers_clouds():
    rng = np.random.default_rng(71)
    ca = random_cloud(rng, 25)
    cb = random_cloud(rng, 25, offset=(9.0, 0.0, 0.0))
    a = qp.fit_outer(ca, np.zeros(3), 1.0, 8)
    b = qp.fit_outer(cb, np.array([9.0, 0, 0]), 1.0, 8, rule=a.rule)
    assert qp.energy_between_outers(a, b) == pytest.approx(qp.direct_energy(ca, cb),
                                                           abs=1e-7)


def test_energy_exchange_symmetry():
    # symmetric two-charge geometry: either cloud may play the outer role
    d = 5.0
    rule = qp.rule_for_expansion(6)
    at0 = unit_charge_at([0.0, 0.0, 0.0])
    atd = unit_charge_at([0.0, 0.0, d])
    e1 = qp.interaction_energy(qp.fit_outer(at0, np.zeros(3), 1.0, 6, rule=rule),
                               qp.fit_inner(atd, np.zeros(3), 1.0, 6, rule=rule))
    e2 = qp.interaction_energy(qp.fit_outer(atd, np.array([0, 0, d]), 1.0, 6, rule=rule),
                               qp.fit_inner(at0, np.array([0, 0, d]), 1.0, 6, rule=rule))
    assert e1 == pytest.approx(e2, abs=1e-9)


def test_moment_matching_against_tensors():
    rng = np.random.default_rng(73)
    cloud = random_cloud(rng, 30)
    p = 6
    e = qp.fit_outer(cloud, np.zeros(3), 1.0, p)
    pt = qp.moments_from_charges(cloud, p)
    pte = qp.polytensor_from_expansion(e)
    for n in range(p):
        for _ in range(10):
            rh = rng.standard_normal(3)
            rh /= np.linalg.norm(rh)
            a = qp.detrace_directional(pt, rh, n)
            b = qp.detrace_directional(pte, rh, n)
            assert a == pytest.approx(b, rel=1e-8, abs=1e-10)


def test_serialization_round_trip():
    rng = np.random.default_rng(79)
    cloud = random_cloud(rng, 10)
    e = qp.fit_outer(cloud, np.array([0.5, -0.25, 1.0]), 2.0, 5)
    text = qp.expansion_to_text(e)
    back = qp.expansion_from_text(text)
    assert back.kind == "outer" and back.order == 5
    assert np.allclose(back.center, e.center)
    assert back.radius == e.radius
    assert np.array_equal(back.surface_weights, e.surface_weights)
