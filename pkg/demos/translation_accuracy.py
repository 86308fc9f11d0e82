"""Accuracy of the shift operators in the touching-sphere geometry.

A cloud is fit on a small off-center sphere, shifted to the unit sphere
at the origin, and compared against a direct fit.  The shift costs at
most a small constant factor over refitting the sources directly.
"""
import numpy as np

import quadpole as qp

rng = np.random.default_rng(20240817)
half = np.sqrt(3.0) / 3.0
base = rng.uniform(-half, half, (400, 3))
charges = rng.uniform(-1, 1, 400)
dirs = qp.lebedev_rule(15).points
x = 2.0 * dirs

p = 6
print("outer -> outer shift, p = %d, evaluated at |x| = 2" % p)
print("  %5s  %12s  %12s" % ("shift", "shifted err", "direct err"))
for s in (0.2, 0.6, 0.8):
    t = np.array([s, 0.0, 0.0])
    cloud = qp.PointCharges(t + (1.0 - s) * base, charges)
    small = qp.fit_outer(cloud, t, 1.0 - s, p)
    shifted = qp.shift_outer(small, np.zeros(3), 1.0)
    direct = qp.fit_outer(cloud, np.zeros(3), 1.0, p, rule=small.rule)
    exact = qp.direct_potential(cloud, x)
    e_shift = np.mean(np.abs(qp.eval_outer_potential(shifted, x) - exact))
    e_direct = np.mean(np.abs(qp.eval_outer_potential(direct, x) - exact))
    print("  %5.2f  %12.3e  %12.3e" % (s, e_shift, e_direct))

print()
print("outer -> inner shift (multipole to local), cloud at origin, local at d")
src = qp.PointCharges(0.5 * base, charges)
outer = qp.fit_outer(src, np.zeros(3), 1.0, 8)
for d in (3.0, 4.0, 6.0):
    c = np.array([0.0, 0.0, d])
    local = qp.outer_to_inner(outer, c, 1.0)
    y = c + 0.5 * dirs
    err = np.max(np.abs(qp.eval_inner_potential(local, y) - qp.direct_potential(src, y)))
    print("  d = %4.1f  max err %.3e" % (d, err))
