"""Radial decay of outer/inner expansion error for a random charge cloud.

The outer error falls like r^-(p+1); the inner error (for the inverted
cloud) like r_in^p.  Same experiment as `quadpole racc`, desk scale.
"""
import numpy as np

import quadpole as qp

rng = np.random.default_rng(20240817)
half = np.sqrt(3.0) / 3.0
cloud = qp.PointCharges(rng.uniform(-half, half, (400, 3)), rng.uniform(-1, 1, 400))
r2 = np.sum(cloud.positions ** 2, axis=1)
inverted = qp.PointCharges(cloud.positions / r2[:, None], cloud.charges)

dirs = qp.lebedev_rule(15).points
radii = np.geomspace(1.5, 30.0, 10)

for p in (3, 6, 9):
    outer = qp.fit_outer(cloud, np.zeros(3), 1.0, p)
    inner = qp.fit_inner(inverted, np.zeros(3), 1.0, p, rule=outer.rule)
    print("p = %d" % p)
    print("  %8s  %12s  %12s" % ("r", "outer err", "inner err"))
    errs_o, errs_i = [], []
    for r in radii:
        x = r * dirs
        eo = np.mean(np.abs(qp.eval_outer_potential(outer, x)
                            - qp.direct_potential(cloud, x)))
        y = dirs / r
        ei = np.mean(np.abs(qp.eval_inner_potential(inner, y)
                            - qp.direct_potential(inverted, y)))
        errs_o.append(eo)
        errs_i.append(ei)
        print("  %8.3f  %12.3e  %12.3e" % (r, eo, ei))
    slope_o = np.polyfit(np.log(radii), np.log(errs_o), 1)[0]
    slope_i = np.polyfit(np.log(1 / radii), np.log(errs_i), 1)[0]
    print("  fitted slopes: outer %.2f (expect %d), inner %.2f (expect %d)"
          % (slope_o, -(p + 1), slope_i, p))
