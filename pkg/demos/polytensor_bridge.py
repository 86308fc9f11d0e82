"""Round trip between Cartesian polytensor moments and surface expansions.

Monomial moments of a charge cloud are converted to a surface expansion
and back; the de-traced directional moments agree to machine precision,
and the synthesized expansion reproduces the cloud's far field.
"""
import numpy as np

import quadpole as qp

rng = np.random.default_rng(20240817)
cloud = qp.PointCharges(rng.uniform(-0.5, 0.5, (200, 3)), rng.uniform(-1, 1, 200))

p = 7
moments = qp.moments_from_charges(cloud, p)
exp = qp.expansion_from_polytensor(moments, 1.0, qp.rule_for_expansion(p))
back = qp.polytensor_from_expansion(exp)

rhat = np.array([0.6, 0.0, 0.8])
print("de-traced directional moments along", rhat)
print("  %2s  %14s  %14s" % ("n", "from charges", "round trip"))
for n in range(p):
    a = qp.detrace_directional(moments, rhat, n)
    b = qp.detrace_directional(back, rhat, n)
    print("  %2d  %14.6e  %14.6e" % (n, a, b))

x = 6.0 * qp.lebedev_rule(15).points
err = np.max(np.abs(qp.eval_outer_potential(exp, x) - qp.direct_potential(cloud, x)))
print()
print("max far-field error of the synthesized expansion at |x| = 6: %.3e" % err)
