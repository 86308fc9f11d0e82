"""Potential flow around rigid spheres, solved with surface quadratures.

First the single translating sphere (exact dipole solution), then the
three-sphere scene from three_spheres.txt, sweeping the expansion order.
"""
import os

import numpy as np

import quadpole as qp

v = np.array([1.0, 0.0, 0.0])
s = qp.SphereBoundary.make(np.zeros(3), 1.0, v, 5)
sol = qp.solve_potential_flow([s])
x = 2.0 * qp.lebedev_rule(15).points
got = qp.single_layer_ext(sol.expansions[0], x)
want = (x @ v) / (2.0 * np.linalg.norm(x, axis=1) ** 3)
print("single sphere: max |Phi - dipole| = %.3e" % np.max(np.abs(got - want)))

scene_path = os.path.join(os.path.dirname(__file__), "three_spheres.txt")
with open(scene_path) as fh:
    scene = qp.parse_scene(fh.read())
ref = qp.lebedev_rule(59)
print()
print("three spheres, boundary velocity mismatch (weighted RMS per sphere)")
print("  %2s  %12s  %12s  %12s" % ("p", "sphere 0", "sphere 1", "sphere 2"))
prev = None
for p in range(2, 9):
    spheres = [qp.SphereBoundary.make(c, R, vel, p) for c, R, vel in scene]
    sol = qp.solve_potential_flow(spheres)
    errs = qp.boundary_error(sol, spheres, ref)
    note = "" if prev is None else "  (max ratio %.2f)" % (np.max(errs) / prev)
    print("  %2d  %12.3e  %12.3e  %12.3e%s" % (p, errs[0], errs[1], errs[2], note))
    prev = np.max(errs)
