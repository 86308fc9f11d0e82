"""Shift operators between expansion centers and radii.

All three shifts are single applications of the scaled reproducing
kernel; arriving at an outer expansion is the same operation as the
initial fitting, and both shifts arriving at an inner expansion share
one formula.
"""
from dataclasses import replace

import numpy as np

from .errors import ContractViolation, GeometryError
from .legendre import kernel_matrix

__all__ = ["shift_outer", "outer_to_inner", "shift_inner"]

_SLACK = 1e-12


def _require_kind(src, kind):
    if src.kind != kind:
        raise ContractViolation("expected a %s expansion, got %s" % (kind, src.kind))


def _shifted_sources(src, new_center, new_R):
    """Old surface points relative to the new sphere, scaled to unit radius."""
    t = np.asarray(new_center, dtype=float) - src.center
    return (src.radius * src.rule.points - t) / new_R


def shift_outer(src, new_center, new_R):
    """Outer -> outer shift; the source sphere must fit inside the new one."""
    _require_kind(src, "outer")
    new_center = np.asarray(new_center, dtype=float)
    t = np.linalg.norm(new_center - src.center)
    if t + src.radius > new_R + _SLACK:
        raise GeometryError("source sphere not contained in the new sphere")
    s = _shifted_sources(src, new_center, new_R)       # (N, 3)
    kmat = kernel_matrix(s[:, None, :], src.rule.points[None, :, :], src.order)
    weights = src.rule.weights * (src.surface_weights @ kmat)
    return replace(src, center=new_center, radius=new_R, surface_weights=weights,
                   diagnostics=None)


def outer_to_inner(src, new_center, new_R):
    """Outer -> inner shift (multipole-to-local translation)."""
    _require_kind(src, "outer")
    new_center = np.asarray(new_center, dtype=float)
    s = _shifted_sources(src, new_center, new_R)
    dist = np.linalg.norm(s, axis=1)
    bad = np.nonzero(dist <= 1.0 + 1e-9)[0]
    if bad.size:
        raise GeometryError(
            "kernel argument reaches the unit sphere at source points %s" % bad.tolist()
        )
    kmat = kernel_matrix(src.rule.points[:, None, :], s[None, :, :], src.order)
    weights = src.rule.weights * (kmat @ src.surface_weights)
    return replace(src, center=new_center, radius=new_R, surface_weights=weights,
                   kind="inner", diagnostics=None)


def shift_inner(src, new_center, new_R):
    """Inner -> inner shift; the new sphere must fit inside the old one."""
    _require_kind(src, "inner")
    new_center = np.asarray(new_center, dtype=float)
    t = np.linalg.norm(new_center - src.center)
    if t + new_R > src.radius + _SLACK:
        raise GeometryError("new sphere not contained in the old sphere")
    s = _shifted_sources(src, new_center, new_R)
    kmat = kernel_matrix(src.rule.points[:, None, :], s[None, :, :], src.order)
    weights = src.rule.weights * (kmat @ src.surface_weights)
    return replace(src, center=new_center, radius=new_R, surface_weights=weights,
                   diagnostics=None)
