"""Surface expansions: fitting, evaluation, and interaction energies.

An expansion is stored as per-point weights w_i = w0_i * sigma(R rhat_i)
on a scaled, centered quadrature rule.  Outer expansions represent the
far field of enclosed sources; inner expansions represent the field of
exterior sources inside the sphere.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ContractViolation, DomainError, GeometryError, SingularityError
from .legendre import kernel_matrix, scaled_legendre_stack
from .quadrature import QuadratureRule, lebedev_rule

__all__ = [
    "PointCharges",
    "SurfaceExpansion",
    "fit_outer",
    "fit_inner",
    "eval_outer_potential",
    "eval_inner_potential",
    "eval_point_charge_potential",
    "interaction_energy",
    "energy_between_outers",
    "direct_potential",
    "direct_energy",
    "expansion_to_text",
    "expansion_from_text",
]


@dataclass(frozen=True)
class PointCharges:
    """3D source positions with signed charges."""

    positions: np.ndarray   # (M, 3)
    charges: np.ndarray     # (M,)

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        q = np.atleast_1d(np.asarray(self.charges, dtype=float))
        if pos.shape != (len(q), 3):
            raise DomainError("positions must be (M, 3) matching M charges")
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(q))):
            raise DomainError("positions and charges must be finite")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "charges", q)

    def __len__(self):
        return len(self.charges)

    @staticmethod
    def empty():
        return PointCharges(np.zeros((0, 3)), np.zeros(0))


@dataclass(frozen=True)
class SurfaceExpansion:
    """Multipole expansion as surface weights on a bounding sphere."""

    center: np.ndarray
    radius: float
    rule: QuadratureRule
    surface_weights: np.ndarray
    order: int
    kind: str                   # "outer" or "inner"
    diagnostics: dict = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("outer", "inner"):
            raise DomainError("kind must be 'outer' or 'inner'")
        if self.radius <= 0.0:
            raise DomainError("radius must be positive")
        if self.rule.exactness_degree < 2 * self.order - 2:
            raise DomainError("rule exactness inadequate for expansion order")
        w = np.asarray(self.surface_weights, dtype=float)
        if w.shape != (len(self.rule),):
            raise DomainError("one surface weight per quadrature point required")
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "surface_weights", w)

    @property
    def surface_points(self):
        """Absolute positions center + R rhat_i, shape (N, 3)."""
        return self.center + self.radius * self.rule.points

    def scaled_by(self, c):
        return replace(self, surface_weights=c * self.surface_weights)

    def __add__(self, other):
        _require_same_geometry(self, other)
        if self.kind != other.kind:
            raise ContractViolation("cannot add outer and inner expansions")
        return replace(self, surface_weights=self.surface_weights + other.surface_weights)


def _require_same_geometry(a, b):
    if (a.order != b.order or a.rule is not b.rule and len(a.rule) != len(b.rule)
            or abs(a.radius - b.radius) > 1e-12 * max(a.radius, b.radius)
            or np.any(np.abs(a.center - b.center) > 1e-12 * (1.0 + np.abs(a.center)))):
        raise ContractViolation("expansions do not share center, radius, rule, and order")


def fit_outer(sources, center, R, p, rule=None):
    """Project enclosed sources onto surface weights of an order-p outer expansion."""
    if R <= 0.0:
        raise DomainError("bounding radius must be positive")
    rule = rule or _default_rule(p)
    center = np.asarray(center, dtype=float)
    if len(sources) == 0:
        weights = np.zeros(len(rule))
        diag = {"n_sources_outside": 0, "max_source_radius": 0.0}
    else:
        rel = (sources.positions - center) / R
        dist = np.linalg.norm(rel, axis=1)
        # K(y/R, rhat_i): sources in rows, surface points in columns
        kmat = kernel_matrix(rel[:, None, :], rule.points[None, :, :], p)
        weights = rule.weights * (sources.charges @ kmat)
        diag = {
            "n_sources_outside": int(np.sum(dist > 1.0)),
            "max_source_radius": float(dist.max() * R),
        }
    return SurfaceExpansion(center=center, radius=R, rule=rule,
                            surface_weights=weights, order=p, kind="outer",
                            diagnostics=diag)


def fit_inner(sources, center, R, p, rule=None):
    """Project exterior sources onto surface weights of an order-p inner expansion."""
    if R <= 0.0:
        raise DomainError("bounding radius must be positive")
    rule = rule or _default_rule(p)
    center = np.asarray(center, dtype=float)
    if len(sources) == 0:
        weights = np.zeros(len(rule))
    else:
        rel = (sources.positions - center) / R
        dist = np.linalg.norm(rel, axis=1)
        if np.any(np.abs(dist - 1.0) <= 1e-12):
            raise SingularityError("source lies on the bounding sphere")
        kmat = kernel_matrix(rule.points[:, None, :], rel[None, :, :], p)
        weights = rule.weights * (kmat @ sources.charges)
    return SurfaceExpansion(center=center, radius=R, rule=rule,
                            surface_weights=weights, order=p, kind="inner")


def _default_rule(p):
    from .quadrature import rule_for_expansion
    return rule_for_expansion(p)


def eval_outer_potential(exp, x):
    """Potential of an outer expansion at exterior point(s) x."""
    if exp.kind != "outer":
        raise ContractViolation("outer expansion required")
    x = np.asarray(x, dtype=float)
    rel = x - exp.center
    a = exp.radius * exp.rule.points                      # (N, 3)
    L = scaled_legendre_stack(a, rel[..., None, :], exp.order)
    return np.sum(L, axis=0) @ exp.surface_weights


def eval_inner_potential(exp, y):
    """Potential of an inner expansion at interior point(s) y."""
    if exp.kind != "inner":
        raise ContractViolation("inner expansion required")
    y = np.asarray(y, dtype=float)
    rel = y - exp.center
    a = exp.radius * exp.rule.points
    L = scaled_legendre_stack(rel[..., None, :], a, exp.order)
    return np.sum(L, axis=0) @ exp.surface_weights


def eval_point_charge_potential(exp, x):
    """Potential from the surface weights treated as literal point charges."""
    x = np.asarray(x, dtype=float)
    diff = x[..., None, :] - exp.surface_points
    dist = np.linalg.norm(diff, axis=-1)
    if np.any(dist < 1e-12):
        raise SingularityError("evaluation point coincides with a surface point")
    return (1.0 / dist) @ exp.surface_weights


def interaction_energy(outer, inner):
    """Energy between the sources of a shared-sphere outer/inner pair."""
    if outer.kind != "outer" or inner.kind != "inner":
        raise ContractViolation("expected (outer, inner) expansions")
    _require_same_geometry(outer, inner)
    rhat = outer.rule.points
    L = scaled_legendre_stack(rhat[:, None, :], rhat[None, :, :], outer.order)
    M = np.sum(L, axis=0)
    return float(outer.surface_weights @ M @ inner.surface_weights) / outer.radius


def energy_between_outers(a, b):
    """Coulomb energy of two disjoint outer expansions via their point charges."""
    sep = np.linalg.norm(a.center - b.center)
    if sep <= a.radius + b.radius:
        raise GeometryError("bounding spheres overlap")
    diff = a.surface_points[:, None, :] - b.surface_points[None, :, :]
    dist = np.linalg.norm(diff, axis=-1)
    return float(a.surface_weights @ (1.0 / dist) @ b.surface_weights)


def direct_potential(sources, x):
    """Brute-force Coulomb sum over the sources at point(s) x."""
    x = np.asarray(x, dtype=float)
    if len(sources) == 0:
        return np.zeros(x.shape[:-1])[()] if x.ndim > 1 else 0.0
    dist = np.linalg.norm(x[..., None, :] - sources.positions, axis=-1)
    return (1.0 / dist) @ sources.charges


def direct_energy(a, b):
    """Brute-force double Coulomb sum between two charge sets."""
    if len(a) == 0 or len(b) == 0:
        return 0.0
    dist = np.linalg.norm(a.positions[:, None, :] - b.positions[None, :, :], axis=-1)
    return float(a.charges @ (1.0 / dist) @ b.charges)


def expansion_to_text(exp):
    """Serialize to the documented text format."""
    lines = [
        "quadpole-expansion kind=%s p=%d R=%.17g rule_order=%d center=%.17g,%.17g,%.17g"
        % ((exp.kind, exp.order, exp.radius, exp.rule.exactness_degree) + tuple(exp.center))
    ]
    for (x, y, z), w in zip(exp.rule.points, exp.surface_weights):
        lines.append("%.17g %.17g %.17g %.17g" % (x, y, z, w))
    return "\n".join(lines) + "\n"


def expansion_from_text(text):
    """Parse the output of :func:`expansion_to_text`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if not head or head[0] != "quadpole-expansion":
        raise DomainError("not a serialized surface expansion")
    fields = dict(item.split("=", 1) for item in head[1:])
    rule = lebedev_rule(int(fields["rule_order"]))
    data = np.array([[float(v) for v in ln.split()] for ln in lines[1:]])
    if data.shape != (len(rule), 4):
        raise DomainError("surface point count does not match the rule")
    if not np.allclose(data[:, :3], rule.points, atol=1e-12):
        raise DomainError("surface points do not match the embedded rule")
    return SurfaceExpansion(
        center=np.array([float(v) for v in fields["center"].split(",")]),
        radius=float(fields["R"]),
        rule=rule,
        surface_weights=data[:, 3].copy(),
        order=int(fields["p"]),
        kind=fields["kind"],
    )
