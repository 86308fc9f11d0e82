"""Lebedev quadrature rules on the unit sphere.

Rules are loaded from text tables embedded in the package data (see
data/lebedev/README.md for the layout).  Weights are rescaled at load
time to sum to 4 pi, the measure of the unit sphere, so quadrature sums
directly approximate surface integrals.
"""
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import CapacityError, DomainError, UnsupportedOrderError

__all__ = [
    "QuadratureRule",
    "available_orders",
    "lebedev_rule",
    "rule_for_expansion",
    "verify_exactness",
    "sphere_monomial_integral",
]

# orders of the embedded Lebedev-Laikov rules; 13, 25, and 27 are omitted
# because their published weights are not all positive
_ORDERS = (3, 5, 7, 9, 11, 15, 17, 19, 21, 23, 29, 31, 35, 41, 47, 53, 59, 131)

_cache = {}


@dataclass(frozen=True)
class QuadratureRule:
    """Unit-sphere point set with weights summing to 4 pi."""

    points: np.ndarray          # (N, 3) unit vectors
    weights: np.ndarray         # (N,) positive, sum 4 pi
    exactness_degree: int

    def __post_init__(self):
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return len(self.weights)


def available_orders():
    """Orders of the embedded rules, ascending."""
    return _ORDERS


def lebedev_rule(order):
    """Load the embedded Lebedev rule with the given exactness degree."""
    if order not in _ORDERS:
        raise UnsupportedOrderError(
            "no embedded Lebedev rule of order %r; supported orders: %s"
            % (order, ", ".join(map(str, _ORDERS)))
        )
    if order not in _cache:
        name = "lebedev_%03d.txt" % order
        ref = resources.files("quadpole.data") / "lebedev" / name
        table = np.loadtxt(str(ref)).reshape(-1, 4)
        points = np.ascontiguousarray(table[:, :3])
        weights = table[:, 3] * (4.0 * np.pi)  # tables are normalized to 1
        if weights.min() <= 0.0:
            raise DomainError("embedded table for order %d has non-positive weights" % order)
        _cache[order] = QuadratureRule(points=points, weights=weights, exactness_degree=order)
    return _cache[order]


def rule_for_expansion(p, min_order=None):
    """Smallest embedded rule exact to degree >= 2p-2.

    ``min_order`` pins the rule to at least that order, for experiments
    that fix one grid across several expansion orders.
    """
    if p < 1:
        raise DomainError("expansion order must be positive")
    need = max(2 * p - 2, min_order or 0)
    for order in _ORDERS:
        if order >= need:
            return lebedev_rule(order)
    raise CapacityError(
        "no embedded rule of degree >= %d; maximum supported expansion order is %d"
        % (need, (_ORDERS[-1] + 2) // 2)
    )


def sphere_monomial_integral(a, b, c):
    """Closed-form integral of x^a y^b z^c over the unit sphere surface.

    Zero when any exponent is odd; otherwise
    4 pi (a-1)!! (b-1)!! (c-1)!! / (a+b+c+1)!!.
    """
    if a % 2 or b % 2 or c % 2:
        return 0.0
    num = _double_factorial(a - 1) * _double_factorial(b - 1) * _double_factorial(c - 1)
    return 4.0 * np.pi * num / _double_factorial(a + b + c + 1)


def _double_factorial(n):
    out = 1.0
    while n > 1:
        out *= n
        n -= 2
    return out


def verify_exactness(rule, degree):
    """Max absolute quadrature error over all monomials of total degree <= degree."""
    if degree < 0:
        raise DomainError("degree must be non-negative")
    x, y, z = rule.points.T
    expo = np.arange(degree + 1)
    px = x ** expo[:, None]          # (degree+1, N) power tables
    py = y ** expo[:, None]
    pz = z ** expo[:, None]
    # closed-form reference pieces: (k-1)!! for even k, 0 for odd k
    dfac = np.array([_double_factorial(k - 1) if k % 2 == 0 else 0.0 for k in expo])
    dtot = np.array([_double_factorial(k + 1) for k in range(2 * degree + 1)])
    worst = 0.0
    for a in range(degree + 1):
        d = degree - a
        wa = rule.weights * px[a]
        approx = (py[:d + 1] * wa) @ pz[:d + 1].T        # (b, c) table
        b, c = np.meshgrid(expo[:d + 1], expo[:d + 1], indexing="ij")
        exact = 4.0 * np.pi * dfac[a] * dfac[b] * dfac[c] / dtot[a + b + c]
        mask = b + c <= d
        worst = max(worst, np.max(np.abs(approx - exact)[mask]))
    return worst
