"""Legendre polynomials, the scaled two-argument sequence L_n, and the kernel K.

Everything here works with vector inner products only; no angles appear.
The two-argument sequence is generated by the two-term recurrence

    F_0 = |y|^a
    F_1 = -a (x.y / y.y) |y|^a
    F_n = [(2n-2-a)/n] (x.y/y.y) F_{n-1} + [(a+2-n)/n] (x.x/y.y) F_{n-2}

with a = -1 giving L_n(x, y) = (|x|^n / |y|^{n+1}) P_n(xhat.yhat), the
terms of the expansion 1/|x-y| = sum_n L_n(x, y) for |x| < |y|.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError

__all__ = [
    "LegendreSeq",
    "legendre_poly",
    "legendre_poly_table",
    "f_sequence",
    "f_sequence_raw",
    "scaled_legendre_seq",
    "scaled_legendre_stack",
    "kernel_K",
    "kernel_matrix",
    "grad_scaled_legendre_stack",
]


@dataclass(frozen=True)
class LegendreSeq:
    """Values F_0..F_{p-1} of the scaled sequence for one argument pair."""

    values: np.ndarray
    alpha: float


def legendre_poly(n, t):
    """Evaluate the Legendre polynomial P_n(t) by the three-term recurrence.

    Accepts scalar or array t with |t| <= 1 (clamped within 1e-12 slack).
    """
    if n < 0:
        raise DomainError("polynomial degree must be non-negative")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + 1e-12):
        raise DomainError("argument outside [-1, 1]")
    t = np.clip(t, -1.0, 1.0)
    if n == 0:
        out = np.ones_like(t)
        return out[()] if out.ndim == 0 else out
    p_prev = np.ones_like(t)
    p_cur = t.copy()
    for k in range(2, n + 1):
        p_prev, p_cur = p_cur, ((2 * k - 1) * t * p_cur - (k - 1) * p_prev) / k
    return p_cur[()] if p_cur.ndim == 0 else p_cur


def legendre_poly_table(n_max, t):
    """Stack P_0(t)..P_{n_max-1}(t), shape (n_max,) + t.shape."""
    t = np.asarray(t, dtype=float)
    out = np.empty((n_max,) + t.shape)
    out[0] = 1.0
    if n_max > 1:
        out[1] = t
    for k in range(2, n_max):
        out[k] = ((2 * k - 1) * t * out[k - 1] - (k - 1) * out[k - 2]) / k
    return out


def f_sequence_raw(xy, xx, yy, alpha, p):
    """Sequence F_0..F_{p-1} from the inner products x.y, x.x, y.y.

    Inputs broadcast; the result has shape (p,) + broadcast shape.
    """
    xy, xx, yy = np.broadcast_arrays(
        np.asarray(xy, dtype=float), np.asarray(xx, dtype=float), np.asarray(yy, dtype=float)
    )
    if np.any(yy <= 0.0):
        raise SingularityError("second argument must be nonzero")
    out = np.empty((p,) + yy.shape)
    out[0] = yy ** (alpha / 2.0)
    if p > 1:
        out[1] = -alpha * (xy / yy) * out[0]
    for n in range(2, p):
        out[n] = ((2 * n - 2 - alpha) / n) * (xy / yy) * out[n - 1] \
            + ((alpha + 2 - n) / n) * (xx / yy) * out[n - 2]
    return out


def f_sequence(x, y, alpha, p):
    """Two-argument scaled sequence for a single (x, y) pair."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if p < 1:
        raise DomainError("sequence length must be positive")
    vals = f_sequence_raw(x @ y, x @ x, y @ y, alpha, p)
    return LegendreSeq(values=vals, alpha=alpha)


def scaled_legendre_seq(x, y, p):
    """L_0..L_{p-1} for one pair; the alpha = -1 (Coulomb) case."""
    return f_sequence(x, y, -1.0, p)


def scaled_legendre_stack(x, y, p):
    """L_n stack for broadcast arrays of 3-vectors; shape (p,) + batch."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xy = np.sum(x * y, axis=-1)
    xx = np.sum(x * x, axis=-1)
    yy = np.sum(y * y, axis=-1)
    return f_sequence_raw(xy, xx, yy, -1.0, p)


def kernel_K(x, y, p):
    """Reproducing kernel K(x, y) = sum_{n<p} (2n+1)/(4 pi) L_n(x, y)."""
    return kernel_matrix(x, y, p)


def kernel_matrix(x, y, p):
    """K evaluated with broadcasting over batches of 3-vectors."""
    L = scaled_legendre_stack(x, y, p)
    coef = (2.0 * np.arange(p) + 1.0) / (4.0 * np.pi)
    return np.tensordot(coef, L, axes=(0, 0))


def grad_scaled_legendre_stack(a, x, p):
    """Gradients d/dx of L_n(a, x), shape (p,) + batch + (3,).

    Obtained by differentiating the recurrence with respect to the
    inner products u = a.x and s = x.x, so no angles or unit vectors
    are introduced.
    """
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    u = np.sum(a * x, axis=-1)
    aa = np.sum(a * a, axis=-1)
    s = np.sum(x * x, axis=-1)
    if np.any(s <= 0.0):
        raise SingularityError("evaluation point at the expansion singularity")
    u, aa, s = np.broadcast_arrays(u, aa, s)
    F = np.empty((p,) + s.shape)
    dFu = np.zeros_like(F)
    dFs = np.zeros_like(F)
    F[0] = s ** -0.5
    dFs[0] = -0.5 * s ** -1.5
    if p > 1:
        F[1] = u * s ** -1.5
        dFu[1] = s ** -1.5
        dFs[1] = -1.5 * u * s ** -2.5
    for n in range(2, p):
        c1 = (2 * n - 1) / n
        c2 = (1 - n) / n
        F[n] = c1 * (u / s) * F[n - 1] + c2 * (aa / s) * F[n - 2]
        dFu[n] = c1 * (F[n - 1] / s + (u / s) * dFu[n - 1]) + c2 * (aa / s) * dFu[n - 2]
        dFs[n] = c1 * (-(u / s ** 2) * F[n - 1] + (u / s) * dFs[n - 1]) \
            + c2 * (-(aa / s ** 2) * F[n - 2] + (aa / s) * dFs[n - 2])
    a_b, x_b = np.broadcast_arrays(a, x)
    return dFu[..., None] * a_b + 2.0 * dFs[..., None] * x_b
