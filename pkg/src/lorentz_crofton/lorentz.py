"""Lorentz linear algebra in R^3_1.

The ambient space is R^3 with the indefinite inner product
<X, Y> = x1*y1 + x2*y2 - x3*y3 (signature +, +, -). Vectors are numpy
arrays with the coordinate on the last axis; functions broadcast over
leading axes unless stated otherwise.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import ZeroVector

ETA = np.diag([1.0, 1.0, -1.0])

DEFAULT_CAUSAL_TOL = 1e-9


class CausalClass(enum.Enum):
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"
    TIMELIKE = "timelike"


def minkowski_inner(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] - x[..., 2] * y[..., 2]


def minkowski_norm_sq(x):
    return minkowski_inner(x, x)


def lorentz_cross(u, v):
    """Bilinear product with <cross(u, v), w> = det(u, v, w) for all w."""
    c = np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    c[..., 2] = -c[..., 2]
    return c


def causal_type(x, tol: float = DEFAULT_CAUSAL_TOL) -> CausalClass:
    """Classify a single vector; the band |<X,X>| <= tol*|X|^2_euclid is lightlike."""
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise ValueError("causal_type classifies one vector of shape (3,)")
    euclid = float(np.dot(x, x))
    if euclid == 0.0:
        raise ZeroVector("cannot classify the zero vector")
    q = float(minkowski_inner(x, x))
    if q > tol * euclid:
        return CausalClass.SPACELIKE
    if q < -tol * euclid:
        return CausalClass.TIMELIKE
    return CausalClass.LIGHTLIKE


_PLANE_OF_NORMAL = {
    CausalClass.TIMELIKE: CausalClass.SPACELIKE,
    CausalClass.SPACELIKE: CausalClass.TIMELIKE,
    CausalClass.LIGHTLIKE: CausalClass.LIGHTLIKE,
}


def plane_causal_type(normal, tol: float = DEFAULT_CAUSAL_TOL) -> CausalClass:
    """Causal class of the plane Lorentz-orthogonal to ``normal``.

    The induced metric on normal^perp is definite exactly when the normal is
    timelike, Lorentzian when it is spacelike, degenerate when lightlike.
    """
    return _PLANE_OF_NORMAL[causal_type(normal, tol)]


def rotation(angle: float) -> np.ndarray:
    """Rotation about the x3 axis."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def boost(rapidity: float) -> np.ndarray:
    """Boost mixing x2 and x3 (the x1 axis is fixed)."""
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]])


def orthochronous_transform(angle: float, rapidity: float) -> np.ndarray:
    return rotation(angle) @ boost(rapidity)


def random_orthochronous_transform(seed: int) -> np.ndarray:
    """Rotation-then-boost transform with rapidity in [-2, 2]; deterministic per seed."""
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    angle = rng.uniform(0.0, 2.0 * np.pi)
    rapidity = rng.uniform(-2.0, 2.0)
    return orthochronous_transform(angle, rapidity)


def is_orthochronous_lorentz(m, tol: float = 1e-12) -> bool:
    """True when M^T eta M = eta within tol and M preserves time orientation."""
    m = np.asarray(m, dtype=float)
    defect = m.T @ ETA @ m - ETA
    return bool(np.max(np.abs(defect)) <= tol and m[2, 2] > 0.0)


def apply_transform(m, x):
    return np.asarray(x, dtype=float) @ np.asarray(m, dtype=float).T
