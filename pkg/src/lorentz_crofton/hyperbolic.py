"""The hyperbolic plane H^2 (upper hyperboloid sheet) as the space of poles.

Points satisfy x1^2 + x2^2 - x3^2 = -1 with x3 >= 1, polar form
(sinh r cos t, sinh r sin t, cosh r). The geodesic disk of radius R is the
slab x3 <= cosh R with hyperbolic area 2 pi (cosh R - 1).
"""
from __future__ import annotations

import dataclasses

import numpy as np

from .errors import BadParameter, NegativeRadius

H2_CONSTRAINT_TOL = 1e-10


def h2_area(radius: float) -> float:
    """Area of the geodesic disk of the given hyperbolic radius."""
    if radius < 0.0:
        raise NegativeRadius(f"radius must be nonnegative, got {radius}")
    return 2.0 * np.pi * (np.cosh(radius) - 1.0)


def from_polar(r, theta):
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.sinh(r) * np.cos(theta),
                     np.sinh(r) * np.sin(theta),
                     np.cosh(r)], axis=-1)


@dataclasses.dataclass(frozen=True)
class DiskRegion:
    """Geodesic disk x3 <= cosh(radius) on the upper sheet."""
    radius: float

    def __post_init__(self):
        if self.radius <= 0.0:
            raise BadParameter("disk radius must be positive")

    @property
    def area(self) -> float:
        return h2_area(self.radius)

    def contains(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return points[..., 2] <= np.cosh(self.radius)


def sample_disk(radius: float, n: int, seed: int, stream: int = 0) -> np.ndarray:
    """n i.i.d. points uniform in hyperbolic area on the disk of given radius.

    Radial law: r = arccosh(1 + u (cosh R - 1)) with u uniform, matching the
    area element sinh r dr dtheta. The generator is counter based (Philox),
    so the draw is deterministic per (seed, stream); nonzero streams are
    reserved for degenerate-sample redraws.
    """
    if radius <= 0.0:
        raise BadParameter("radius must be positive")
    if n < 1:
        raise BadParameter("n must be at least 1")
    bits = np.random.Philox(key=int(seed))
    if stream:
        bits.advance(int(stream) * (1 << 96))
    rng = np.random.Generator(bits)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    u = rng.uniform(0.0, 1.0, size=n)
    r = np.arccosh(1.0 + u * (np.cosh(radius) - 1.0))
    return from_polar(r, theta)


def choose_radius(g, safety: float = 2.0, delta: float = 1e-6) -> float:
    """Disk radius satisfying both pole-support bounds for a spherical curve.

    cosh R = safety * max(max cosh phi, max cosh(phi)^2 theta', 1 + delta),
    which keeps cosh R strictly above both grid maxima for any safety > 1.
    """
    if safety < 1.0:
        raise BadParameter("safety factor must be at least 1")
    target = safety * max(g.cosh_phi_max, g.cosh2_theta_prime_max, 1.0 + delta)
    return float(np.arccosh(target))


def pole_patch_area_element(tau_s, psi):
    """Jacobian sinh|tau(s) - psi| of the (s, psi) pole parametrization."""
    return np.sinh(np.abs(np.asarray(tau_s, dtype=float) - np.asarray(psi, dtype=float)))
