"""Builtin curve families with closed-form reference quantities.

Space curves (in R^3_1): circle, ellipse, clam_shell, trefoil_spacelike,
plus random perturbed circles for statistical testing. Spherical curves
(on S^2_1): wobble, quad_perturb, and the equator.
"""
from __future__ import annotations

import numpy as np

from .curves import ClosedCurve
from .desitter import SphericalCurve
from .errors import BadParameter, NotStrongSpacelike

TWO_PI = 2.0 * np.pi


def circle(radius: float = 1.0) -> ClosedCurve:
    """Round circle of the given radius in the x1 x2 plane; index 1."""
    if radius <= 0.0:
        raise BadParameter("radius must be positive")
    return ClosedCurve.from_fourier(
        TWO_PI,
        {"x1": {"cos": [radius]}, "x2": {"sin": [radius]}},
        name=f"circle(radius={radius})")


def ellipse(a: float = 2.0, b: float = 1.0) -> ClosedCurve:
    """Axis-aligned ellipse in the x1 x2 plane; convex, index 1."""
    if a <= 0.0 or b <= 0.0:
        raise BadParameter("semi-axes must be positive")
    return ClosedCurve.from_fourier(
        TWO_PI,
        {"x1": {"cos": [a]}, "x2": {"sin": [b]}},
        name=f"ellipse(a={a},b={b})")


def wobble(alpha: float, k: int, index: int = 1, n_samples: int = 4096) -> SphericalCurve:
    """Latitude wave phi = alpha sin(k t) riding longitude theta = t.

    Closed over t in [0, 2 pi index]; admissible exactly when
    cosh(alpha sin k t)^2 > (alpha k cos k t)^2 everywhere.
    """
    if alpha < 0.0:
        raise BadParameter("alpha must be nonnegative")
    if int(k) != k or k < 1 or int(index) != index or index < 1:
        raise BadParameter("k and index must be positive integers")
    k = int(k)
    index = int(index)
    period = TWO_PI * index

    def theta(t):
        return np.asarray(t, dtype=float)

    def phi(t):
        return alpha * np.sin(k * np.asarray(t, dtype=float))

    def dtheta(t):
        return np.ones_like(np.asarray(t, dtype=float))

    def dphi(t):
        return alpha * k * np.cos(k * np.asarray(t, dtype=float))

    return SphericalCurve(theta, phi, dtheta, dphi, period, n_samples=n_samples,
                          name=f"wobble(alpha={alpha},k={k},index={index})")


def equator(n_samples: int = 4096) -> SphericalCurve:
    """The unit-speed equator, the simplest closed spacelike geodesic."""
    return wobble(0.0, 1, 1, n_samples=n_samples)


def clam_shell_height(theta, epsilon: float, order: int = 0):
    """Piecewise height h of the clam-shell curve, or a derivative of it.

    Over one 4 pi period: linear ramps of slope +-epsilon on
    [0, pi/2], [3 pi/2, 5 pi/2], [7 pi/2, 4 pi] and cosine arcs in between,
    matched so that h is C^2 and h'^2 + h''^2 = epsilon^2 everywhere.
    """
    th = np.mod(np.asarray(theta, dtype=float), 2.0 * TWO_PI)
    e = float(epsilon)
    pieces = [
        (th < 0.5 * np.pi,
         [lambda x: e * x, lambda x: e * np.ones_like(x),
          lambda x: np.zeros_like(x), lambda x: np.zeros_like(x)]),
        ((th >= 0.5 * np.pi) & (th < 1.5 * np.pi),
         [lambda x: 0.5 * np.pi * e - e * np.cos(x), lambda x: e * np.sin(x),
          lambda x: e * np.cos(x), lambda x: -e * np.sin(x)]),
        ((th >= 1.5 * np.pi) & (th < 2.5 * np.pi),
         [lambda x: -e * (x - TWO_PI), lambda x: -e * np.ones_like(x),
          lambda x: np.zeros_like(x), lambda x: np.zeros_like(x)]),
        ((th >= 2.5 * np.pi) & (th < 3.5 * np.pi),
         [lambda x: -0.5 * np.pi * e + e * np.cos(x), lambda x: -e * np.sin(x),
          lambda x: -e * np.cos(x), lambda x: e * np.sin(x)]),
        (th >= 3.5 * np.pi,
         [lambda x: e * (x - 2.0 * TWO_PI), lambda x: e * np.ones_like(x),
          lambda x: np.zeros_like(x), lambda x: np.zeros_like(x)]),
    ]
    out = np.zeros_like(th)
    for mask, fns in pieces:
        out = np.where(mask, fns[order](th), out)
    return out


def clam_shell(epsilon: float) -> ClosedCurve:
    """Index-2 curve (cos t, sin t, h(t)) over [0, 4 pi] with the piecewise height.

    Strong spacelike for epsilon in (0, 1); its total curvature grows without
    bound as epsilon -> 1, despite the index staying 2.
    """
    if not 0.0 < epsilon < 1.0:
        raise BadParameter("epsilon must lie in (0, 1)")

    def point(t):
        t = np.asarray(t, dtype=float)
        return np.stack([np.cos(t), np.sin(t),
                         clam_shell_height(t, epsilon, 0)], axis=-1)

    def d1(t):
        t = np.asarray(t, dtype=float)
        return np.stack([-np.sin(t), np.cos(t),
                         clam_shell_height(t, epsilon, 1)], axis=-1)

    def d2(t):
        t = np.asarray(t, dtype=float)
        return np.stack([-np.cos(t), -np.sin(t),
                         clam_shell_height(t, epsilon, 2)], axis=-1)

    def d3(t):
        t = np.asarray(t, dtype=float)
        return np.stack([np.sin(t), -np.cos(t),
                         clam_shell_height(t, epsilon, 3)], axis=-1)

    return ClosedCurve(point, (d1, d2, d3), 2.0 * TWO_PI,
                       name=f"clam_shell(epsilon={epsilon})")


def clam_shell_bound(epsilon: float) -> float:
    """Lower bound 2 pi / sqrt(1 - epsilon^2) for the clam-shell total curvature."""
    if not 0.0 < epsilon < 1.0:
        raise BadParameter("epsilon must lie in (0, 1)")
    return TWO_PI / np.sqrt(1.0 - epsilon ** 2)


def quad_perturb_profile(theta, epsilon: float):
    """Latitude profile of the near-lightlike quadrilateral family.

    sinh(phi) = tan(arcsin(m cos 2 theta) / 2) with m = 1 - epsilon / 2.
    As epsilon -> 0 the graph converges to the quadrilateral of four
    lightlike ruling segments with vertices on the x1 x3 and x2 x3 planes;
    the profile is even in theta and invariant under theta -> pi - theta.
    """
    if not 0.0 < epsilon <= 1.0:
        raise BadParameter("epsilon must lie in (0, 1]")
    th = np.asarray(theta, dtype=float)
    m = 1.0 - 0.5 * epsilon
    return np.arcsinh(np.tan(0.5 * np.arcsin(m * np.cos(2.0 * th))))


def quad_perturb(epsilon: float, n_samples: int = 4096) -> SphericalCurve:
    """Closed index-1 spacelike curve shrinking toward a lightlike quadrilateral.

    The defect 1 - m = epsilon / 2 controls the distance to the lightlike
    limit; the length tends to zero as epsilon -> 0. Admissible for every
    epsilon in (0, 1] since the squared speed is
    (1 + sinh(phi)^2) (1 - A'^2 / 4) with |A'| < 2 whenever m < 1.
    """
    if not 0.0 < epsilon <= 1.0:
        raise BadParameter("epsilon must lie in (0, 1]")
    m = 1.0 - 0.5 * epsilon

    def theta(t):
        return np.asarray(t, dtype=float)

    def dtheta(t):
        return np.ones_like(np.asarray(t, dtype=float))

    def phi(t):
        return quad_perturb_profile(t, epsilon)

    def dphi(t):
        t = np.asarray(t, dtype=float)
        c = m * np.cos(2.0 * t)
        d_arcsin = -2.0 * m * np.sin(2.0 * t) / np.sqrt(1.0 - c ** 2)
        sigma = np.tan(0.5 * np.arcsin(c))
        return 0.5 * np.sqrt(1.0 + sigma ** 2) * d_arcsin

    return SphericalCurve(theta, phi, dtheta, dphi, TWO_PI, n_samples=n_samples,
                          name=f"quad_perturb(epsilon={epsilon})")


# Largest lift amplitude at which the certifier still passes (found once by
# bisection on certify_strong_spacelike at 8192 samples, then rounded down).
TREFOIL_EPS_MAX = 0.74


def trefoil_spacelike(epsilon: float, radial: float = 4.0) -> ClosedCurve:
    """Trefoil diagram (radial + cos 3t)(cos 2t, sin 2t) lifted by x3 = epsilon sin 3t.

    The radial offset keeps the planar tangent angle strictly monotone
    (needs radial > 3.25), so the curve has index 2; a small lift breaks the
    crossings without losing the strong spacelike property. Knotted for
    every epsilon > 0 because the crossing pattern never changes.
    """
    if epsilon <= 0.0:
        raise BadParameter("epsilon must be positive")
    if epsilon > TREFOIL_EPS_MAX:
        raise NotStrongSpacelike(
            f"epsilon = {epsilon} exceeds the certified range (0, {TREFOIL_EPS_MAX}]")
    if radial <= 3.25:
        raise BadParameter("radial offset must exceed 3.25 for a convex-turning diagram")
    r = float(radial)
    return ClosedCurve.from_fourier(
        TWO_PI,
        {
            "x1": {"cos": [0.5, r, 0.0, 0.0, 0.5]},
            "x2": {"sin": [-0.5, r, 0.0, 0.0, 0.5]},
            "x3": {"sin": [0.0, 0.0, float(epsilon)]},
        },
        name=f"trefoil_spacelike(epsilon={epsilon})")


def perturbed_circle(seed: int, amplitude: float = 0.08, max_mode: int = 4,
                     planar: bool = False) -> ClosedCurve:
    """Random trigonometric perturbation of the unit circle; closed by construction.

    Used as a source of generic index-1 curves: higher modes (2..max_mode)
    perturb all coordinates, plus a mode-1 tilt in x3 unless planar. Not
    every seed yields a strong spacelike curve; callers certify and filter.
    """
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    coeffs = {"x1": {"cos": [1.0]}, "x2": {"sin": [1.0]}, "x3": {}}
    for key in ("x1", "x2", "x3"):
        cos_c = [0.0] * max_mode
        sin_c = [0.0] * max_mode
        for n in range(2, max_mode + 1):
            cos_c[n - 1] = rng.normal(0.0, amplitude / n ** 2)
            sin_c[n - 1] = rng.normal(0.0, amplitude / n ** 2)
        if key == "x3" and not planar:
            cos_c[0] = rng.normal(0.0, amplitude)
            sin_c[0] = rng.normal(0.0, amplitude)
        if key == "x3" and planar:
            cos_c = [0.0] * max_mode
            sin_c = [0.0] * max_mode
        base = coeffs[key]
        merged_cos = [a + b for a, b in
                      zip(cos_c, (base.get("cos", []) + [0.0] * max_mode)[:max_mode])]
        merged_sin = [a + b for a, b in
                      zip(sin_c, (base.get("sin", []) + [0.0] * max_mode)[:max_mode])]
        coeffs[key] = {"cos": merged_cos, "sin": merged_sin}
    return ClosedCurve.from_fourier(TWO_PI, coeffs,
                                    name=f"perturbed_circle(seed={seed})")


SPACE_FAMILIES = {
    "circle": circle,
    "ellipse": ellipse,
    "clam_shell": clam_shell,
    "trefoil_spacelike": trefoil_spacelike,
}

SPHERICAL_FAMILIES = {
    "wobble": wobble,
    "quad_perturb": quad_perturb,
    "equator": equator,
}

FAMILIES = {**SPACE_FAMILIES, **SPHERICAL_FAMILIES}
