"""Closed curves in R^3_1: representations, arc length, Frenet apparatus.

A ClosedCurve is a periodic parametric map t -> R^3_1 with derivatives up
to third order (builtin analytic families, truncated Fourier series, or
periodic cubic splines). reparametrize_arclength wraps it in an
ArcLengthCurve addressed by Lorentz arc length s, on which the Frenet
frame {T, N, B} with <T,T> = <N,N> = 1, <B,B> = -1 and

    T' = k N,   N' = -k T + tau B,   B' = tau N

is computed. The winding index is the number of turns of the tangent
longitude, and the total curvature is the integral of k ds, which equals
the length of the tangent indicatrix on the de Sitter sphere.
"""
from __future__ import annotations

import dataclasses

import numpy as np
from scipy.interpolate import CubicSpline

from ._numerics import ArcLengthMap, adaptive_composite_gl, _as_1d
from .errors import (
    BadParameter,
    InflectionPoint,
    NonIntegerWinding,
    NotSpacelike,
    NotStrongSpacelike,
)
from .lorentz import lorentz_cross, minkowski_inner


def _vec_eval(fn, t):
    t_arr, scalar = _as_1d(t)
    out = np.asarray(fn(t_arr), dtype=float)
    return out[0] if scalar else out


class ClosedCurve:
    """Periodic parametric curve t -> R^3_1 with derivative access.

    ``point`` and the three derivative callables take a 1d array of
    parameters and return an array of shape (n, 3); they must be periodic
    with the stated period.
    """

    def __init__(self, point, derivs, period, name: str = ""):
        derivs = tuple(derivs)
        if len(derivs) != 3:
            raise BadParameter("derivs must provide orders 1, 2 and 3")
        self._point = point
        self._derivs = derivs
        self.period = float(period)
        self.name = name
        self._check_periodicity()

    def _check_periodicity(self, n_probe: int = 7, tol: float = 1e-10):
        t = np.linspace(0.0, self.period, n_probe, endpoint=False) + 0.1234
        p0 = np.asarray(self._point(t), dtype=float)
        p1 = np.asarray(self._point(t + self.period), dtype=float)
        scale = 1.0 + float(np.max(np.abs(p0)))
        gap = float(np.max(np.abs(p1 - p0)))
        if gap > tol * scale:
            raise BadParameter(
                f"curve is not periodic with period {self.period} (gap {gap:.3e})")

    def point(self, t):
        return _vec_eval(self._point, t)

    def deriv(self, t, order: int = 1):
        if order not in (1, 2, 3):
            raise BadParameter("derivative order must be 1, 2 or 3")
        return _vec_eval(self._derivs[order - 1], t)

    def speed_sq(self, t):
        """Lorentz square of the velocity; positive on spacelike arcs."""
        d1 = self.deriv(t, 1)
        return minkowski_inner(d1, d1)

    def unit_tangent(self, t):
        d1 = self.deriv(t, 1)
        v = np.sqrt(minkowski_inner(d1, d1))
        return d1 / v[..., None]

    def unit_tangent_deriv(self, t):
        """d/dt of the unit tangent, in the curve's own parameter."""
        d1 = self.deriv(t, 1)
        d2 = self.deriv(t, 2)
        q11 = minkowski_inner(d1, d1)
        q12 = minkowski_inner(d1, d2)
        v = np.sqrt(q11)
        return d2 / v[..., None] - d1 * (q12 / (q11 * v))[..., None]

    def reversed(self) -> "ClosedCurve":
        p = self.period
        d1, d2, d3 = self._derivs

        def flip(f, sign):
            return lambda t: sign * np.asarray(f(p - np.asarray(t, dtype=float)), dtype=float)

        return ClosedCurve(flip(self._point, 1.0),
                           (flip(d1, -1.0), flip(d2, 1.0), flip(d3, -1.0)),
                           p, name=self.name + ":rev")

    def transformed(self, m) -> "ClosedCurve":
        m = np.asarray(m, dtype=float)

        def push(f):
            return lambda t: np.asarray(f(np.asarray(t, dtype=float)), dtype=float) @ m.T

        return ClosedCurve(push(self._point), tuple(push(d) for d in self._derivs),
                           self.period, name=self.name + ":xf")

    @classmethod
    def from_fourier(cls, period, coeffs, name: str = "fourier") -> "ClosedCurve":
        """Build from per-coordinate trigonometric polynomials.

        ``coeffs`` maps "x1"/"x2"/"x3" to {"a0": float, "cos": [a1, a2, ...],
        "sin": [b1, b2, ...]}; the n-th entries multiply cos(n w t), sin(n w t)
        with w = 2 pi / period. Missing coordinates are zero.
        """
        period = float(period)
        if period <= 0:
            raise BadParameter("period must be positive")
        omega = 2.0 * np.pi / period
        a0 = np.zeros(3)
        per_coord = []
        n_max = 0
        for j, key in enumerate(("x1", "x2", "x3")):
            spec = coeffs.get(key) or {}
            cos_c = np.asarray(spec.get("cos", []), dtype=float)
            sin_c = np.asarray(spec.get("sin", []), dtype=float)
            a0[j] = float(spec.get("a0", 0.0))
            per_coord.append((cos_c, sin_c))
            n_max = max(n_max, cos_c.size, sin_c.size)
        if n_max == 0:
            raise BadParameter("Fourier coefficient lists are all empty")
        c = np.zeros((3, n_max), dtype=complex)
        for j, (cos_c, sin_c) in enumerate(per_coord):
            c[j, :cos_c.size] += cos_c
            c[j, :sin_c.size] -= 1j * sin_c

        modes = np.arange(1, n_max + 1)

        def make(order):
            factor = (1j * modes * omega) ** order

            def f(t):
                t = np.asarray(t, dtype=float)
                phase = np.exp(1j * omega * np.outer(t, modes))
                vals = (phase * factor) @ c.T
                out = vals.real
                if order == 0:
                    out = out + a0
                return out

            return f

        return cls(make(0), (make(1), make(2), make(3)), period, name=name)

    @classmethod
    def from_spline(cls, points, period=None, name: str = "spline") -> "ClosedCurve":
        """Periodic cubic spline through rows (t, x1, x2, x3).

        Either the last row repeats the first (period = t[-1] - t[0]) or an
        explicit period is given and a closing row is appended. At least 8
        distinct points are required.
        """
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 4:
            raise BadParameter("spline points must be rows (t, x1, x2, x3)")
        t = pts[:, 0]
        xyz = pts[:, 1:]
        if not np.all(np.diff(t) > 0):
            raise BadParameter("spline parameter values must be strictly increasing")
        closed = bool(np.max(np.abs(xyz[0] - xyz[-1])) <= 1e-9)
        if period is None:
            if not closed:
                raise BadParameter("spline needs a repeated closing row or an explicit period")
            tt, yy = t, xyz
        else:
            period = float(period)
            if closed and abs((t[-1] - t[0]) - period) <= 1e-12 * max(1.0, period):
                tt, yy = t, xyz
            else:
                tt = np.append(t, t[0] + period)
                yy = np.vstack([xyz, xyz[:1]])
        if len(tt) < 9:
            raise BadParameter("spline needs at least 8 distinct points")
        per = float(tt[-1] - tt[0])
        shift = float(tt[0])
        spline = CubicSpline(tt - shift, yy, axis=0, bc_type="periodic")
        ders = [spline.derivative(k) for k in (1, 2, 3)]

        def wrap(f):
            return lambda u: np.asarray(
                f(np.mod(np.asarray(u, dtype=float) - shift, per)), dtype=float)

        return cls(wrap(spline), tuple(wrap(d) for d in ders), per, name=name)


class ArcLengthCurve(ClosedCurve):
    """A closed spacelike curve addressed by Lorentz arc length.

    Evaluation composes the inverse arc-length map with the base curve, so
    <gamma'(s), gamma'(s)> = 1 holds to machine precision by construction.
    """

    def __init__(self, base: ClosedCurve, n_samples: int = 4096):
        if isinstance(base, ArcLengthCurve):
            base = base.base
        self.base = base
        self.n_samples = int(n_samples)
        self._validate_spacelike()
        self._map = ArcLengthMap(self._speed, base.period, self.n_samples)
        self.length = self._map.total
        super().__init__(self._point_s, (self._d1_s, self._d2_s, self._d3_s),
                         self.length, name=base.name)

    def _speed(self, t):
        return np.sqrt(minkowski_inner(self.base.deriv(t, 1), self.base.deriv(t, 1)))

    def _validate_spacelike(self):
        probe = np.linspace(0.0, self.base.period, 2 * self.n_samples, endpoint=False)
        for offset in (0.0, 0.25, 0.61):
            t = probe + offset * self.base.period / (2 * self.n_samples)
            q = self.base.speed_sq(t)
            worst = int(np.argmin(q))
            if q[worst] <= 0.0:
                raise NotSpacelike(
                    f"<gamma', gamma'> = {q[worst]:.3e} <= 0 at t = {t[worst]:.6f}",
                    t=float(t[worst]))

    def param_of_arc(self, s):
        return self._map.t_of_s(s)

    def arc_of_param(self, t):
        return self._map.s_of_t(t)

    def _chain_parts(self, s):
        t = self._map.t_of_s(np.atleast_1d(np.asarray(s, dtype=float)))
        d1 = self.base.deriv(t, 1)
        d2 = self.base.deriv(t, 2)
        d3 = self.base.deriv(t, 3)
        q11 = minkowski_inner(d1, d1)
        q12 = minkowski_inner(d1, d2)
        return t, d1, d2, d3, q11, q12

    def _point_s(self, s):
        t = self._map.t_of_s(np.asarray(s, dtype=float))
        return self.base.point(t)

    def _d1_s(self, s):
        _, d1, _, _, q11, _ = self._chain_parts(s)
        return d1 / np.sqrt(q11)[:, None]

    def _d2_s(self, s):
        _, d1, d2, _, q11, q12 = self._chain_parts(s)
        return d2 / q11[:, None] - d1 * (q12 / q11 ** 2)[:, None]

    def _d3_s(self, s):
        _, d1, d2, d3, q11, q12 = self._chain_parts(s)
        q22 = minkowski_inner(d2, d2)
        q13 = minkowski_inner(d1, d3)
        v = np.sqrt(q11)
        c1 = 4.0 * q12 ** 2 / v ** 7 - (q22 + q13) / v ** 5
        return d3 / v[:, None] ** 3 - d2 * (3.0 * q12 / v ** 5)[:, None] + d1 * c1[:, None]


def reparametrize_arclength(curve: ClosedCurve, n_samples: int = 4096) -> ArcLengthCurve:
    """Arc-length view of a spacelike closed curve.

    Raises NotSpacelike when <gamma', gamma'> <= 0 at any probed parameter.
    """
    return ArcLengthCurve(curve, n_samples=n_samples)


@dataclasses.dataclass(frozen=True)
class FrenetData:
    """Frenet frame sample(s): T, N spacelike unit, B timelike unit, future directed."""
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    k: np.ndarray | float
    tau: np.ndarray | float


# Absolute threshold on <gamma'', gamma''> for the curve rescaled to unit
# total length; below it the curvature vector is numerically degenerate.
INFLECTION_TOL = 1e-10


def frenet_apparatus(curve: ArcLengthCurve, s) -> FrenetData:
    """Frenet data at arc length s (scalar or array).

    k = sqrt(<gamma'', gamma''>) > 0, N = gamma''/k, B the future-directed
    unit timelike completion, and tau read off from N' = -k T + tau B,
    i.e. tau = -<gamma''', B> / k.
    """
    if not isinstance(curve, ArcLengthCurve):
        raise BadParameter("frenet_apparatus needs an arc-length parametrized curve")
    s_arr, scalar = _as_1d(s)
    t, d1, d2, d3, q11, q12 = curve._chain_parts(s_arr)
    if np.any(q11 <= 0.0):
        worst = int(np.argmin(q11))
        raise NotSpacelike("tangent not spacelike", t=float(t[worst]))
    q22 = minkowski_inner(d2, d2)
    gram = q11 * q22 - q12 ** 2
    k_sq = gram / q11 ** 3
    tol_k = INFLECTION_TOL / curve.length ** 2
    if np.any(gram <= 0.0):
        raise NotStrongSpacelike(
            f"osculating plane not spacelike (Gram min {float(np.min(gram)):.3e})")
    if np.any(k_sq <= tol_k):
        raise InflectionPoint(
            f"curvature below threshold (min k^2 = {float(np.min(k_sq)):.3e})")
    v = np.sqrt(q11)
    T = d1 / v[:, None]
    acc = d2 / q11[:, None] - d1 * (q12 / q11 ** 2)[:, None]
    k = np.sqrt(k_sq)
    N = acc / k[:, None]
    c = lorentz_cross(T, N)
    norm = np.sqrt(-minkowski_inner(c, c))
    B = c / norm[:, None]
    sign = np.where(B[:, 2] > 0.0, 1.0, -1.0)
    B = B * sign[:, None]
    jerk = curve._d3_s(s_arr)
    tau = -minkowski_inner(jerk, B) / k
    if scalar:
        return FrenetData(T[0], N[0], B[0], float(k[0]), float(tau[0]))
    return FrenetData(T, N, B, k, tau)


@dataclasses.dataclass(frozen=True)
class StrongSpacelikeReport:
    """Margins from sampling the strong-spacelike conditions.

    min_tangent_norm and min_plane_margin are normalized against the
    Euclidean magnitudes of the derivatives, so the verdict thresholds are
    scale invariant; min_curvature is the raw minimum of k times the total
    length (dimensionless).
    """
    verdict: bool
    min_tangent_norm: float
    min_plane_margin: float
    min_curvature: float
    worst_location: float
    tol: float


def certify_strong_spacelike(curve: ClosedCurve, n_samples: int = 4096,
                             tol: float = 1e-9) -> StrongSpacelikeReport:
    """Sample the three strong-spacelike margins; never raises, the verdict carries failure."""
    base = curve.base if isinstance(curve, ArcLengthCurve) else curve
    t = np.linspace(0.0, base.period, n_samples, endpoint=False)
    t = np.concatenate([t, t + 0.5 * base.period / n_samples])
    d1 = base.deriv(t, 1)
    d2 = base.deriv(t, 2)
    q11 = minkowski_inner(d1, d1)
    q12 = minkowski_inner(d1, d2)
    q22 = minkowski_inner(d2, d2)
    e1 = np.einsum("ij,ij->i", d1, d1)
    e2 = np.einsum("ij,ij->i", d2, d2)
    tangent_margin = q11 / e1
    gram = q11 * q22 - q12 ** 2
    plane_margin = gram / (e1 * e2)
    i_tan = int(np.argmin(tangent_margin))
    i_pl = int(np.argmin(plane_margin))
    spacelike = tangent_margin[i_tan] > tol
    if spacelike:
        # curvature in arc length, made dimensionless with a length scale
        with np.errstate(invalid="ignore"):
            k = np.sqrt(np.maximum(gram, 0.0)) / np.maximum(q11, 1e-300) ** 1.5
        length_scale = float(np.sum(np.sqrt(np.maximum(q11, 0.0))) * base.period / len(t))
        k_scaled = k * length_scale
        i_k = int(np.argmin(k_scaled))
        min_curv = float(k_scaled[i_k])
    else:
        i_k = i_tan
        min_curv = float("nan")
    margins = [(tangent_margin[i_tan], t[i_tan]),
               (plane_margin[i_pl], t[i_pl]),
               (min_curv if spacelike else -np.inf, t[i_k])]
    worst = min(margins, key=lambda m: (m[0] if np.isfinite(m[0]) else -np.inf))
    verdict = bool(spacelike and plane_margin[i_pl] > tol and
                   np.isfinite(min_curv) and min_curv > tol)
    return StrongSpacelikeReport(
        verdict=verdict,
        min_tangent_norm=float(tangent_margin[i_tan]),
        min_plane_margin=float(plane_margin[i_pl]),
        min_curvature=min_curv,
        worst_location=float(worst[1]),
        tol=float(tol),
    )


def winding_index(curve: ClosedCurve, n_samples: int = 8192) -> int:
    """Turns of the tangent longitude over one period (signed).

    For a strong spacelike curve the longitude of T is strictly monotone,
    so the lift increases by an exact multiple of 2 pi.
    """
    base = curve.base if isinstance(curve, ArcLengthCurve) else curve
    t = np.linspace(0.0, base.period, n_samples + 1)
    d1 = base.deriv(t, 1)
    q11 = minkowski_inner(d1, d1)
    if np.any(q11 <= 0.0):
        worst = int(np.argmin(q11))
        raise NotSpacelike("tangent not spacelike", t=float(t[worst]))
    lift = np.unwrap(np.arctan2(d1[:, 1], d1[:, 0]))
    delta = (lift[-1] - lift[0]) / (2.0 * np.pi)
    idx = int(np.round(delta))
    if abs(delta - idx) > 1e-6:
        raise NonIntegerWinding(f"tangent longitude advanced {delta:+.8f} turns")
    return idx


def total_curvature(curve: ClosedCurve, rel_tol: float = 1e-11) -> float:
    """Integral of k ds over one period, by adaptive composite quadrature.

    Integrates k(t) |gamma'(t)| dt = sqrt(Gram(gamma', gamma'')) / <gamma', gamma'> dt
    in the base parameter, which avoids inverse arc-length lookups.
    """
    base = curve.base if isinstance(curve, ArcLengthCurve) else curve

    def integrand(t):
        d1 = base.deriv(t, 1)
        d2 = base.deriv(t, 2)
        q11 = minkowski_inner(d1, d1)
        q12 = minkowski_inner(d1, d2)
        q22 = minkowski_inner(d2, d2)
        gram = q11 * q22 - q12 ** 2
        if np.any(q11 <= 0.0) or np.any(gram <= 0.0):
            raise NotStrongSpacelike("total curvature needs a strong spacelike curve")
        return np.sqrt(gram) / q11

    return adaptive_composite_gl(integrand, 0.0, base.period, rel_tol=rel_tol, n0=64)
