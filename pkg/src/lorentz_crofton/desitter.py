"""Geometry on the de Sitter sphere S^2_1 = {<X, X> = 1}.

Closed spacelike curves on the sphere are stored as latitude/longitude
functions (phi, theta) of arc length, with the embedding

    e1 = (cosh phi cos theta, cosh phi sin theta, sinh phi)

and the adapted frame completed by

    e2 = (-sin theta, cos theta, 0),
    e3 = (sinh phi cos theta, sinh phi sin theta, cosh phi),

an orthonormal triple of signature (+, +, -) whose structure equations are

    e1' = cosh(phi) theta' e2 + phi' e3,
    e2' = -cosh(phi) theta' e1 + sinh(phi) theta' e3,
    e3' = phi' e1 + sinh(phi) theta' e2.

Unit speed means cosh(phi)^2 theta'^2 - phi'^2 = 1, so theta is strictly
monotone and there is a slope function tau(s) with cosh tau = cosh(phi)
theta' and sinh tau = phi'. Poles Y in the hyperbolic plane parametrize
oriented closed spacelike geodesics Y^perp, and intersections of Y^perp
with a curve are the zeros of s -> <e1(s), Y>.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from ._numerics import ArcLengthMap, UnwrappedAngle, _as_1d
from .errors import (
    BadParameter,
    NonIntegerWinding,
    NotInH2,
    NotOnDeSitter,
    NotSpacelike,
    ZeroVector,
)
from .lorentz import lorentz_cross, minkowski_inner

ON_SPHERE_TOL = 1e-8


def to_latlong(p):
    """Latitude/longitude (phi, theta) of a point on S^2_1, theta in [0, 2 pi)."""
    p = np.asarray(p, dtype=float)
    if np.any(np.abs(minkowski_inner(p, p) - 1.0) > ON_SPHERE_TOL):
        raise NotOnDeSitter("point does not satisfy <p, p> = 1 within 1e-8")
    phi = np.arcsinh(p[..., 2])
    theta = np.mod(np.arctan2(p[..., 1], p[..., 0]), 2.0 * np.pi)
    return phi, theta


def latlong_point(phi, theta):
    phi = np.asarray(phi, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cosh(phi) * np.cos(theta),
                     np.cosh(phi) * np.sin(theta),
                     np.sinh(phi)], axis=-1)


def _frame_arrays(phi, theta):
    ch, sh = np.cosh(phi), np.sinh(phi)
    ct, st = np.cos(theta), np.sin(theta)
    e1 = np.stack([ch * ct, ch * st, sh], axis=-1)
    e2 = np.stack([-st, ct, np.zeros_like(st)], axis=-1)
    e3 = np.stack([sh * ct, sh * st, ch], axis=-1)
    return e1, e2, e3


class SphericalCurve:
    """Closed spacelike curve on S^2_1 with positive longitude speed.

    Constructed from latitude/longitude callables of a build parameter t
    (theta as a continuous lift) and reparametrized by arc length
    internally. The index is the integer number of longitude turns.
    """

    def __init__(self, theta_lift, phi, dtheta, dphi, period,
                 n_samples: int = 4096, name: str = ""):
        self._theta_t = theta_lift
        self._phi_t = phi
        self._dtheta_t = dtheta
        self._dphi_t = dphi
        self.period = float(period)
        self.n_samples = int(n_samples)
        self.name = name
        self._grid_cache: dict[int, np.ndarray] = {}
        self._validate_and_build()

    # -- construction ---------------------------------------------------

    def _speed(self, t):
        t = np.asarray(t, dtype=float)
        ph = np.asarray(self._phi_t(t), dtype=float)
        dth = np.asarray(self._dtheta_t(t), dtype=float)
        dph = np.asarray(self._dphi_t(t), dtype=float)
        return np.sqrt(np.cosh(ph) ** 2 * dth ** 2 - dph ** 2)

    def _validate_and_build(self):
        n = 2 * self.n_samples
        for offset in (0.0, 0.37):
            t = (np.arange(n) + offset) * (self.period / n)
            ph = np.asarray(self._phi_t(t), dtype=float)
            dth = np.asarray(self._dtheta_t(t), dtype=float)
            dph = np.asarray(self._dphi_t(t), dtype=float)
            w_sq = np.cosh(ph) ** 2 * dth ** 2 - dph ** 2
            worst = int(np.argmin(w_sq))
            if w_sq[worst] <= 0.0:
                raise NotSpacelike(
                    f"speed^2 = {w_sq[worst]:.3e} <= 0 at t = {t[worst]:.6f}",
                    t=float(t[worst]))
            if np.any(dth <= 0.0):
                bad = int(np.argmin(dth))
                raise BadParameter(
                    f"longitude must increase (theta' = {dth[bad]:.3e} at "
                    f"t = {t[bad]:.6f}); reverse the curve orientation")
        self._map = ArcLengthMap(self._speed, self.period, self.n_samples)
        self.length = self._map.total
        th0 = float(np.asarray(self._theta_t(np.array([0.0])), dtype=float)[0])
        th1 = float(np.asarray(self._theta_t(np.array([self.period])), dtype=float)[0])
        turns = (th1 - th0) / (2.0 * np.pi)
        self.index = int(np.round(turns))
        if abs(turns - self.index) > 1e-6:
            raise NonIntegerWinding(f"longitude advanced {turns:+.8f} turns")
        if self.index < 1:
            raise BadParameter(f"index must be a positive integer, got {self.index}")
        # cached grid data for radius bounds and batch work
        tg = self._map.t_grid[:-1]
        ph = np.asarray(self._phi_t(tg), dtype=float)
        dth = np.asarray(self._dtheta_t(tg), dtype=float)
        w = self._speed(tg)
        self.cosh_phi_max = float(np.max(np.cosh(ph)))
        self.phi_abs_max = float(np.max(np.abs(ph)))
        self.cosh2_theta_prime_max = float(np.max(np.cosh(ph) ** 2 * dth / w))
        resid = (np.cosh(ph) ** 2 * dth ** 2 -
                 np.asarray(self._dphi_t(tg), dtype=float) ** 2) / w ** 2 - 1.0
        self.unit_speed_residual = float(np.max(np.abs(resid)))

    # -- evaluation by arc length ---------------------------------------

    def param_of_arc(self, s):
        return self._map.t_of_s(s)

    def arc_of_param(self, t):
        return self._map.s_of_t(t)

    def theta(self, s):
        s_arr, scalar = _as_1d(s)
        out = np.asarray(self._theta_t(self._map.t_of_s(s_arr)), dtype=float)
        return float(out[0]) if scalar else out

    def phi(self, s):
        s_arr, scalar = _as_1d(s)
        out = np.asarray(self._phi_t(self._map.t_of_s(s_arr)), dtype=float)
        return float(out[0]) if scalar else out

    def theta_prime(self, s):
        s_arr, scalar = _as_1d(s)
        t = self._map.t_of_s(s_arr)
        out = np.asarray(self._dtheta_t(t), dtype=float) / self._speed(t)
        return float(out[0]) if scalar else out

    def phi_prime(self, s):
        s_arr, scalar = _as_1d(s)
        t = self._map.t_of_s(s_arr)
        out = np.asarray(self._dphi_t(t), dtype=float) / self._speed(t)
        return float(out[0]) if scalar else out

    def tau(self, s):
        """Slope function: cosh tau = cosh(phi) theta', sinh tau = phi'."""
        return np.arcsinh(self.phi_prime(s))

    def point(self, s):
        s_arr, scalar = _as_1d(s)
        t = self._map.t_of_s(s_arr)
        out = self._point_t(t)
        return out[0] if scalar else out

    def frame(self, s):
        s_arr, scalar = _as_1d(s)
        t = self._map.t_of_s(s_arr)
        ph = np.asarray(self._phi_t(t), dtype=float)
        th = np.asarray(self._theta_t(t), dtype=float)
        e1, e2, e3 = _frame_arrays(ph, th)
        if scalar:
            return e1[0], e2[0], e3[0]
        return e1, e2, e3

    # -- evaluation in the build parameter ------------------------------

    def _point_t(self, t):
        t = np.asarray(t, dtype=float)
        ph = np.asarray(self._phi_t(t), dtype=float)
        th = np.asarray(self._theta_t(t), dtype=float)
        return latlong_point(ph, th)

    def _velocity_t(self, t):
        """d e1 / dt via the structure equations (not unit speed)."""
        t = np.asarray(t, dtype=float)
        ph = np.asarray(self._phi_t(t), dtype=float)
        th = np.asarray(self._theta_t(t), dtype=float)
        dth = np.asarray(self._dtheta_t(t), dtype=float)
        dph = np.asarray(self._dphi_t(t), dtype=float)
        _, e2, e3 = _frame_arrays(ph, th)
        return (np.cosh(ph) * dth)[..., None] * e2 + dph[..., None] * e3

    def point_grid(self, n: int) -> np.ndarray:
        """Cached embedded points at n uniform build-parameter values."""
        if n not in self._grid_cache:
            t = np.linspace(0.0, self.period, n, endpoint=False)
            self._grid_cache[n] = self._point_t(t)
        return self._grid_cache[n]

    def transform(self, m) -> "SphericalCurve":
        m = np.asarray(m, dtype=float)
        return SphericalCurve.from_embedding(
            lambda t: self._point_t(t) @ m.T,
            lambda t: self._velocity_t(t) @ m.T,
            self.period, n_samples=self.n_samples, name=self.name + ":xf")

    @classmethod
    def from_embedding(cls, point_fn, dpoint_fn, period, n_samples: int = 4096,
                       name: str = "") -> "SphericalCurve":
        """Build from an embedded curve on S^2_1 and its parameter derivative."""
        period = float(period)
        probe = np.linspace(0.0, period, 64, endpoint=False)
        p = np.asarray(point_fn(probe), dtype=float)
        if np.max(np.abs(minkowski_inner(p, p) - 1.0)) > ON_SPHERE_TOL:
            raise NotOnDeSitter("embedded curve leaves S^2_1")

        def theta_raw(t):
            q = np.asarray(point_fn(np.asarray(t, dtype=float)), dtype=float)
            return np.arctan2(q[..., 1], q[..., 0])

        lift = UnwrappedAngle(theta_raw, period, n_cells=2 * n_samples)

        def phi(t):
            q = np.asarray(point_fn(np.asarray(t, dtype=float)), dtype=float)
            return np.arcsinh(q[..., 2])

        def dtheta(t):
            q = np.asarray(point_fn(np.asarray(t, dtype=float)), dtype=float)
            dq = np.asarray(dpoint_fn(np.asarray(t, dtype=float)), dtype=float)
            return ((q[..., 0] * dq[..., 1] - q[..., 1] * dq[..., 0])
                    / (q[..., 0] ** 2 + q[..., 1] ** 2))

        def dphi(t):
            q = np.asarray(point_fn(np.asarray(t, dtype=float)), dtype=float)
            dq = np.asarray(dpoint_fn(np.asarray(t, dtype=float)), dtype=float)
            return dq[..., 2] / np.sqrt(1.0 + q[..., 2] ** 2)

        return cls(lift, phi, dtheta, dphi, period, n_samples=n_samples, name=name)


def tangent_indicatrix(curve, n_samples: int = 4096) -> SphericalCurve:
    """Unit tangent image of a closed spacelike curve, as a SphericalCurve.

    Its arc length element is k ds, so its total length equals the total
    curvature of the curve and its index equals the winding index.
    """
    base = curve.base if hasattr(curve, "base") else curve
    return SphericalCurve.from_embedding(
        base.unit_tangent, base.unit_tangent_deriv, base.period,
        n_samples=n_samples, name=(base.name + ":indicatrix") if base.name else "indicatrix")


@dataclasses.dataclass(frozen=True)
class AdaptedFrame:
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    tau: np.ndarray | float


def adapted_frame(g: SphericalCurve, s) -> AdaptedFrame:
    """Frame sample(s) along the curve, with the slope function tau."""
    e1, e2, e3 = g.frame(s)
    return AdaptedFrame(e1=e1, e2=e2, e3=e3, tau=g.tau(s))


@dataclasses.dataclass(frozen=True)
class PolarGeodesic:
    """Closed spacelike geodesic S^2_1 cut out by the plane orthogonal to a pole."""
    pole: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def point(self, u):
        u = np.asarray(u, dtype=float)
        return (np.cos(u)[..., None] * self.basis_a
                + np.sin(u)[..., None] * self.basis_b)


def geodesic_from_pole(pole) -> PolarGeodesic:
    """Oriented geodesic with the given future-directed unit timelike pole.

    The spacelike basis starts from the projection of (1, 0, 0) onto the
    pole's orthogonal plane and is completed so that (c, c', pole) is
    positively oriented.
    """
    y = np.asarray(pole, dtype=float)
    if y.shape != (3,):
        raise NotInH2("pole must be a single vector of shape (3,)")
    if abs(minkowski_inner(y, y) + 1.0) > 1e-8 or y[2] <= 0.0:
        raise NotInH2("pole must satisfy <Y, Y> = -1 with y3 > 0")
    u = np.array([1.0, 0.0, 0.0]) + y[0] * y
    e_a = u / np.sqrt(minkowski_inner(u, u))
    c = lorentz_cross(y, e_a)
    e_b = c / np.sqrt(minkowski_inner(c, c))
    if np.linalg.det(np.stack([e_a, e_b, y])) < 0.0:
        e_b = -e_b
    return PolarGeodesic(pole=y, basis_a=e_a, basis_b=e_b)


@dataclasses.dataclass(frozen=True)
class IntersectionResult:
    count: int
    locations: np.ndarray
    degenerate: bool
    min_margin: float


def _grid_signature(g_vals, tol_abs):
    """Sign-change count plus a tangency flag for one sampled period."""
    signs = g_vals > 0.0
    flips = signs != np.roll(signs, -1)
    count = int(np.sum(flips))
    prev = np.roll(g_vals, 1)
    nxt = np.roll(g_vals, -1)
    extremum = (g_vals - prev) * (nxt - g_vals) < 0.0
    tangent = bool(np.any(extremum & (np.abs(g_vals) < tol_abs)))
    return count, tangent, flips


def intersection_count(g: SphericalCurve, pole, n_scan: int = 4096,
                       tol: float = 1e-9, max_doublings: int = 4) -> IntersectionResult:
    """Zeros of s -> <e1(s), Y> over one period.

    The scan density is doubled until the count stabilizes across two
    successive densities; brackets are refined by bisection. The result is
    flagged degenerate when the curve lies in Y^perp, when a local extremum
    touches zero (tangency), or when the count never stabilizes.
    """
    y = np.asarray(pole, dtype=float)
    if y.shape != (3,):
        raise ZeroVector("pole must be a single vector of shape (3,)")
    if float(np.dot(y, y)) == 0.0:
        raise ZeroVector("pole must be nonzero")

    n = int(n_scan)
    prev_count = None
    for _ in range(max_doublings + 1):
        pts = g.point_grid(n)
        g_vals = pts @ y
        scale = max(1.0, float(np.max(np.abs(g_vals))))
        tol_abs = tol * scale
        if float(np.max(np.abs(g_vals))) < tol * max(1.0, float(np.linalg.norm(y))):
            return IntersectionResult(0, np.empty(0), True, 0.0)
        count, tangent, flips = _grid_signature(g_vals, tol_abs)
        if tangent:
            return IntersectionResult(count, np.empty(0), True, 0.0)
        if prev_count == count:
            break
        prev_count = count
        n *= 2
    else:
        return IntersectionResult(prev_count, np.empty(0), True, 0.0)

    # refine the brackets in the build parameter
    h = g.period / n
    i = np.flatnonzero(flips)
    lo = i * h
    hi = lo + h
    f_lo = g_vals[i]
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        f_mid = g._point_t(mid) @ y
        left = (f_lo > 0.0) != (f_mid > 0.0)
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
        f_lo = np.where(left, f_lo, f_mid)
    roots_t = 0.5 * (lo + hi)
    speed = g._speed(roots_t)
    margins = np.abs((g._velocity_t(roots_t) @ y) / speed)
    locations = np.sort(np.asarray(g.arc_of_param(roots_t), dtype=float))
    return IntersectionResult(count, locations, False,
                              float(np.min(margins)) if count else np.inf)


def _row_stats_reference(gv, tol):
    """Sign-flip count, tangency flag and max |g| for each row of one period.

    Reference numpy implementation; the numba kernel below must agree with
    it exactly. Rows hold the samples of one pole (no repeated endpoint).
    """
    signs = gv > 0.0
    counts = np.count_nonzero(signs[:, 1:] != signs[:, :-1], axis=1)
    counts = counts + (signs[:, 0] != signs[:, -1])
    d = np.diff(gv, axis=1)
    absg = np.abs(gv)
    scale = absg.max(axis=1)
    ext = (d[:, :-1] * d[:, 1:]) < 0.0
    depth = np.where(ext, absg[:, 1:-1], np.inf).min(axis=1)
    d_wrap = gv[:, 0] - gv[:, -1]
    depth = np.minimum(depth, np.where(d_wrap * d[:, 0] < 0.0, absg[:, 0], np.inf))
    depth = np.minimum(depth, np.where(d[:, -1] * d_wrap < 0.0, absg[:, -1], np.inf))
    tangent = depth < tol * np.maximum(1.0, scale)
    return counts.astype(np.int64), tangent, scale.astype(float)


def _dual_row_stats_numpy(gv, tol):
    cf, tf, mf = _row_stats_reference(gv, tol)
    cc, tc, _ = _row_stats_reference(np.ascontiguousarray(gv[:, ::2]), tol)
    return cc, cf, (tc | tf), mf


try:
    from numba import njit, prange

    @njit(cache=True, parallel=True)
    def _dual_row_stats_kernel(gv, tol):  # pragma: no cover - spot checked vs reference
        m, n = gv.shape
        half = n // 2
        counts_coarse = np.zeros(m, dtype=np.int64)
        counts_fine = np.zeros(m, dtype=np.int64)
        tangent = np.zeros(m, dtype=np.bool_)
        maxabs = np.zeros(m, dtype=np.float64)
        for j in prange(m):
            row = gv[j]
            # fine-scan running state, seeded from the wrap-around samples
            gp = row[n - 1]
            d_prev = gp - row[n - 2]
            s_prev = gp > 0.0
            # coarse scan walks the even samples only
            gp_c = row[n - 2]
            d_prev_c = gp_c - row[n - 4]
            s_prev_c = gp_c > 0.0
            cnt = 0
            cnt_c = 0
            mx = 0.0
            depth = np.inf
            depth_c = np.inf
            for i in range(n):
                gi = row[i]
                a = abs(gi)
                if a > mx:
                    mx = a
                d = gi - gp
                si = gi > 0.0
                if si != s_prev:
                    cnt += 1
                if d_prev * d < 0.0:
                    ap = abs(gp)
                    if ap < depth:
                        depth = ap
                gp = gi
                d_prev = d
                s_prev = si
                if i % 2 == 0:
                    dc = gi - gp_c
                    if si != s_prev_c:
                        cnt_c += 1
                    if d_prev_c * dc < 0.0:
                        ap = abs(gp_c)
                        if ap < depth_c:
                            depth_c = ap
                    gp_c = gi
                    d_prev_c = dc
                    s_prev_c = si
            counts_fine[j] = cnt
            counts_coarse[j] = cnt_c
            maxabs[j] = mx
            floor = mx if mx > 1.0 else 1.0
            tangent[j] = (depth < tol * floor) or (depth_c < tol * floor)
        return counts_coarse, counts_fine, tangent, maxabs

    def _dual_row_stats(gv, tol):
        return _dual_row_stats_kernel(gv, float(tol))

except ImportError:  # pragma: no cover
    _dual_row_stats = _dual_row_stats_numpy


def intersection_counts_batch(g: SphericalCurve, poles, n_scan: int = 4096,
                              tol: float = 1e-9, block: int = 2048,
                              threads: int = 1):
    """Counts for many poles at once.

    Each pole is scanned at densities n_scan and 2 n_scan in one fused pass
    over a float32 sample matrix (one row per pole); density mismatches fall
    back to the adaptive float64 scalar path, tangencies and all-zero rows
    are flagged degenerate. Blocks are independent and land in disjoint
    output slices, so with threads > 1 they run on a thread pool with
    identical results for any worker count. Returns (counts, degenerate_mask).
    """
    poles = np.asarray(poles, dtype=float)
    m = len(poles)
    counts = np.zeros(m, dtype=int)
    degenerate = np.zeros(m, dtype=bool)
    grid_t = np.ascontiguousarray(g.point_grid(2 * n_scan).T.astype(np.float32))
    y_norm = np.maximum(1.0, np.linalg.norm(poles, axis=1))
    # float32 resolves |g| only to ~1e-7 of its scale, so the tangency band
    # is widened accordingly; flagged poles are redrawn, never miscounted
    tol_scan = max(float(tol), 2e-6)

    def run_block(start):
        sl = slice(start, min(start + block, m))
        p32 = poles[sl].astype(np.float32)
        gv = p32 @ grid_t
        cc, cf, tang, mx = _dual_row_stats(gv, tol_scan)
        zero = mx < tol_scan * y_norm[sl]
        deg = tang | zero
        unstable = (cc != cf) & ~deg
        counts[sl] = cf
        degenerate[sl] = deg
        if np.any(unstable):
            for j in np.flatnonzero(unstable):
                res = intersection_count(g, poles[sl][j], n_scan=2 * n_scan, tol=tol)
                counts[sl][j] = res.count
                degenerate[sl][j] = res.degenerate

    starts = range(0, m, block)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_block, starts))
    else:
        for start in starts:
            run_block(start)
    return counts, degenerate


def lemma_threshold(g: SphericalCurve, margin: float = 0.9, cap: float = 1e6) -> float:
    """Slope bound a* > 1 below which every timelike pole meets the curve 2I times.

    A pole written as (cos b, sin b, a) up to scale is timelike for a > 1.
    Monotonicity of theta(s) - arcsin(a tanh phi(s)) on each longitude
    half-turn holds while a^2 < cosh(phi)^2 / (sinh(phi)^2 + tanh(tau)^2)
    uniformly in s, which also keeps |a tanh phi| < 1. The grid minimum is
    shrunk toward 1 by the safety margin.
    """
    tg = g._map.t_grid[:-1]
    ph = np.asarray(g._phi_t(tg), dtype=float)
    dth = np.asarray(g._dtheta_t(tg), dtype=float)
    dph = np.asarray(g._dphi_t(tg), dtype=float)
    tanh_tau = dph / (np.cosh(ph) * dth)
    denom = np.sqrt(np.sinh(ph) ** 2 + tanh_tau ** 2)
    with np.errstate(divide="ignore"):
        vals = np.where(denom > 0.0, np.cosh(ph) / denom, np.inf)
    a_star = float(np.min(vals))
    if a_star > cap:
        return cap
    return 1.0 + margin * (a_star - 1.0)
