"""Shared quadrature and reparametrization machinery.

Everything here is deliberately simple: composite Gauss-Legendre rules on
uniform subdivisions (so that breakpoints of piecewise families, placed at
rational fractions of the period, land on panel edges), plus an invertible
arc-length map built from a cumulative table and refined by Newton steps.
"""
from __future__ import annotations

import numpy as np
from scipy.interpolate import PchipInterpolator

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gl_nodes(order: int):
    """Gauss-Legendre nodes and weights on [-1, 1], cached."""
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def segment_integrals(f, edges, order: int = 8):
    """Integral of a vectorized scalar f over each panel [edges[i], edges[i+1]]."""
    x, w = gl_nodes(order)
    edges = np.asarray(edges, dtype=float)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(f(pts), dtype=float).reshape(len(mid), order)
    return half * (vals @ w)


def composite_gl(f, a, b, n_panels: int, order: int = 8) -> float:
    edges = np.linspace(a, b, n_panels + 1)
    return float(np.sum(segment_integrals(f, edges, order)))


def adaptive_composite_gl(f, a, b, rel_tol=1e-10, abs_tol=1e-13,
                          n0: int = 64, max_doublings: int = 8, order: int = 8) -> float:
    """Double the panel count until two successive composite values agree."""
    prev = composite_gl(f, a, b, n0, order)
    n = n0
    for _ in range(max_doublings):
        n *= 2
        cur = composite_gl(f, a, b, n, order)
        if abs(cur - prev) <= max(abs_tol, rel_tol * abs(cur)):
            return cur
        prev = cur
    return prev


def _as_1d(x):
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    return arr, (np.ndim(x) == 0)


class ArcLengthMap:
    """Invertible map between a periodic parameter t and arc length s.

    Built from a positive speed function on one period. The forward map
    integrates the speed with per-panel Gauss-Legendre; the inverse combines
    monotone cubic interpolation of the cumulative table with Newton
    refinement, so t(s) is accurate to near machine precision.
    """

    def __init__(self, speed, period, n_samples: int = 4096, order: int = 8,
                 newton_iters: int = 2):
        self.speed = speed
        self.period = float(period)
        self.n_samples = int(n_samples)
        self.order = order
        self.newton_iters = newton_iters
        self.t_grid = np.linspace(0.0, self.period, self.n_samples + 1)
        seg = segment_integrals(speed, self.t_grid, order)
        self.s_grid = np.concatenate([[0.0], np.cumsum(seg)])
        self.total = float(self.s_grid[-1])
        self._inverse = PchipInterpolator(self.s_grid, self.t_grid)

    def _partial_arc(self, t):
        """Arc length from the period start up to t (t inside [0, period])."""
        idx = np.clip(np.searchsorted(self.t_grid, t, side="right") - 1,
                      0, self.n_samples - 1)
        a = self.t_grid[idx]
        x, w = gl_nodes(self.order)
        mid = 0.5 * (a + t)
        half = 0.5 * (t - a)
        pts = mid[:, None] + half[:, None] * x[None, :]
        vals = np.asarray(self.speed(pts.ravel()), dtype=float).reshape(pts.shape)
        return self.s_grid[idx] + half * (vals @ w)

    def s_of_t(self, t):
        t_arr, scalar = _as_1d(t)
        wraps = np.floor_divide(t_arr, self.period)
        tw = t_arr - wraps * self.period
        out = self._partial_arc(tw) + wraps * self.total
        return float(out[0]) if scalar else out

    def t_of_s(self, s):
        s_arr, scalar = _as_1d(s)
        sw = np.mod(s_arr, self.total)
        t = np.asarray(self._inverse(sw), dtype=float)
        for _ in range(self.newton_iters):
            t = np.clip(t, 0.0, self.period)
            resid = self._partial_arc(t) - sw
            t = t - resid / np.asarray(self.speed(t), dtype=float)
        t = np.clip(t, 0.0, self.period)
        return float(t[0]) if scalar else t


class UnwrappedAngle:
    """Continuous lift of a periodic principal-value angle function.

    Offsets (multiples of 2*pi) are fixed from a dense grid; evaluation picks
    the offset that keeps the lift closest to the piecewise-linear reference
    through the grid values. Valid while the angle moves much less than pi
    across one grid cell.
    """

    def __init__(self, raw_fn, period, n_cells: int = 8192):
        self.raw = raw_fn
        self.period = float(period)
        self.grid = np.linspace(0.0, self.period, n_cells + 1)
        self.lift_nodes = np.unwrap(np.asarray(raw_fn(self.grid), dtype=float))
        self.winding = self.lift_nodes[-1] - self.lift_nodes[0]

    def __call__(self, t):
        t_arr, scalar = _as_1d(t)
        wraps = np.floor_divide(t_arr, self.period)
        tw = t_arr - wraps * self.period
        raw = np.asarray(self.raw(tw), dtype=float)
        ref = np.interp(tw, self.grid, self.lift_nodes)
        k = np.round((ref - raw) / (2.0 * np.pi))
        out = raw + 2.0 * np.pi * k + wraps * self.winding
        return float(out[0]) if scalar else out
